#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bintegral/corpus.hpp"
#include "bintegral/sequences.hpp"

namespace bintegral::cli {

enum ExitCode : int {
  kOk = 0,
  kCheckFailed = 1,  // --assert-tol violated, identity failure, oracle mismatch
  kNotConverged = 2,  // series divergence or oracle non-convergence
  kBadInput = 3,
};

enum class Format { Human, Csv, Json };

/// Runs one subcommand (eval, identities, table, oracle). argv[0] is the
/// program name. Never throws; errors map to exit codes.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// A source plus the corpus entry it came from, if any.
struct ResolvedSource {
  CoefficientSource source;
  std::optional<corpus::CorpusEntry> entry;
};

/// Reads a coefficient file:
///   {"name": "...", "coeffs": [["num", "den"], ...]}
/// or
///   {"generator": "ex1"|...|"ex5"|"geometric", "params": {...}}
/// Throws std::runtime_error (I/O, JSON) or std::invalid_argument (content).
ResolvedSource load_coefficient_file(const std::filesystem::path& path);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

/// Comma separated, '\n' line endings, header row first. Fields never
/// contain commas or newlines.
std::string render_csv(const CsvTable& table);
CsvTable parse_csv(std::string_view text);

}  // namespace bintegral::cli
