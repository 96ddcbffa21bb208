#include "bintegral/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "bintegral/quad_oracle.hpp"
#include "bintegral/series_engine.hpp"
#include "bintegral/transform.hpp"

namespace bintegral::cli {

using nlohmann::json;

// ----------------------------------------------------------------------------
// CSV
// ----------------------------------------------------------------------------

namespace {

void render_row(std::string& out, const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i > 0) out += ',';
    out += fields[i];
  }
  out += '\n';
}

std::vector<std::string> split_fields(std::string_view line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    fields.emplace_back(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return fields;
}

}  // namespace

std::string render_csv(const CsvTable& table) {
  std::string out;
  render_row(out, table.header);
  for (const auto& row : table.rows) render_row(out, row);
  return out;
}

CsvTable parse_csv(std::string_view text) {
  CsvTable table;
  bool first = true;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    const std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (first) {
      table.header = split_fields(line);
      first = false;
    } else {
      table.rows.push_back(split_fields(line));
    }
  }
  return table;
}

// ----------------------------------------------------------------------------
// Coefficient files
// ----------------------------------------------------------------------------

ResolvedSource load_coefficient_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open coefficient file '" + path.string() + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw std::runtime_error("coefficient file '" + path.string() + "' is not valid JSON: " + e.what());
  }
  if (!doc.is_object()) throw std::invalid_argument("coefficient file must hold a JSON object");

  if (doc.contains("generator")) {
    if (!doc["generator"].is_string()) throw std::invalid_argument("'generator' must be a string");
    GeneratorSpec spec{doc["generator"].get<std::string>(), {}};
    if (doc.contains("params")) {
      if (!doc["params"].is_object()) throw std::invalid_argument("'params' must be an object");
      for (const auto& [key, value] : doc["params"].items()) {
        spec.params[key] = value.is_string() ? value.get<std::string>() : value.dump();
      }
    }
    const auto ids = corpus::ids();
    if (std::find(ids.begin(), ids.end(), spec.generator) != ids.end()) {
      std::optional<long> q;
      if (auto it = spec.params.find("q"); it != spec.params.end()) {
        std::size_t used = 0;
        q = std::stol(it->second, &used);
        if (used != it->second.size()) throw std::invalid_argument("parameter 'q' is not an integer");
      }
      auto entry = corpus::get(spec.generator, q);
      return {entry.source, entry};
    }
    return {make_source(spec), std::nullopt};
  }

  if (!doc.contains("coeffs") || !doc["coeffs"].is_array()) {
    throw std::invalid_argument("coefficient file needs 'coeffs' (array) or 'generator'");
  }
  ExplicitCoefficients list;
  if (doc.contains("name")) {
    if (!doc["name"].is_string()) throw std::invalid_argument("'name' must be a string");
    list.name = doc["name"].get<std::string>();
  }
  for (const auto& pair : doc["coeffs"]) {
    if (!pair.is_array() || pair.size() != 2 || !pair[0].is_string() || !pair[1].is_string()) {
      throw std::invalid_argument("each coefficient must be [\"num\", \"den\"] with decimal-integer strings");
    }
    list.coeffs.push_back(Rational::from_strings(pair[0].get<std::string>(), pair[1].get<std::string>()));
  }
  return {make_source(list), std::nullopt};
}

// ----------------------------------------------------------------------------
// Subcommands
// ----------------------------------------------------------------------------

namespace {

/// Thrown for anything that should exit with kBadInput.
struct BadInput : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SourceFlags {
  std::string example;
  long q = 1;
  std::string coeffs;
  std::string lambda;
  std::string mode = "auto";
  std::size_t terms = 0;
  long precision_bits = 128;
  std::string tail = "auto";
  double stop_rel_tol = 0.0;
};

void add_source_flags(CLI::App* cmd, SourceFlags& f) {
  auto* ex = cmd->add_option("--example", f.example, "Corpus entry (ex1..ex5)");
  cmd->add_option("--q", f.q, "Parameter q for ex4")->check(CLI::PositiveNumber);
  auto* co = cmd->add_option("--coeffs", f.coeffs, "Coefficient JSON file");
  ex->excludes(co);
  co->excludes(ex);
  cmd->add_option("--lambda", f.lambda, "Upper limit: rational, decimal, or inf (default: entry's own, else 1)");
  cmd->add_option("--mode", f.mode, "generic-exact | generic-float | closed-form (default: closed-form at inf when available)");
  cmd->add_option("--terms", f.terms, "Maximum number of series terms (default: 200, or 1000000 at inf)");
  cmd->add_option("--precision-bits", f.precision_bits, "Working precision in bits")->check(CLI::Range(53L, 1L << 20));
  cmd->add_option("--tail", f.tail, "none | p2 (default: p2 at inf, none otherwise)");
  cmd->add_option("--stop-rel-tol", f.stop_rel_tol, "Relative stopping tolerance for finite lambda");
}

Format parse_format(const std::string& s) {
  if (s == "human") return Format::Human;
  if (s == "csv") return Format::Csv;
  if (s == "json") return Format::Json;
  throw BadInput("unknown format '" + s + "'");
}

struct Job {
  ResolvedSource resolved;
  EngineOptions opts;
  /// Reference in series units, when the entry's lambda matches.
  std::optional<BigFloat> reference;
};

Job prepare(const SourceFlags& f) {
  Job job;
  try {
    if (!f.example.empty()) {
      auto entry = corpus::get(f.example, f.q);
      job.resolved = {entry.source, entry};
    } else if (!f.coeffs.empty()) {
      job.resolved = load_coefficient_file(f.coeffs);
    } else {
      throw BadInput("one of --example or --coeffs is required");
    }
    const auto& entry = job.resolved.entry;
    job.opts.lambda = !f.lambda.empty() ? Lambda::parse(f.lambda)
                                        : (entry ? entry->lambda : Lambda::finite(Rational(1)));
    const bool inf = job.opts.lambda.is_infinite();
    const auto& src = job.resolved.source;
    if (f.mode == "auto") {
      job.opts.mode = inf && src.has_closed_form() ? Mode::ClosedForm : Mode::GenericExact;
    } else {
      job.opts.mode = parse_mode(f.mode);
    }
    job.opts.max_terms = f.terms > 0 ? f.terms : (inf ? 1000000 : 200);
    job.opts.precision_bits = f.precision_bits;
    job.opts.tail = f.tail == "auto" ? (inf ? TailCorrection::PSeries : TailCorrection::None) : parse_tail(f.tail);
    job.opts.stop_rel_tol = f.stop_rel_tol;
    if (entry && entry->lambda == job.opts.lambda) {
      job.reference = entry->reference.evaluate(job.opts.precision_bits);
    }
  } catch (const BadInput&) {
    throw;
  } catch (const std::exception& e) {
    throw BadInput(e.what());
  }
  return job;
}

std::string str(const BigFloat& x) { return x.to_string(); }

int cmd_eval(const SourceFlags& f, const std::string& format_name, std::optional<double> assert_tol,
             std::ostream& out) {
  const Format format = parse_format(format_name);
  Job job = prepare(f);
  IntegralResult r;
  try {
    r = integrate(job.resolved.source, job.opts);
  } catch (const std::invalid_argument& e) {
    throw BadInput(e.what());
  } catch (const std::out_of_range& e) {
    throw BadInput(e.what());
  }

  std::optional<BigFloat> abs_err;
  if (job.reference) abs_err = abs(r.value - *job.reference);
  const auto& entry = job.resolved.entry;
  const bool scaled = entry && entry->integral_scale != 1;

  json j;
  j["source"] = job.resolved.source.name;
  j["lambda"] = job.opts.lambda.to_string();
  j["mode"] = to_string(job.opts.mode);
  j["tail"] = to_string(job.opts.tail);
  j["value"] = str(r.value);
  j["terms_used"] = r.terms_used;
  j["error_estimate"] = str(r.error_estimate);
  j["diverged"] = r.diverged;
  j["working_bits"] = r.working_bits;
  if (job.reference) {
    j["reference"] = str(*job.reference);
    j["reference_recipe"] = entry->reference.recipe;
    j["abs_err"] = str(*abs_err);
  }
  if (scaled) {
    j["integral_scale"] = entry->integral_scale;
    j["integral"] = str(entry->to_integral(r.value));
    j["integrand"] = entry->full_integrand_text;
  }

  if (format == Format::Json) {
    out << j.dump(2) << '\n';
  } else if (format == Format::Csv) {
    CsvTable t{{"source", "lambda", "mode", "value", "terms_used", "error_estimate", "diverged", "reference", "abs_err"},
               {{job.resolved.source.name, job.opts.lambda.to_string(), to_string(job.opts.mode), str(r.value),
                 std::to_string(r.terms_used), str(r.error_estimate), r.diverged ? "true" : "false",
                 job.reference ? str(*job.reference) : "", abs_err ? str(*abs_err) : ""}}};
    out << render_csv(t);
  } else {
    auto line = [&out](const std::string& key, const std::string& value) {
      out << std::left << std::setw(16) << key << value << '\n';
    };
    line("source", job.resolved.source.name);
    line("lambda", job.opts.lambda.to_string());
    line("mode", to_string(job.opts.mode) + " (tail " + to_string(job.opts.tail) + ")");
    line("value", str(r.value));
    line("terms_used", std::to_string(r.terms_used));
    line("error_estimate", str(r.error_estimate));
    if (r.diverged) line("diverged", "true (value is the last partial sum)");
    if (job.reference) {
      line("reference", str(*job.reference) + "  [" + entry->reference.recipe + "]");
      line("abs_err", str(*abs_err));
    }
    if (scaled) {
      line("integral", str(entry->to_integral(r.value)) + "  [" + entry->full_integrand_text + ", x" +
                           std::to_string(entry->integral_scale) + "]");
    }
  }

  if (r.diverged) return kNotConverged;
  if (assert_tol) {
    const BigFloat limit = BigFloat::from_double(*assert_tol, r.value.precision());
    const BigFloat& measured = abs_err ? *abs_err : r.error_estimate;
    if (measured > limit) return kCheckFailed;
  }
  return kOk;
}

int cmd_identities(std::size_t max_n, const std::string& format_name, std::ostream& out) {
  const Format format = parse_format(format_name);
  const auto reports = run_identity_suite(max_n);
  const bool all_pass = std::all_of(reports.begin(), reports.end(), [](const auto& r) { return r.pass; });

  if (format == Format::Csv) {
    CsvTable t{{"identity", "n", "lhs", "rhs", "pass"}, {}};
    for (const auto& r : reports) {
      t.rows.push_back({r.id, std::to_string(r.n), r.lhs.to_string(), r.rhs.to_string(), r.pass ? "true" : "false"});
    }
    out << render_csv(t);
  } else if (format == Format::Json) {
    json arr = json::array();
    for (const auto& r : reports) {
      arr.push_back({{"identity", r.id}, {"n", r.n}, {"lhs", r.lhs.to_string()}, {"rhs", r.rhs.to_string()},
                     {"pass", r.pass}});
    }
    out << arr.dump(2) << '\n';
  } else {
    std::vector<std::string> order;
    std::map<std::string, std::pair<std::size_t, std::size_t>> tally;
    for (const auto& r : reports) {
      if (!tally.count(r.id)) order.push_back(r.id);
      auto& [passed, total] = tally[r.id];
      passed += r.pass ? 1 : 0;
      ++total;
    }
    for (const auto& id : order) {
      const auto& [passed, total] = tally[id];
      out << std::left << std::setw(18) << id << passed << "/" << total << (passed == total ? "  ok" : "  FAIL")
          << '\n';
    }
    for (const auto& r : reports) {
      if (!r.pass) out << "  " << r.id << " n=" << r.n << ": " << r.lhs.to_string() << " != " << r.rhs.to_string() << '\n';
    }
    out << (all_pass ? "all identities hold" : "identity failures") << " for n <= " << max_n << '\n';
  }
  return all_pass ? kOk : kCheckFailed;
}

int cmd_table(const SourceFlags& f, std::size_t rows, const std::string& format_name, std::ostream& out) {
  const Format format = parse_format(format_name);
  SourceFlags g = f;
  g.terms = rows;
  Job job = prepare(g);
  std::vector<TableRow> table;
  bool diverged = false;
  try {
    table = convergence_table(job.resolved.source, job.opts, job.reference, &diverged);
  } catch (const std::invalid_argument& e) {
    throw BadInput(e.what());
  } catch (const std::out_of_range& e) {
    throw BadInput(e.what());
  }

  const bool with_err = job.reference.has_value();
  CsvTable t{{"n", "term", "partial_sum"}, {}};
  if (with_err) t.header.push_back("abs_err");
  for (const auto& r : table) {
    std::vector<std::string> row{std::to_string(r.n), str(r.term), str(r.partial_sum)};
    if (with_err) row.push_back(str(*r.abs_err));
    t.rows.push_back(std::move(row));
  }

  if (format == Format::Csv) {
    out << render_csv(t);
  } else if (format == Format::Json) {
    json arr = json::array();
    for (const auto& row : t.rows) {
      json o;
      for (std::size_t i = 0; i < t.header.size(); ++i) o[t.header[i]] = i == 0 ? json(std::stoul(row[i])) : json(row[i]);
      arr.push_back(o);
    }
    out << arr.dump(2) << '\n';
  } else {
    std::vector<std::size_t> width(t.header.size());
    for (std::size_t i = 0; i < t.header.size(); ++i) {
      width[i] = t.header[i].size();
      for (const auto& row : t.rows) width[i] = std::max(width[i], row[i].size());
    }
    auto emit = [&](const std::vector<std::string>& row) {
      for (std::size_t i = 0; i < row.size(); ++i) {
        out << (i ? "  " : "") << std::right << std::setw(static_cast<int>(width[i])) << row[i];
      }
      out << '\n';
    };
    emit(t.header);
    for (const auto& row : t.rows) emit(row);
  }
  return diverged ? kNotConverged : kOk;
}

int cmd_oracle(const SourceFlags& f, double tol, const std::string& format_name, std::ostream& out) {
  const Format format = parse_format(format_name);
  if (!(tol > 0.0)) throw BadInput("--tol must be positive");
  Job job = prepare(f);
  const auto& src = job.resolved.source;
  if (!src.integrand) throw BadInput("source '" + src.name + "' has no registered integrand for the oracle");

  IntegralResult engine;
  try {
    engine = integrate(src, job.opts);
  } catch (const std::invalid_argument& e) {
    throw BadInput(e.what());
  } catch (const std::out_of_range& e) {
    throw BadInput(e.what());
  }
  quad::QuadOptions qopts;
  qopts.bits = std::max<long>(128, job.opts.precision_bits);
  const quad::QuadResult oracle =
      job.opts.lambda.is_infinite()
          ? quad::integrate_halfline(src.integrand, tol, qopts)
          : quad::integrate_finite(src.integrand, BigFloat(qopts.bits), to_bigfloat(job.opts.lambda.value(), qopts.bits),
                                   tol, qopts);

  const BigFloat diff = abs(engine.value - oracle.value);
  const BigFloat allowed = (BigFloat::from_double(tol, qopts.bits) + engine.error_estimate) * 10;

  int code = kOk;
  if (engine.diverged || !oracle.converged) {
    code = kNotConverged;
  } else if (diff > allowed) {
    code = kCheckFailed;
  }

  if (format == Format::Json) {
    json j{{"source", src.name},
           {"lambda", job.opts.lambda.to_string()},
           {"engine", str(engine.value)},
           {"engine_error_estimate", str(engine.error_estimate)},
           {"oracle", str(oracle.value)},
           {"oracle_error_estimate", str(oracle.abs_error_estimate)},
           {"oracle_converged", oracle.converged},
           {"subdivisions", oracle.subdivisions},
           {"difference", str(diff)},
           {"allowed", str(allowed)}};
    out << j.dump(2) << '\n';
  } else if (format == Format::Csv) {
    CsvTable t{{"source", "lambda", "engine", "oracle", "difference", "allowed", "oracle_converged"},
               {{src.name, job.opts.lambda.to_string(), str(engine.value), str(oracle.value), str(diff), str(allowed),
                 oracle.converged ? "true" : "false"}}};
    out << render_csv(t);
  } else {
    auto line = [&out](const std::string& key, const std::string& value) {
      out << std::left << std::setw(16) << key << value << '\n';
    };
    line("source", src.name);
    line("lambda", job.opts.lambda.to_string());
    line("engine", str(engine.value) + "  (+/- " + engine.error_estimate.to_string(6) + ")");
    line("oracle", str(oracle.value) + "  (+/- " + oracle.abs_error_estimate.to_string(6) + ", " +
                       std::to_string(oracle.subdivisions) + " subdivisions" +
                       (oracle.converged ? "" : ", NOT converged") + ")");
    line("difference", diff.to_string(6));
    line("allowed", allowed.to_string(6));
  }
  return code;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Definite integrals from Taylor coefficients via binomial-transform series"};
  app.require_subcommand(1);

  SourceFlags eval_flags;
  std::string eval_format = "human";
  std::optional<double> assert_tol;
  auto* eval = app.add_subcommand("eval", "Evaluate the integral from 0 to lambda");
  add_source_flags(eval, eval_flags);
  eval->add_option("--format", eval_format, "human | csv | json");
  eval->add_option("--assert-tol", assert_tol, "Exit 1 if |value - reference| (or the error estimate) exceeds this");

  std::size_t max_n = 100;
  std::string id_format = "human";
  auto* identities = app.add_subcommand("identities", "Verify the binomial-transform identities exactly");
  identities->add_option("--max-n", max_n, "Largest n to check");
  identities->add_option("--format", id_format, "human | csv | json");

  SourceFlags table_flags;
  std::size_t rows = 10;
  std::string table_format = "human";
  auto* table = app.add_subcommand("table", "Per-term convergence table");
  add_source_flags(table, table_flags);
  table->add_option("--rows", rows, "Number of terms")->check(CLI::PositiveNumber);
  table->add_option("--format", table_format, "human | csv | json");

  SourceFlags oracle_flags;
  double tol = 1e-10;
  std::string oracle_format = "human";
  auto* oracle = app.add_subcommand("oracle", "Compare the series value with adaptive quadrature");
  add_source_flags(oracle, oracle_flags);
  oracle->add_option("--tol", tol, "Quadrature tolerance");
  oracle->add_option("--format", oracle_format, "human | csv | json");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kBadInput;
  }

  try {
    if (*eval) return cmd_eval(eval_flags, eval_format, assert_tol, out);
    if (*identities) return cmd_identities(max_n, id_format, out);
    if (*table) return cmd_table(table_flags, rows, table_format, out);
    if (*oracle) return cmd_oracle(oracle_flags, tol, oracle_format, out);
  } catch (const BadInput& e) {
    err << "error: " << e.what() << '\n';
    return kBadInput;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kBadInput;
  }
  return kBadInput;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv;
  argv.push_back("bintegral");
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace bintegral::cli
