#include "bintegral/quad_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace bintegral::quad {

namespace {

constexpr int kOrder = 10;

struct Rule {
  std::vector<BigFloat> nodes;    // on (-1, 1)
  std::vector<BigFloat> weights;
};

/// Gauss-Legendre nodes by Newton iteration on P_m at bits + 32.
Rule compute_rule(long bits) {
  const long wp = bits + 32;
  Rule rule;
  const BigFloat one = BigFloat::from_long(1, wp);
  for (int i = 1; i <= kOrder; ++i) {
    BigFloat x = BigFloat::from_double(std::cos(std::numbers::pi * (i - 0.25) / (kOrder + 0.5)), wp);
    BigFloat dp(wp);
    for (int iter = 0; iter < 200; ++iter) {
      // P_m(x) and P_m'(x) by the three-term recurrence.
      BigFloat p0 = one;
      BigFloat p1 = x;
      for (int k = 2; k <= kOrder; ++k) {
        BigFloat p2 = (x * p1 * (2 * k - 1) - p0 * (k - 1)) / k;
        p0 = std::move(p1);
        p1 = std::move(p2);
      }
      dp = (x * p1 - p0) * kOrder / (x * x - one);
      BigFloat dx = p1 / dp;
      x -= dx;
      if (dx.is_zero() || dx.exponent() < x.exponent() - wp + 4) break;
    }
    BigFloat w = one * 2 / ((one - x * x) * dp * dp);
    rule.nodes.push_back(x.rounded(bits));
    rule.weights.push_back(w.rounded(bits));
  }
  return rule;
}

const Rule& rule_for(long bits) {
  static std::mutex mutex;
  static std::map<long, Rule> rules;
  std::lock_guard lock(mutex);
  auto it = rules.find(bits);
  if (it == rules.end()) it = rules.emplace(bits, compute_rule(bits)).first;
  return it->second;
}

BigFloat apply_rule(const RealFunction& g, const BigFloat& a, const BigFloat& b, const Rule& rule, long bits) {
  const BigFloat half_width = (b - a) / 2;
  const BigFloat center = (a + b) / 2;
  BigFloat sum(bits);
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    sum += rule.weights[i] * g(center + half_width * rule.nodes[i]);
  }
  return sum * half_width;
}

struct Panel {
  BigFloat a;
  BigFloat b;
  BigFloat left;   // rule on (a, mid)
  BigFloat right;  // rule on (mid, b)
  BigFloat fine;   // left + right
  BigFloat err;    // |rule on (a, b) - fine|
};

Panel make_panel(const RealFunction& g, BigFloat a, BigFloat b, const BigFloat& coarse, const Rule& rule, long bits) {
  const BigFloat mid = (a + b) / 2;
  Panel p{std::move(a), std::move(b), BigFloat(bits), BigFloat(bits), BigFloat(bits), BigFloat(bits)};
  p.left = apply_rule(g, p.a, mid, rule, bits);
  p.right = apply_rule(g, mid, p.b, rule, bits);
  p.fine = p.left + p.right;
  p.err = abs(coarse - p.fine);
  return p;
}

}  // namespace

double tolerance_floor(long bits) { return std::ldexp(1.0, static_cast<int>(88 - bits)); }

QuadResult integrate_finite(const RealFunction& g, const BigFloat& a, const BigFloat& b, double tol,
                            const QuadOptions& opts) {
  if (!(a < b)) throw std::invalid_argument("integrate_finite: need a < b");
  if (!(tol > 0.0)) throw std::invalid_argument("integrate_finite: tolerance must be positive");
  const long bits = opts.bits;
  const Rule& rule = rule_for(bits);
  const double floor = tolerance_floor(bits);
  const BigFloat target = BigFloat::from_double(std::max(tol, floor), bits);

  const auto by_err = [](const Panel& x, const Panel& y) { return x.err < y.err; };
  std::vector<Panel> heap;
  const BigFloat a0 = a.rounded(bits);
  const BigFloat b0 = b.rounded(bits);
  heap.push_back(make_panel(g, a0, b0, apply_rule(g, a0, b0, rule, bits), rule, bits));
  BigFloat total_err = heap.front().err;
  std::size_t subdivisions = 0;

  while (total_err > target && subdivisions < opts.max_subdivisions) {
    std::pop_heap(heap.begin(), heap.end(), by_err);
    Panel worst = std::move(heap.back());
    heap.pop_back();
    const BigFloat mid = (worst.a + worst.b) / 2;
    Panel lower = make_panel(g, worst.a, mid, worst.left, rule, bits);
    Panel upper = make_panel(g, mid, worst.b, worst.right, rule, bits);
    total_err -= worst.err;
    total_err += lower.err;
    total_err += upper.err;
    heap.push_back(std::move(lower));
    std::push_heap(heap.begin(), heap.end(), by_err);
    heap.push_back(std::move(upper));
    std::push_heap(heap.begin(), heap.end(), by_err);
    ++subdivisions;
    if (total_err <= target) {
      // Confirm with a fresh sum; the running total can drift.
      total_err = BigFloat(bits);
      for (const auto& p : heap) total_err += p.err;
    }
  }

  std::sort(heap.begin(), heap.end(), [](const Panel& x, const Panel& y) { return x.a < y.a; });
  QuadResult out{BigFloat(bits), BigFloat(bits), subdivisions, false};
  for (const auto& p : heap) {
    out.value += p.fine;
    out.abs_error_estimate += p.err;
  }
  out.converged = out.abs_error_estimate <= BigFloat::from_double(tol, bits) && tol >= floor;
  return out;
}

QuadResult integrate_halfline(const RealFunction& g, double tol, const QuadOptions& opts) {
  const RealFunction mapped = [&g](const BigFloat& t) {
    const BigFloat one = BigFloat::from_long(1, t.precision());
    const BigFloat gap = one - t;
    return g(t / gap) / (gap * gap);
  };
  return integrate_finite(mapped, BigFloat(opts.bits), BigFloat::from_long(1, opts.bits), tol, opts);
}

}  // namespace bintegral::quad
