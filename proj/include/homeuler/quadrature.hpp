#pragma once

#include <cmath>
#include <limits>
#include <utility>
#include <vector>

#include "homeuler/errors.hpp"

namespace homeuler::quad {

/// Nodes and weights on [-1, 1].
struct Rule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// n-point Gauss-Legendre rule (Newton iteration on P_n).
Rule gauss_legendre(int n);

/// Shared 20-point rule used by the adaptive integrator.
const Rule& default_rule();

template <class F>
double apply(const Rule& rule, F& f, double a, double b) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double sum = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) sum += rule.weights[i] * f(mid + half * rule.nodes[i]);
  return half * sum;
}

struct Result {
  double value = 0.0;
  double error = 0.0;
  int intervals = 0;
};

/// Globally adaptive bisection: an interval is accepted once the rule on the
/// whole interval and on its two halves agree to its share of `tol`.
template <class F>
Result integrate(F&& f, double a, double b, double tol, int max_intervals = 20000) {
  const Rule& rule = default_rule();
  const double length = b - a;
  Result res;
  if (length == 0.0) return res;
  struct Piece { double a, b, whole; };
  std::vector<Piece> stack{{a, b, apply(rule, f, a, b)}};
  int evaluated = 1;
  while (!stack.empty()) {
    const Piece p = stack.back();
    stack.pop_back();
    const double m = 0.5 * (p.a + p.b);
    const double left = apply(rule, f, p.a, m);
    const double right = apply(rule, f, m, p.b);
    const double halves = left + right;
    const double diff = std::abs(halves - p.whole);
    const double share = tol * (p.b - p.a) / length;
    const double floor = 64.0 * std::numeric_limits<double>::epsilon() * std::abs(halves);
    if (!std::isfinite(halves)) throw ToleranceNotMet("quadrature: non-finite integrand");
    if (diff <= std::max(share, floor) || (p.b - p.a) <= 1e-13 * std::abs(length)) {
      res.value += halves;
      res.error += diff;
      ++res.intervals;
      continue;
    }
    evaluated += 2;
    if (evaluated > max_intervals) throw ToleranceNotMet("quadrature: subdivision budget exhausted");
    stack.push_back({m, p.b, right});
    stack.push_back({p.a, m, left});
  }
  return res;
}

}  // namespace homeuler::quad
