// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.
// Reference values are computed here independently of the library where a
// closed form exists.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include <boost/math/tools/roots.hpp>

#include "homeuler/classify.hpp"
#include "homeuler/dynamics.hpp"
#include "homeuler/field.hpp"
#include "homeuler/period.hpp"
#include "homeuler/profile.hpp"

using namespace homeuler;

namespace {

constexpr double pi = std::numbers::pi;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

std::string fmt(const char* f, double a, double b) {
  char buf[160];
  std::snprintf(buf, sizeof buf, f, a, b);
  return buf;
}

double spread(const std::vector<double>& v) {
  const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
  return *hi - *lo;
}

double mean(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

// Integers strictly inside (2, sqrt(2 lambda)).
std::vector<int> interior_integers(double lambda) {
  std::vector<int> out;
  for (int n = 3; n < 100 && n < std::sqrt(2.0 * lambda); ++n) out.push_back(n);
  return out;
}

Outcome isochrony_two() {
  const Params p{2.0, 1.0};
  double worst = 0.0;
  for (int k = 0; k < 20; ++k) {
    const double s = 0.05 + 0.9 * k / 19.0;
    for (auto m : {PeriodMethod::quadrature, PeriodMethod::flight}) {
      worst = std::max(worst, std::abs(period_at_fraction(p, s, m, 1e-10) - pi));
    }
  }
  return {worst <= 1e-8, fmt("max |T - pi| = %.2e over 20 levels, both methods", worst)};
}

Outcome isochrony_half() {
  // Closed orbits for B = -1 lie below P_min = -1/2.
  const Params p{0.5, -1.0};
  const double p_min = -0.5;
  double worst = 0.0;
  for (int k = 0; k < 20; ++k) {
    const double pressure = p_min * std::pow(10.0, 0.1 * (k + 1));
    for (auto m : {PeriodMethod::quadrature, PeriodMethod::flight}) {
      worst = std::max(worst, std::abs(period(p, pressure, m, 1e-10) - 2.0 * pi));
    }
  }
  return {worst <= 1e-8, fmt("max |T - 2 pi| = %.2e over 20 levels below P_min, both methods", worst)};
}

Outcome gap_fill() {
  bool ok = true;
  double margin = 1e300;
  for (double l : {1.1, 1.2, 1.3, 1.33, 1.5, 1.9}) {
    const double lo = pi, hi = 2.0 * pi / std::sqrt(2.0 * l);
    for (const auto& r : period_table({l, 1.0}, 400, 1e-3, 1.0 - 1e-3).rows) {
      ok = ok && r.period > lo && r.period < hi;
      margin = std::min({margin, r.period - lo, hi - r.period});
    }
    ok = ok && count_elliptic(l, 1, CountMode::scan).kind == ResultKind::none;
  }
  return {ok, fmt("6 x 400 samples strictly inside (pi, 2 pi/sqrt(2 lambda)), min margin %.2e; scan: none",
                  margin)};
}

Outcome count_formula() {
  bool ok = true;
  std::string detail;
  for (double l : {4.5, 5.0, 8.0, 12.5}) {
    const auto scan = count_elliptic(l, 1, CountMode::scan);
    const auto table = count_elliptic(l, 1, CountMode::table);
    const auto expect = interior_integers(l);
    ok = ok && scan.windings == expect && table.windings == expect &&
         (expect.empty() ? scan.kind == ResultKind::none : scan.kind == ResultKind::finite);
    detail += fmt("%g->%g ", l, static_cast<double>(scan.count()));
  }
  const auto o = find_periodic(5.0, 1, 3);
  const double t_err = std::abs(o.period - 2.0 * pi / 3.0);
  const auto prof = reconstruct_profile(o.params, o.pressure, 3, 512);
  const int maxima = count_maxima(prof);
  ok = ok && t_err <= 1e-9 && is_closed(prof, 1e-6) && maxima == 3;
  return {ok, detail + fmt("; n=3 at lambda 5: |T - 2pi/3| = %.1e, maxima = %g", t_err, maxima)};
}

// Center located by root finding on the force, pressure evaluated there.
double located_extremal_pressure(double l, double b) {
  const Params p{l, b};
  auto force = [&](double log_x) { return vector_field(p, {std::exp(log_x), 0.0}).second; };
  double a = -1.0, c = 1.0;
  while (force(a) * force(c) > 0.0) {
    a *= 2.0;
    c *= 2.0;
  }
  boost::uintmax_t iters = 300;
  const auto r = boost::math::tools::toms748_solve(force, a, c, boost::math::tools::eps_tolerance<double>(52),
                                                   iters);
  const double x = std::exp(0.5 * (r.first + r.second));
  return pressure_hamiltonian(p, {x, 0.0});
}

Outcome extremal_pressures() {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> above(1.001, 30.0), below(0.01, 0.999);
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    const double l1 = above(rng), l2 = below(rng);
    const double p_max = std::pow((l1 - 1.0) / (l1 * l1 * l1), l1 - 1.0) / (2.0 * l1);
    const double p_min = -std::pow((1.0 - l2) / (l2 * l2 * l2), l2 - 1.0) / (2.0 * l2);
    worst = std::max(worst, std::abs(located_extremal_pressure(l1, 1.0) / p_max - 1.0));
    worst = std::max(worst, std::abs(located_extremal_pressure(l2, -1.0) / p_min - 1.0));
  }
  return {worst <= 1e-10, fmt("max relative error %.2e over 50 + 50 random lambda", worst)};
}

Outcome duality() {
  SolutionProfile src;
  src.lambda = 2.0;
  src.bernoulli = 1.0;
  src.pressure = 3.0 / 128;
  src.winding = 2;
  src.theta = uniform_angle_grid(512);
  for (double t : src.theta) {
    src.psi.push_back(0.125 + std::cos(2.0 * t) / 16.0);
    src.psi_prime.push_back(-std::sin(2.0 * t) / 8.0);
  }
  const auto dual = conjugate_dual(src);
  const auto residual = pressure_residual_profile(0.5, dual);
  const double flat = spread(residual);
  const double level = std::abs(mean(residual) + 1.0 / 32.0);
  const double back = aligned_distance(conjugate_dual(dual), src);
  const double t_dual = period({0.5, dual.bernoulli}, dual.pressure);
  const auto img = conjugate_orbit(elliptic_orbit({2.0, 1.0}, 3.0 / 128));
  const double t_err = std::max(std::abs(t_dual - 2.0 * pi), std::abs(img.period - 2.0 * pi));
  const bool ok = flat <= 1e-6 && level <= 1e-6 && back <= 1e-7 && t_err <= 1e-8;
  return {ok, fmt("residual spread %.1e, |P + 1/32| = %.1e", flat, level) +
                  fmt(", involution %.1e, |T - 2 pi| = %.1e", back, t_err)};
}

Outcome monge_ampere() {
  bool ok = ma_count(5).result.count() == 0 && ma_count(6).result.count() == 1 && ma_count(12).lambda == 8.0 &&
            ma_count(12).result.count() == 1 && ma_count(21).result.count() == 2;
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> alpha(-1.99, 400.0);
  int agree = 0;
  for (int i = 0; i < 200; ++i) {
    const double a = alpha(rng);
    const auto m = ma_count(a);
    agree += m.result == count_elliptic(2.0 + a / 2.0, 1) && m.result.windings == interior_integers(m.lambda);
  }
  ok = ok && agree == 200;
  return {ok, fmt("alpha 5/6/12/21 -> 0/1/1/2; %g of %g random alpha agree", agree, 200)};
}

Outcome oracle_equivalence() {
  double worst = 0.0;
  int n = 0;
  for (double l : {1.2, 1.5, 2.0, 3.0, 4.5, 5.0, 8.0, 12.5}) {
    for (int k = 1; k <= 9; ++k) {
      const Params p{l, 1.0};
      worst = std::max(worst, std::abs(period_at_fraction(p, 0.1 * k, PeriodMethod::quadrature, 1e-10) -
                                       period_at_fraction(p, 0.1 * k, PeriodMethod::flight, 1e-10)));
      ++n;
    }
  }
  for (double l : {0.3, 0.5, 0.7, 0.9}) {
    for (int k = 1; k <= 9; ++k) {
      const Params p{l, -1.0};
      worst = std::max(worst, std::abs(period_at_fraction(p, 0.1 * k, PeriodMethod::quadrature, 1e-10) -
                                       period_at_fraction(p, 0.1 * k, PeriodMethod::flight, 1e-10)));
      ++n;
    }
  }
  return {worst <= 5e-8, fmt("max |T_quad - T_flight| = %.2e over %g levels", worst, n)};
}

Outcome conservation() {
  bool ok = true;
  double worst_ratio = 0.0;
  for (double l : {0.3, 0.5, 1.2, 2.0, 5.0, 12.5}) {
    const Params p{l, l > 1.0 ? 1.0 : -1.0};
    for (double s : {0.05, 0.5, 0.95}) {
      const double pr = pressure_from_fraction(p, s);
      const auto tp = turning_points(p, pr);
      for (double tol : {1e-8, 1e-10, 1e-12}) {
        const double span = 4.0 * pi;
        const auto tr = integrate_orbit(p, {tp.x_plus, 0.0}, span, tol);
        worst_ratio = std::max(worst_ratio, tr.max_relative_drift / (10.0 * tol * span));
      }
    }
  }
  ok = worst_ratio <= 1.0;
  double worst_scale = 0.0;
  for (double l : {0.3, 1.5, 5.0, 12.5}) {
    const Params p{l, l > 1.0 ? 1.0 : -1.0};
    const double pr = pressure_from_fraction(p, 0.4);
    const double t = period(p, pr);
    for (double c : {0.01, 0.5, 2.0, 100.0}) {
      const auto img = scale_solution(c, p, elliptic_center(p).state, pr);
      worst_scale = std::max(worst_scale, std::abs(period(img.params, img.pressure) - t));
    }
  }
  ok = ok && worst_scale <= 1e-9;
  return {ok, fmt("max drift / (10 tol span) = %.2f; rescaling |dT| = %.1e", worst_ratio, worst_scale)};
}

Outcome field_verification() {
  const auto o = find_periodic(5.0, 1, 3);
  const auto prof = reconstruct_profile(o.params, o.pressure, 3, 1024);
  std::vector<EulerResidual> res;
  for (int k = 0; k < 4; ++k) res.push_back(euler_residual(velocity_field(prof, {1.0, 1.5, 16 << k, 64 << k})));
  bool ok = true;
  double lo = 1e300, hi = 0.0;
  for (int k = 1; k < 4; ++k) {
    for (double ratio : {res[k - 1].momentum_norm / res[k].momentum_norm, res[k - 1].div_norm / res[k].div_norm}) {
      lo = std::min(lo, ratio);
      hi = std::max(hi, ratio);
      ok = ok && ratio >= 3.5 && ratio <= 4.5;
    }
  }
  // Rotations whose pressure is at most quadratic in r are represented exactly
  // by the centered stencil, so their residual is pure rounding.
  double rot_res = 0.0;
  for (double l : {1.5, 2.0}) {
    const Params p{l, 1.0};
    const auto rot = reconstruct_profile(p, elliptic_center(p).extremal_pressure, 1, 64);
    const auto r = euler_residual(velocity_field(rot, {1.0, 2.0, 33, 128}));
    rot_res = std::max({rot_res, r.div_norm, r.momentum_norm});
    ok = ok && rot.type == ProfileType::rotation;
  }
  ok = ok && rot_res < 1e-12;
  return {ok, fmt("refinement ratios in [%.2f, %.2f]", lo, hi) + fmt(", rotation residual %.1e", rot_res)};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"isochrony at lambda = 2", isochrony_two},
      {"isochrony at lambda = 1/2, B < 0", isochrony_half},
      {"period bounds for 1 < lambda < 2", gap_fill},
      {"count formula for lambda > 9/2", count_formula},
      {"extremal pressures", extremal_pressures},
      {"duality", duality},
      {"Monge-Ampere count", monge_ampere},
      {"quadrature vs flight", oracle_equivalence},
      {"conservation and rescaling", conservation},
      {"Euler field verification", field_verification},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s  %2zu  %-36s %s (%.2fs)\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first,
                o.detail.c_str(), secs);
    failed += !o.pass;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
