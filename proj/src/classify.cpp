#include "homeuler/classify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include <boost/math/tools/roots.hpp>

#include "homeuler/errors.hpp"
#include "homeuler/spectral.hpp"

namespace homeuler {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;
constexpr double grazing_margin = 1e-6;
constexpr double isochrony_tol = 1e-9;
constexpr double merge_distance = 1e-4;

Params admissible_params(double lambda, int bernoulli_sign) {
  if (bernoulli_sign != 1 && bernoulli_sign != -1) throw DomainError("Bernoulli sign must be +1 or -1");
  const Params p = Params::make(lambda, bernoulli_sign);
  if (!has_elliptic_region(p)) {
    throw DomainError("no elliptic region: need B = +1 with lambda > 1 or B = -1 with lambda < 1");
  }
  return p;
}

bool exact_continuum(const Params& p) { return exact_period(p).has_value(); }

// T equal at three interior levels.
bool isochrony_probe(const Params& p, double tol) {
  const double a = period_at_fraction(p, 0.25, PeriodMethod::quadrature, tol);
  const double b = period_at_fraction(p, 0.5, PeriodMethod::quadrature, tol);
  const double c = period_at_fraction(p, 0.75, PeriodMethod::quadrature, tol);
  return std::max({a, b, c}) - std::min({a, b, c}) <= isochrony_tol;
}

std::vector<int> table_windings(double lambda) {
  std::vector<int> out;
  for (int n = 3; static_cast<double>(n) * n < 2.0 * lambda; ++n) out.push_back(n);
  return out;
}

double refine_crossing(const Params& p, double target, double s_lo, double s_hi, double tol) {
  auto f = [&](double s) { return detail::quadrature_period_unchecked(p, s, tol) - target; };
  const double f_lo = f(s_lo), f_hi = f(s_hi);
  if (f_lo == 0.0) return s_lo;
  if (f_hi == 0.0) return s_hi;
  boost::uintmax_t iters = 200;
  const auto r = boost::math::tools::toms748_solve(f, s_lo, s_hi, f_lo, f_hi,
                                                   boost::math::tools::eps_tolerance<double>(50), iters);
  return 0.5 * (r.first + r.second);
}

// Smallest level (tried from 1e-300 upwards) whose turning points stay well
// inside the double range relative to the center; x_minus underflows first
// when lambda is near 1.
double resolvable_floor(const Params& p, double tol) {
  const double xc = elliptic_center(p).state.x;
  for (double s = 1e-300; s < min_period_fraction; s *= 1e10) {
    try {
      const auto tp = turning_points_at_fraction(p, s);
      if (!(tp.x_minus / xc > 1e-250 && tp.x_plus / xc < 1e250)) continue;
      if (std::isfinite(detail::quadrature_period_unchecked(p, s, tol))) return s;
    } catch (const Error&) {
    }
  }
  return min_period_fraction;
}

std::vector<PeriodRow> boundary_tail(const Params& p, const ScanOptions& opt) {
  std::vector<PeriodRow> rows;
  if (opt.tail_samples <= 0) return rows;
  const double floor = resolvable_floor(p, opt.tol);
  if (!(floor < opt.s_min)) return rows;
  const double a = std::log(floor), b = std::log(opt.s_min);
  for (int i = 0; i < opt.tail_samples; ++i) {
    const double s = std::exp(a + (b - a) * i / opt.tail_samples);
    rows.push_back({s, pressure_from_fraction(p, s), detail::quadrature_period_unchecked(p, s, opt.tol)});
  }
  return rows;
}

struct Crossing {
  int n;
  double s;
};

struct ScanOutcome {
  bool isochronous = false;
  double period_min = 0.0;
  double period_max = 0.0;
  std::vector<Crossing> crossings;
  std::vector<int> grazing;
};

ScanOutcome scan_period_function(const Params& p, const ScanOptions& opt, int only_n = 0) {
  PeriodTableOptions table_opt;
  table_opt.spacing = Spacing::clustered;
  table_opt.tol = opt.tol;
  table_opt.threads = opt.threads;
  PeriodTable table = period_table(p, opt.samples, opt.s_min, opt.s_max, table_opt);
  const auto tail = boundary_tail(p, opt);
  table.rows.insert(table.rows.begin(), tail.begin(), tail.end());

  ScanOutcome out;
  const auto [lo, hi] = std::minmax_element(table.rows.begin(), table.rows.end(),
                                            [](const PeriodRow& a, const PeriodRow& b) { return a.period < b.period; });
  out.period_min = lo->period;
  out.period_max = hi->period;
  if (out.period_max - out.period_min <= isochrony_tol && isochrony_probe(p, opt.tol)) {
    out.isochronous = true;
    return out;
  }

  const int n_first = std::max(1, static_cast<int>(std::floor(two_pi / out.period_max)));
  const int n_last = static_cast<int>(std::ceil(two_pi / out.period_min));
  for (int n = n_first; n <= n_last; ++n) {
    if (only_n != 0 && n != only_n) continue;
    const double target = two_pi / n;
    const double gap = std::min(std::abs(target - out.period_min), std::abs(target - out.period_max));
    if (gap < grazing_margin) {
      out.grazing.push_back(n);
      continue;
    }
    if (!(target > out.period_min && target < out.period_max)) continue;

    std::vector<double> roots;
    for (std::size_t i = 0; i + 1 < table.rows.size(); ++i) {
      const double a = table.rows[i].period - target;
      const double b = table.rows[i + 1].period - target;
      if (a == 0.0 || (a > 0.0) != (b > 0.0)) {
        const double s = refine_crossing(p, target, table.rows[i].s, table.rows[i + 1].s, 0.01 * opt.tol);
        if (roots.empty() || std::abs(s - roots.back()) > merge_distance) roots.push_back(s);
      }
    }
    for (double s : roots) out.crossings.push_back({n, s});
  }
  return out;
}

double mean(const std::vector<double>& v) {
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

}  // namespace

std::string_view to_string(ResultKind kind) {
  switch (kind) {
    case ResultKind::none: return "none";
    case ResultKind::finite: return "finite";
    case ResultKind::continuum: return "continuum";
  }
  return "none";
}

ClassificationResult count_elliptic(double lambda, int bernoulli_sign, CountMode mode,
                                    const ScanOptions& options) {
  const Params p = admissible_params(lambda, bernoulli_sign);
  ClassificationResult result;

  if (mode == CountMode::table) {
    if (exact_continuum(p)) {
      if (!isochrony_probe(p, options.tol)) {
        throw ToleranceNotMet("isochrony probe failed at an isochronous exponent");
      }
      result.kind = ResultKind::continuum;
      return result;
    }
    if (bernoulli_sign > 0) result.windings = table_windings(lambda);
    result.kind = result.windings.empty() ? ResultKind::none : ResultKind::finite;
    return result;
  }

  const ScanOutcome scan = scan_period_function(p, options);
  result.boundary_grazing = scan.grazing;
  if (scan.isochronous) {
    const double n = two_pi / scan.period_min;
    const bool commensurate = std::abs(scan.period_min - two_pi / std::round(n)) <= isochrony_tol;
    result.kind = commensurate ? ResultKind::continuum : ResultKind::none;
    return result;
  }
  for (const auto& c : scan.crossings) result.windings.push_back(c.n);
  std::sort(result.windings.begin(), result.windings.end());
  result.kind = result.windings.empty() ? ResultKind::none : ResultKind::finite;
  return result;
}

EllipticOrbit find_periodic(double lambda, int bernoulli_sign, int n, double tol, const ScanOptions& options) {
  const Params p = admissible_params(lambda, bernoulli_sign);
  if (n < 1) throw DomainError("winding number must be positive");
  if (exact_continuum(p)) {
    throw ContinuumCase("every level is 2*pi-periodic here; choose the pressure explicitly");
  }
  ScanOptions opt = options;
  opt.tol = std::min(opt.tol, 0.1 * tol);
  const ScanOutcome scan = scan_period_function(p, opt, n);
  if (std::find(scan.grazing.begin(), scan.grazing.end(), n) != scan.grazing.end()) {
    throw NoSolution("2*pi/" + std::to_string(n) + " grazes an end of the period range (boundary-grazing)");
  }
  if (scan.crossings.empty()) {
    throw NoSolution("2*pi/" + std::to_string(n) + " lies outside the open period range");
  }
  const double s = scan.crossings.front().s;
  const double pressure = pressure_from_fraction(p, s);
  const auto tp = turning_points_at_fraction(p, s);
  const double t = detail::quadrature_period_unchecked(p, s, 0.01 * tol);
  if (std::abs(t - two_pi / n) > tol) throw ToleranceNotMet("find_periodic: root refinement stalled");
  return {p, pressure, tp.x_minus, tp.x_plus, t};
}

SolutionProfile reconstruct_profile(const Params& params, double pressure, int n, int samples,
                                    const ReconstructOptions& options) {
  if (!has_elliptic_region(params)) throw DomainError("no elliptic region for these parameters");
  if (samples < 8) throw DomainError("profile needs at least 8 samples");
  if (n < 1) throw DomainError("winding number must be positive");

  SolutionProfile prof;
  prof.lambda = params.lambda;
  prof.bernoulli = params.bernoulli;
  prof.pressure = pressure;
  prof.winding = n;
  prof.theta = uniform_angle_grid(static_cast<std::size_t>(samples));

  const double s = pressure_fraction(params, pressure);
  if (std::abs(1.0 - s) <= 1e-12) {
    const double xc = elliptic_center(params).state.x;
    prof.psi.assign(prof.theta.size(), xc);
    prof.psi_prime.assign(prof.theta.size(), 0.0);
    prof.type = ProfileType::rotation;
    return prof;
  }

  // Direct integration loses the level near the outer boundary, where the
  // pressure is a vanishing fraction of the orbit's energy scale.
  const auto states = orbit_states(params, pressure, prof.theta, options.tol);
  prof.psi.reserve(states.size());
  prof.psi_prime.reserve(states.size());
  for (const auto& z : states) {
    prof.psi.push_back(z.x);
    prof.psi_prime.push_back(z.y);
  }
  if (!is_closed(prof, options.closure_tol)) {
    throw ClosureFailure("profile does not close over [0, 2*pi]; the level is not 2*pi/n-periodic");
  }
  const int maxima = count_maxima(prof);
  if (maxima != n) {
    throw ClosureFailure("profile closes with " + std::to_string(maxima) + " loops, expected " +
                         std::to_string(n));
  }
  prof.type = classify_profile(prof);
  return prof;
}

ProfileType classify_profile(const SolutionProfile& profile) {
  const std::size_t m = is_closed(profile) ? profile.periodic_size() : profile.size();
  if (m == 0) throw DomainError("empty profile");
  const auto first = profile.psi.begin();
  const auto last = first + static_cast<std::ptrdiff_t>(m);
  const auto [lo, hi] = std::minmax_element(first, last);
  const double amplitude = std::max(std::abs(*lo), std::abs(*hi));
  if (*hi - *lo <= 1e-12 * amplitude) return ProfileType::rotation;

  const double zero = 1e-9 * amplitude;
  auto sign = [&](double v) { return std::abs(v) <= zero ? 0 : (v > 0 ? 1 : -1); };
  // Each maximal run of near-zero samples, and each direct sign flip, is one zero.
  int zeros = 0;
  const bool cyclic = m == profile.periodic_size();
  std::size_t start = 0;
  while (start < m && sign(profile.psi[start]) == 0) ++start;
  if (start == m) return ProfileType::rotation;
  int prev = sign(profile.psi[start]);
  bool in_zero_run = false;
  for (std::size_t j = 1; j <= (cyclic ? m : m - 1 - start); ++j) {
    const std::size_t k = cyclic ? (start + j) % m : start + j;
    const int s = sign(profile.psi[k]);
    if (s == 0) {
      if (!in_zero_run) ++zeros;
      in_zero_run = true;
      continue;
    }
    if (!in_zero_run && s != prev) ++zeros;
    in_zero_run = false;
    prev = s;
  }
  if (!cyclic && start > 0) ++zeros;
  if (zeros == 0) return ProfileType::elliptic;
  return zeros == 1 ? ProfileType::parabolic : ProfileType::hyperbolic;
}

SolutionProfile conjugate_dual(const SolutionProfile& profile) {
  validate_profile_grid(profile);
  const double l = profile.lambda;
  if (l == 1.0 || !(l > 0.0)) throw DomainError("conjugacy needs lambda > 0, lambda != 1");
  if (!is_closed(profile)) throw DomainError("conjugacy needs a closed source profile");
  if (!(*std::min_element(profile.psi.begin(), profile.psi.end()) > 0.0)) {
    throw DomainError("conjugacy needs psi > 0 (fractional power)");
  }
  const std::size_t m = profile.periodic_size();
  const spectral::TrigInterpolant psi(std::span(profile.psi).first(m));
  const spectral::TrigInterpolant dpsi(std::span(profile.psi_prime).first(m));

  SolutionProfile dual;
  dual.lambda = 1.0 / l;
  dual.theta = uniform_angle_grid(m);
  dual.psi.reserve(dual.theta.size());
  dual.psi_prime.reserve(dual.theta.size());
  for (double t : dual.theta) {
    const double phi = t / l;
    const double v = psi.value(phi);
    if (!(v > 0.0)) throw DomainError("conjugacy: interpolated psi is not positive");
    dual.psi.push_back(std::pow(v, 1.0 / l));
    dual.psi_prime.push_back(std::pow(v, 1.0 / l - 1.0) * dpsi.value(phi) / (l * l));
  }
  dual.pressure = mean(pressure_residual_profile(dual.lambda, dual));
  std::vector<double> b(dual.size());
  for (std::size_t k = 0; k < dual.size(); ++k) {
    b[k] = bernoulli(dual.lambda, dual.pressure, {dual.psi[k], dual.psi_prime[k]});
  }
  dual.bernoulli = mean(b);
  dual.winding = std::max(1, count_maxima(dual));
  dual.type = classify_profile(dual);
  return dual;
}

EllipticOrbit conjugate_orbit(const EllipticOrbit& orbit, double tol) {
  const double l = orbit.params.lambda;
  const double x = orbit.x_plus;
  const double curvature = vector_field(orbit.params, {x, 0.0}).second;
  const double dual_l = 1.0 / l;
  const double dual_x = std::pow(x, dual_l);
  const double dual_curvature = std::pow(x, dual_l - 1.0) * curvature / (l * l * l);
  const double m = (dual_l - 2.0) / dual_l;
  const double dual_b = (dual_curvature + dual_l * dual_l * dual_x) * dual_l /
                        ((dual_l - 1.0) * std::pow(dual_x, m));
  const Params dual = Params::make(dual_l, dual_b);
  const double dual_p = pressure_hamiltonian(dual, {dual_x, 0.0});
  return elliptic_orbit(dual, dual_p, tol);
}

MongeAmpereCount ma_count(double alpha) {
  if (!std::isfinite(alpha) || !(alpha > -2.0)) throw DomainError("Monge-Ampere exponent must satisfy alpha > -2");
  const double lambda = 2.0 + alpha / 2.0;
  return {lambda, count_elliptic(lambda, 1, CountMode::table)};
}

}  // namespace homeuler
