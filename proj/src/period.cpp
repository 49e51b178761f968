#include "homeuler/period.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <span>
#include <thread>

#include <boost/math/tools/roots.hpp>

#include "homeuler/errors.hpp"
#include "homeuler/integrator.hpp"
#include "homeuler/quadrature.hpp"

namespace homeuler {

namespace {

constexpr double pi = std::numbers::pi;

// Rescaled copy of the system with its center at x = 1:
//   B' = lambda^3/(lambda-1),  P'_ext = lambda^2/(2(lambda-1)).
// Periods are invariant under the rescaling.
struct Normalized {
  double lambda;
  double b;
  double e;
  double x_scale;
  double p_ext;

  Params params() const { return Params{lambda, b}; }
  double pressure(double s) const { return b > 0.0 ? s * p_ext : p_ext / s; }
  double h(double log_x) const {
    return b * std::exp(e * log_x) - lambda * lambda * std::exp(2.0 * log_x);
  }
};

Normalized normalize(const Params& params) {
  if (!has_elliptic_region(params)) throw DomainError("no elliptic region for these parameters");
  const double l = params.lambda;
  const double b = l * l * l / (l - 1.0);
  return {l, b, params.potential_exponent(), elliptic_center(params).state.x,
          l * l / (2.0 * (l - 1.0))};
}

constexpr double center_resolution = 1e-14;
constexpr double spot_check_band = 1e-2;

void check_fraction(double s) {
  if (!(s > 0.0) || !(s < 1.0 + center_resolution) || !std::isfinite(s)) {
    throw NoEllipticOrbit("pressure level outside the open elliptic range");
  }
}

struct LogRoots {
  double lower;
  double upper;
};

LogRoots log_turning_points(const Normalized& n, double s) {
  if (s >= 1.0 - center_resolution) return {0.0, 0.0};
  const double two_p = 2.0 * n.pressure(s);
  auto g = [&](double l) { return n.h(l) - two_p; };
  auto solve = [&](double a, double b) {
    boost::uintmax_t iters = 300;
    const auto r = boost::math::tools::toms748_solve(g, a, b, g(a), g(b),
                                                     boost::math::tools::eps_tolerance<double>(52), iters);
    return 0.5 * (r.first + r.second);
  };
  double lo = -1.0;
  while (g(lo) >= 0.0) {
    lo *= 2.0;
    if (lo < -1e5) throw DegenerateOrbit("lower turning point underflows");
  }
  double hi = 1.0;
  while (g(hi) >= 0.0) {
    hi *= 2.0;
    if (hi > 1e5) throw DegenerateOrbit("upper turning point overflows");
  }
  return {solve(lo, 0.0), solve(0.0, hi)};
}

// One half of the loop, integrated in v with x = x_end exp(sigma v^2) so that
// the inverse square root endpoint turns into a smooth integrand. sigma = +1
// runs from the lower turning point up to the center, -1 from the upper one
// down. R is expressed relative to its zero at x_end.
struct HalfLoop {
  const Normalized& n;
  double log_end;
  double sigma;

  double v_max() const { return std::sqrt(std::abs(log_end)); }
  double log_x(double v) const { return log_end + sigma * v * v; }
  // R(x) - R(x_end), written relative to the current point so that neither
  // term overflows when x_end is extremely small.
  double radicand(double v) const {
    const double v2 = v * v;
    const double lx = log_x(v);
    const double x = std::exp(lx);
    return -n.b * std::exp(n.e * lx) * std::expm1(-sigma * n.e * v2) +
           n.lambda * n.lambda * x * x * std::expm1(-sigma * 2.0 * v2);
  }
  double integrand(double v) const {
    const double r = radicand(v);
    if (!(r > 0.0)) throw ToleranceNotMet("period quadrature: radicand lost positivity");
    return 2.0 * v * std::exp(log_x(v)) / std::sqrt(r);
  }
  // Travel time from the turning point to x_end exp(sigma v^2).
  double time(double v, double tol) const {
    if (v <= 0.0) return 0.0;
    return quad::integrate([&](double w) { return integrand(w); }, 0.0, v, tol).value;
  }
};

// T = 2 (I_lower + I_upper).
double quadrature_period(const Normalized& n, double s, double tol) {
  const auto roots = log_turning_points(n, s);
  if (roots.lower == 0.0 && roots.upper == 0.0) return 2.0 * pi / std::sqrt(2.0 * n.lambda);
  const HalfLoop lower{n, roots.lower, 1.0}, upper{n, roots.upper, -1.0};
  return 2.0 * (lower.time(lower.v_max(), 0.05 * tol) + upper.time(upper.v_max(), 0.05 * tol));
}

double flight_period(const Normalized& n, double s, double tol) {
  const auto roots = log_turning_points(n, s);
  if (roots.lower == 0.0 && roots.upper == 0.0) return 2.0 * pi / std::sqrt(2.0 * n.lambda);
  const Params p = n.params();
  const double int_tol = std::clamp(1e-2 * tol, 1e-13, 1e-6);
  const PeriodLimits lim = period_limits(p);
  const double horizon = 3.0 * std::max(lim.center_limit, lim.boundary_limit);

  auto rhs = [&](const ode::State& z) {
    if (!(z[0] > 0.0)) throw DomainError("flight: orbit left x > 0");
    const auto [dx, dy] = vector_field(p, {z[0], z[1]});
    return ode::State{dx, dy};
  };
  auto accel = [&](const ode::StepPoint& q) {
    return ode::State{q.dz[1], force_slope(p, q.z[0]) * q.z[1]};
  };

  bool passed_lower = false;
  double result = -1.0;
  ode::dopri5(rhs, 0.0, {std::exp(roots.upper), 0.0}, horizon, ode::Dopri5Options{int_tol},
              [&](const ode::StepPoint& prev, const ode::StepPoint& cur) {
                if (!passed_lower) {
                  passed_lower = cur.z[1] > 0.0;
                  return true;
                }
                if (!(prev.z[1] > 0.0 && cur.z[1] <= 0.0)) return true;
                if (cur.z[1] == 0.0) {
                  result = cur.t;
                  return false;
                }
                const auto a2 = accel(prev);
                const auto b2 = accel(cur);
                auto y_at = [&](double t) { return ode::hermite_quintic(t, prev, cur, a2, b2)[1]; };
                boost::uintmax_t iters = 200;
                const auto r = boost::math::tools::toms748_solve(
                    y_at, prev.t, cur.t, prev.z[1], cur.z[1],
                    boost::math::tools::eps_tolerance<double>(50), iters);
                result = 0.5 * (r.first + r.second);
                return false;
              });
  if (result < 0.0) throw ToleranceNotMet("flight: no return to the section within the horizon");
  return result;
}

void guard_fraction(double s) {
  check_fraction(s);
  if (s < min_period_fraction || s > max_period_fraction) {
    throw DegenerateOrbit("pressure level within 1e-6 of an end of the elliptic range");
  }
}

}  // namespace

std::vector<PhaseState> orbit_states(const Params& params, double pressure, std::span<const double> theta,
                                     double tol) {
  if (!(tol > 0.0)) throw DomainError("orbit_states: tolerance must be positive");
  const Normalized n = normalize(params);
  const double s = pressure_fraction(params, pressure);
  check_fraction(s);
  const auto roots = log_turning_points(n, s);
  std::vector<PhaseState> out;
  out.reserve(theta.size());
  if (roots.lower == 0.0 && roots.upper == 0.0) {
    out.assign(theta.size(), PhaseState{n.x_scale, 0.0});
    return out;
  }

  const HalfLoop lower{n, roots.lower, 1.0}, upper{n, roots.upper, -1.0};
  const double qtol = 0.05 * tol;
  const double t_upper = upper.time(upper.v_max(), qtol);
  const double t_lower = lower.time(lower.v_max(), qtol);
  const double half_period = t_upper + t_lower;

  // Solves time(v) = target on [0, v_max]; time is increasing in v.
  auto invert = [&](const HalfLoop& h, double target, double total) {
    if (target <= 0.0) return 0.0;
    if (target >= total) return h.v_max();
    auto f = [&](double v) { return h.time(v, qtol) - target; };
    boost::uintmax_t iters = 200;
    const auto r = boost::math::tools::toms748_solve(f, 0.0, h.v_max(), -target, total - target,
                                                     boost::math::tools::eps_tolerance<double>(50), iters);
    return 0.5 * (r.first + r.second);
  };
  auto state = [&](const HalfLoop& h, double v, double sign) {
    const double r = v == 0.0 ? 0.0 : std::max(h.radicand(v), 0.0);
    return PhaseState{n.x_scale * std::exp(h.log_x(v)), r > 0.0 ? sign * n.x_scale * std::sqrt(r) : 0.0};
  };

  // From the upper turning point the orbit descends (y < 0) for half a period
  // and climbs back by the mirror image.
  for (double t : theta) {
    double phase = std::fmod(t, 2.0 * half_period);
    if (phase < 0.0) phase += 2.0 * half_period;
    const double sign = phase <= half_period ? -1.0 : 1.0;
    const double u = phase <= half_period ? phase : 2.0 * half_period - phase;
    if (u <= t_upper) {
      out.push_back(state(upper, invert(upper, u, t_upper), sign));
    } else {
      const double v = invert(lower, half_period - u, t_lower);
      out.push_back(state(lower, v, sign));
    }
  }
  return out;
}

TurningPoints turning_points_at_fraction(const Params& params, double s) {
  check_fraction(s);
  const Normalized n = normalize(params);
  const auto r = log_turning_points(n, s);
  return {n.x_scale * std::exp(r.lower), n.x_scale * std::exp(r.upper)};
}

TurningPoints turning_points(const Params& params, double pressure) {
  if (!has_elliptic_region(params)) throw DomainError("no elliptic region for these parameters");
  return turning_points_at_fraction(params, pressure_fraction(params, pressure));
}

double period_at_fraction(const Params& params, double s, PeriodMethod method, double tol) {
  guard_fraction(s);
  if (!(tol > 0.0)) throw DomainError("period: tolerance must be positive");
  const Normalized n = normalize(params);
  return method == PeriodMethod::quadrature ? quadrature_period(n, s, tol) : flight_period(n, s, tol);
}

double period(const Params& params, double pressure, PeriodMethod method, double tol) {
  if (!has_elliptic_region(params)) throw DomainError("no elliptic region for these parameters");
  return period_at_fraction(params, pressure_fraction(params, pressure), method, tol);
}

EllipticOrbit elliptic_orbit(const Params& params, double pressure, double tol) {
  const auto tp = turning_points(params, pressure);
  return {params, pressure, tp.x_minus, tp.x_plus, period(params, pressure, PeriodMethod::quadrature, tol)};
}

double linearized_frequency_squared(const Params& params) {
  if (!has_elliptic_region(params)) throw DomainError("no elliptic region for these parameters");
  return 2.0 * params.lambda;
}

PeriodLimits period_limits(const Params& params) {
  const double w2 = linearized_frequency_squared(params);
  // B < 0 is conjugate to 1/lambda > 1, whose boundary limit pi stretches by 1/lambda.
  const double boundary = params.bernoulli > 0.0 ? pi : pi / params.lambda;
  return {2.0 * pi / std::sqrt(w2), boundary};
}

std::optional<double> exact_period(const Params& params) {
  if (params.lambda == 2.0 && params.bernoulli > 0.0) return pi;
  if (params.lambda == 0.5 && params.bernoulli < 0.0) return 2.0 * pi;
  return std::nullopt;
}

std::vector<double> table_fractions(int n, double s_min, double s_max, Spacing spacing) {
  if (n < 2) throw DomainError("period table needs at least two rows");
  if (!(s_min > 0.0 && s_min < s_max && s_max < 1.0)) {
    throw DomainError("period table range must satisfy 0 < s_min < s_max < 1");
  }
  std::vector<double> s(static_cast<std::size_t>(n));
  auto logit = [](double x) { return std::log(x / (1.0 - x)); };
  const double a = logit(s_min), b = logit(s_max);
  for (int i = 0; i < n; ++i) {
    const double u = static_cast<double>(i) / (n - 1);
    if (spacing == Spacing::uniform) {
      s[static_cast<std::size_t>(i)] = s_min + (s_max - s_min) * u;
    } else {
      const double t = a + (b - a) * u;
      s[static_cast<std::size_t>(i)] = 1.0 / (1.0 + std::exp(-t));
    }
  }
  s.front() = s_min;
  s.back() = s_max;
  return s;
}

PeriodTable period_table(const Params& params, int n, double s_min, double s_max,
                         const PeriodTableOptions& options) {
  const auto fractions = table_fractions(n, s_min, s_max, options.spacing);
  const Normalized norm = normalize(params);
  for (double s : fractions) guard_fraction(s);

  PeriodTable table{params, std::vector<PeriodRow>(fractions.size())};
  auto fill = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      const double s = fractions[i];
      table.rows[i] = {s, pressure_from_fraction(params, s), quadrature_period(norm, s, options.tol)};
    }
  };
  const std::size_t threads = static_cast<std::size_t>(std::max(1, options.threads));
  if (threads == 1) {
    fill(0, fractions.size());
  } else {
    std::vector<std::jthread> pool;
    const std::size_t chunk = (fractions.size() + threads - 1) / threads;
    for (std::size_t b = 0; b < fractions.size(); b += chunk) {
      pool.emplace_back(fill, b, std::min(fractions.size(), b + chunk));
    }
  }

  // Spot checks at evenly spread rows of the well-conditioned middle band.
  // Very close to s = 0 with lambda near 1 the orbit grazes x = 0 within less
  // than one ulp of theta, which no time-stepper can resolve.
  std::vector<std::size_t> band;
  for (std::size_t i = 0; i < fractions.size(); ++i) {
    if (fractions[i] >= spot_check_band && fractions[i] <= 1.0 - spot_check_band) band.push_back(i);
  }
  if (band.empty()) {
    const auto mid = std::min_element(fractions.begin(), fractions.end(), [](double a, double b) {
      return std::abs(a - 0.5) < std::abs(b - 0.5);
    });
    band.push_back(static_cast<std::size_t>(mid - fractions.begin()));
  }
  const int checks = std::min<int>(options.spot_checks, static_cast<int>(band.size()));
  for (int c = 0; c < checks; ++c) {
    const auto k = static_cast<std::size_t>(
        std::lround((c + 1.0) * (static_cast<double>(band.size()) - 1.0) / (checks + 1.0)));
    const std::size_t i = band[k];
    const double flight = flight_period(norm, fractions[i], options.tol);
    if (std::abs(flight - table.rows[i].period) > 5.0 * options.tol) {
      throw ToleranceNotMet("period table: quadrature and flight disagree at s = " +
                            std::to_string(fractions[i]));
    }
  }
  for (const auto& r : table.rows) {
    if (!(std::isfinite(r.period) && r.period > 0.0)) throw ToleranceNotMet("non-finite period");
  }
  return table;
}

namespace detail {

double quadrature_period_unchecked(const Params& params, double s, double tol) {
  check_fraction(s);
  return quadrature_period(normalize(params), s, tol);
}

}  // namespace detail

}  // namespace homeuler
