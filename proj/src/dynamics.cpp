#include "homeuler/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "homeuler/errors.hpp"
#include "homeuler/integrator.hpp"
#include "homeuler/spectral.hpp"

namespace homeuler {

namespace {

bool is_integer(double p) { return std::nearbyint(p) == p; }

void require_positive_x(double x, const char* where) {
  if (!(x > 0.0)) throw DomainError(std::string(where) + ": requires x > 0");
}

}  // namespace

Params Params::make(double lambda, double bernoulli) {
  if (!std::isfinite(lambda) || !(lambda > 0.0)) throw DomainError("lambda must be positive");
  if (lambda == 1.0) throw DomainError("lambda = 1 is degenerate");
  if (!std::isfinite(bernoulli)) throw DomainError("Bernoulli constant must be finite");
  return Params{lambda, bernoulli};
}

double real_power(double x, double p) {
  if (x > 0.0) return std::pow(x, p);
  if (p == 0.0) return 1.0;
  if (is_integer(p) && !(x == 0.0 && p < 0.0)) return std::pow(x, p);
  if (x == 0.0 && p > 0.0) return 0.0;
  throw DomainError("fractional power of a non-positive base");
}

std::pair<double, double> vector_field(const Params& params, PhaseState s) {
  const double l = params.lambda;
  const double force = (l - 1.0) / l * params.bernoulli * real_power(s.x, params.force_exponent());
  return {s.y, -l * l * s.x + force};
}

double force_slope(const Params& params, double x) {
  const double l = params.lambda;
  const double m = params.force_exponent();
  if (m == 0.0) return -l * l;
  return -l * l + (l - 1.0) / l * params.bernoulli * m * real_power(x, m - 1.0);
}

double pressure_hamiltonian(const Params& params, PhaseState s) {
  const double l = params.lambda;
  return -0.5 * s.y * s.y - 0.5 * l * l * s.x * s.x +
         0.5 * params.bernoulli * real_power(s.x, params.potential_exponent());
}

double bernoulli(double lambda, double pressure, PhaseState s) {
  require_positive_x(s.x, "bernoulli");
  return (2.0 * pressure + lambda * lambda * s.x * s.x + s.y * s.y) *
         std::pow(s.x, 2.0 / lambda - 2.0);
}

bool has_elliptic_region(const Params& params) {
  return (params.bernoulli > 0.0 && params.lambda > 1.0) ||
         (params.bernoulli < 0.0 && params.lambda < 1.0);
}

double extremal_pressure_closed_form(const Params& params) {
  if (!has_elliptic_region(params)) throw DomainError("no elliptic region for these parameters");
  const double l = params.lambda;
  const double q = (l - 1.0) * params.bernoulli / (l * l * l);
  return params.bernoulli * std::pow(q, l - 1.0) / (2.0 * l);
}

Center elliptic_center(const Params& params) {
  if (!has_elliptic_region(params)) throw DomainError("no elliptic region for these parameters");
  const double l = params.lambda;
  double xc = 0.0;
  if (l == 2.0) {
    xc = params.bernoulli / 8.0;
  } else {
    xc = std::pow((l - 1.0) * params.bernoulli / (l * l * l), l / 2.0);
  }
  const PhaseState c{xc, 0.0};
  return {c, pressure_hamiltonian(params, c)};
}

double pressure_fraction(const Params& params, double pressure) {
  const double ext = extremal_pressure_closed_form(params);
  return params.bernoulli > 0.0 ? pressure / ext : ext / pressure;
}

double pressure_from_fraction(const Params& params, double s) {
  const double ext = extremal_pressure_closed_form(params);
  return params.bernoulli > 0.0 ? s * ext : ext / s;
}

PhaseState Trajectory::at(double theta) const {
  if (samples.empty()) throw DomainError("empty trajectory");
  if (theta <= samples.front().theta) return samples.front().state;
  if (theta >= samples.back().theta) return samples.back().state;
  auto hi = std::upper_bound(samples.begin(), samples.end(), theta,
                             [](double t, const TrajectorySample& s) { return t < s.theta; });
  auto lo = hi - 1;
  auto point = [&](const TrajectorySample& s) {
    const auto [dx, dy] = vector_field(params, s.state);
    return ode::StepPoint{s.theta, {s.state.x, s.state.y}, {dx, dy}};
  };
  auto accel = [&](const ode::StepPoint& p) {
    return ode::State{p.dz[1], force_slope(params, p.z[0]) * p.z[1]};
  };
  const auto a = point(*lo);
  const auto b = point(*hi);
  const auto z = ode::hermite_quintic(theta, a, b, accel(a), accel(b));
  return {z[0], z[1]};
}

Trajectory integrate_orbit(const Params& params, PhaseState start, double span, double tol) {
  require_positive_x(start.x, "integrate_orbit");
  if (!(span > 0.0) || !std::isfinite(span)) throw DomainError("integrate_orbit: span must be positive");
  if (!(tol >= 1e-13 && tol <= 1e-6)) throw DomainError("integrate_orbit: tol outside [1e-13, 1e-6]");

  Trajectory traj;
  traj.params = params;
  traj.pressure = pressure_hamiltonian(params, start);
  traj.samples.push_back({0.0, start});
  const double l = params.lambda;
  const double energy_scale =
      0.5 * (start.y * start.y + l * l * start.x * start.x +
             std::abs(params.bernoulli) * real_power(start.x, params.potential_exponent()));

  const bool singular_at_zero = params.force_exponent() < 0.0;
  auto rhs = [&](const ode::State& z) {
    if (singular_at_zero && !(z[0] > 0.0)) throw DomainError("trajectory reached x = 0");
    const auto [dx, dy] = vector_field(params, {z[0], z[1]});
    return ode::State{dx, dy};
  };
  double drift = 0.0;
  ode::dopri5(rhs, 0.0, {start.x, start.y}, span, ode::Dopri5Options{tol},
              [&](const ode::StepPoint&, const ode::StepPoint& cur) {
                const PhaseState s{cur.z[0], cur.z[1]};
                traj.samples.push_back({cur.t, s});
                drift = std::max(drift, std::abs(pressure_hamiltonian(params, s) - traj.pressure));
                return true;
              });
  traj.max_relative_drift = energy_scale > 0.0 ? drift / energy_scale : drift;
  return traj;
}

ScaledSolution scale_solution(double c, const Params& params, PhaseState s, double pressure) {
  if (!(c > 0.0) || !std::isfinite(c)) throw DomainError("scale factor must be positive");
  return {Params{params.lambda, std::pow(c, 2.0 / params.lambda) * params.bernoulli},
          PhaseState{c * s.x, c * s.y}, c * c * pressure};
}

std::vector<double> pressure_residual_profile(double lambda, const SolutionProfile& profile) {
  if (lambda == 1.0) throw DomainError("pressure residual undefined for lambda = 1");
  validate_profile_grid(profile);
  const std::size_t m = profile.periodic_size();
  std::vector<double> second;
  if (is_closed(profile)) {
    second = spectral::derivative(std::span(profile.psi_prime).first(m));
    second.push_back(second.front());
  } else {
    second = spectral::finite_difference_derivative(profile.psi_prime, profile.theta[1] - profile.theta[0]);
  }
  std::vector<double> out(profile.size());
  const double l = lambda;
  for (std::size_t k = 0; k < out.size(); ++k) {
    const double p = profile.psi[k];
    const double dp = profile.psi_prime[k];
    out[k] = (-(l - 1.0) * dp * dp + l * l * p * p + l * second[k] * p) / (2.0 * (l - 1.0));
  }
  return out;
}

}  // namespace homeuler
