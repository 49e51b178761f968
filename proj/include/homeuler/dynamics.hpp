#pragma once

#include <utility>
#include <vector>

#include "homeuler/profile.hpp"

namespace homeuler {

/// Homogeneity exponent lambda and Bernoulli constant B of the phase system
///   x' = y,  y' = -lambda^2 x + ((lambda-1)/lambda) B x^((lambda-2)/lambda).
struct Params {
  double lambda = 2.0;
  double bernoulli = 1.0;

  /// Validating constructor: lambda > 0, lambda != 1, B finite.
  static Params make(double lambda, double bernoulli);

  /// Exponent of the force term, (lambda-2)/lambda.
  double force_exponent() const { return (lambda - 2.0) / lambda; }
  /// Exponent of the potential term, (2 lambda - 2)/lambda.
  double potential_exponent() const { return (2.0 * lambda - 2.0) / lambda; }
};

/// Phase point (x, y) = (psi, psi').
struct PhaseState {
  double x = 0.0;
  double y = 0.0;
};

struct TrajectorySample {
  double theta = 0.0;
  PhaseState state;
};

struct Trajectory {
  Params params;
  std::vector<TrajectorySample> samples;
  double pressure = 0.0;
  /// max |P(sample) - P(start)| divided by the magnitude of the Hamiltonian's
  /// terms at the start (scale invariant).
  double max_relative_drift = 0.0;

  /// Dense output: quintic Hermite interpolation between accepted steps.
  PhaseState at(double theta) const;
  double span() const { return samples.back().theta - samples.front().theta; }
};

struct Center {
  PhaseState state;
  double extremal_pressure = 0.0;
};

/// x^p restricted to the principal real branch; integer p also accepts x <= 0
/// where the value is finite. Throws DomainError otherwise.
double real_power(double x, double p);

std::pair<double, double> vector_field(const Params& params, PhaseState s);

/// d/dx of the force term y'(x); used for second derivatives in dense output.
double force_slope(const Params& params, double x);

/// P = -y^2/2 - lambda^2 x^2/2 + (B/2) x^((2 lambda - 2)/lambda).
double pressure_hamiltonian(const Params& params, PhaseState s);

/// B = (2P + lambda^2 psi^2 + psi'^2) psi^(2/lambda - 2).
double bernoulli(double lambda, double pressure, PhaseState s);

/// True for (B > 0, lambda > 1) and (B < 0, lambda < 1).
bool has_elliptic_region(const Params& params);

/// Closed forms P_max = (1/2l)((l-1)/l^3)^(l-1) for B = 1 and
/// P_min = -(1/2l)((1-l)/l^3)^(l-1) for B = -1, generalised to any B of the
/// admissible sign through the scaling law.
double extremal_pressure_closed_form(const Params& params);

/// Nondegenerate center (x_c, 0) with x_c^(2/lambda) = (lambda-1) B / lambda^3.
Center elliptic_center(const Params& params);

/// Normalised pressure coordinate in (0, 1): s = P/P_max for B > 0 and
/// s = P_min/P for B < 0 (closed orbits sit below P_min in that branch).
/// s -> 1 at the center, s -> 0 at the outer boundary of the elliptic region.
double pressure_fraction(const Params& params, double pressure);
double pressure_from_fraction(const Params& params, double s);

/// Adaptive Dormand-Prince 5(4) integration of the phase flow with
/// local error per unit step <= tol and quintic Hermite dense output.
Trajectory integrate_orbit(const Params& params, PhaseState start, double span, double tol);

struct ScaledSolution {
  Params params;
  PhaseState state;
  double pressure = 0.0;
};

/// Homogeneity of the phase system: (x, y, B, P) -> (c x, c y, c^(2/lambda) B, c^2 P).
ScaledSolution scale_solution(double c, const Params& params, PhaseState s, double pressure);

/// Pointwise pressure recovered from the profile ODE
///   2(l-1) P = -(l-1) psi'^2 + l^2 psi^2 + l psi'' psi.
/// psi'' is obtained spectrally from psi' for closed profiles and by
/// sixth-order finite differences otherwise.
std::vector<double> pressure_residual_profile(double lambda, const SolutionProfile& profile);

}  // namespace homeuler
