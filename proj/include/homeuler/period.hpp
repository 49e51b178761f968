#pragma once

#include <optional>
#include <span>
#include <vector>

#include "homeuler/dynamics.hpp"

namespace homeuler {

enum class PeriodMethod { quadrature, flight };

/// Closed orbit at Hamiltonian level `pressure`, with its full period.
struct EllipticOrbit {
  Params params;
  double pressure = 0.0;
  double x_minus = 0.0;
  double x_plus = 0.0;
  double period = 0.0;
};

struct TurningPoints {
  double x_minus = 0.0;
  double x_plus = 0.0;
};

/// Limits of the full period at the center and at the outer boundary of
/// the elliptic region.
struct PeriodLimits {
  double center_limit = 0.0;
  double boundary_limit = 0.0;
};

struct PeriodRow {
  double s = 0.0;
  double pressure = 0.0;
  double period = 0.0;
};

struct PeriodTable {
  Params params;
  std::vector<PeriodRow> rows;
};

enum class Spacing { uniform, clustered };

struct PeriodTableOptions {
  Spacing spacing = Spacing::uniform;
  double tol = 1e-10;
  int spot_checks = 3;
  int threads = 1;
};

/// Levels of the normalised pressure coordinate accepted by `period`.
inline constexpr double min_period_fraction = 1e-6;
inline constexpr double max_period_fraction = 1.0 - 1e-6;

/// Both roots of R(x) = B x^((2l-2)/l) - l^2 x^2 - 2P bracketing the center.
/// At the center level the center abscissa is returned twice.
TurningPoints turning_points(const Params& params, double pressure);
TurningPoints turning_points_at_fraction(const Params& params, double s);

/// Full period T(P). Quadrature integrates 2 dx/sqrt(R) after a logarithmic
/// endpoint substitution; flight integrates the loop from (x_plus, 0).
double period(const Params& params, double pressure, PeriodMethod method = PeriodMethod::quadrature,
              double tol = 1e-10);
double period_at_fraction(const Params& params, double s, PeriodMethod method = PeriodMethod::quadrature,
                          double tol = 1e-10);

/// States of the closed orbit at `pressure` at the given angles, starting at
/// (x_plus, 0) for theta = 0 and moving down. Obtained by inverting the travel
/// time integral, so the accuracy does not degrade near the outer boundary,
/// where the level is a vanishing fraction of the orbit's energy scale.
std::vector<PhaseState> orbit_states(const Params& params, double pressure, std::span<const double> theta,
                                     double tol = 1e-12);

EllipticOrbit elliptic_orbit(const Params& params, double pressure, double tol = 1e-10);

PeriodLimits period_limits(const Params& params);

/// Squared angular frequency of the linearisation at the center (= 2 lambda).
double linearized_frequency_squared(const Params& params);

/// The isochronous cases: pi for lambda = 2 (B > 0), 2*pi for lambda = 1/2 (B < 0).
std::optional<double> exact_period(const Params& params);

/// Fractions s at which a table is sampled (uniform, or uniform in logit(s)).
std::vector<double> table_fractions(int n, double s_min, double s_max, Spacing spacing);

/// Period function sampled at n fractions in [s_min, s_max]. Rows are
/// computed by quadrature; `spot_checks` rows are recomputed by flight and
/// must agree within 5 tol.
PeriodTable period_table(const Params& params, int n, double s_min, double s_max,
                         const PeriodTableOptions& options = {});

namespace detail {

/// Quadrature period without the near-boundary guard; any s in (0, 1).
double quadrature_period_unchecked(const Params& params, double s, double tol);

}  // namespace detail

}  // namespace homeuler
