#pragma once

#include <cstddef>
#include <vector>

#include "homeuler/profile.hpp"

namespace homeuler {

/// Sign convention for u = perp-grad Psi. `standard` gives
///   u_r = r^(l-1) psi',  u_theta = -l r^(l-1) psi;
/// `flipped` reverses both components. The pressure is unaffected.
enum class Orientation { standard, flipped };

struct GridSpec {
  double r_min = 1.0;
  double r_max = 2.0;
  int nr = 33;
  int ntheta = 128;
  Orientation orientation = Orientation::standard;
};

struct FieldNode {
  double u_r = 0.0;
  double u_theta = 0.0;
  double p = 0.0;
};

/// Polar grid r_i = r_min + i dr (i < nr, r_max included) times
/// theta_j = 2 pi j / ntheta (j < ntheta, periodic). Node (i, j) is stored at
/// i * ntheta + j.
struct FieldGrid {
  double lambda = 0.0;
  GridSpec spec;
  std::vector<double> r;
  std::vector<double> theta;
  std::vector<FieldNode> values;

  const FieldNode& at(std::size_t i, std::size_t j) const { return values[i * theta.size() + j]; }
};

void validate_grid_spec(const GridSpec& spec);

/// Velocity and pressure of Psi = r^lambda psi(theta), p = r^(2(lambda-1)) P.
/// The profile is evaluated between its samples by trigonometric interpolation.
FieldGrid velocity_field(const SolutionProfile& profile, const GridSpec& spec);

struct EulerResidual {
  double div_norm = 0.0;
  double momentum_norm = 0.0;
};

/// Centered second-order differences of
///   div u          = (1/r) d_r(r u_r) + (1/r) d_theta u_theta
///   (u.grad u)_r   + d_r p = u_r d_r u_r + (u_theta/r) d_theta u_r - u_theta^2/r + d_r p
///   (u.grad u)_th  + ...   = u_r d_r u_th + (u_th/r) d_theta u_th + u_r u_th/r + (1/r) d_theta p
/// on interior radii. Max norms, scaled by max |u|/r and max |u|^2/r over the
/// grid so the numbers are comparable across profiles and radii.
EulerResidual euler_residual(const FieldGrid& field);

}  // namespace homeuler
