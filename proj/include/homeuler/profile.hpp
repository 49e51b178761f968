#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace homeuler {

enum class ProfileType { elliptic, hyperbolic, parabolic, rotation };

std::string_view to_string(ProfileType type);
ProfileType profile_type_from_string(std::string_view name);

/// Angular profile theta -> (psi, psi') sampled on the uniform grid
/// theta_k = 2*pi*k/M, k = 0..M (the last sample repeats theta = 2*pi).
struct SolutionProfile {
  double lambda = 0.0;
  double bernoulli = 0.0;
  double pressure = 0.0;
  int winding = 1;
  std::vector<double> theta;
  std::vector<double> psi;
  std::vector<double> psi_prime;
  ProfileType type = ProfileType::elliptic;

  std::size_t size() const { return theta.size(); }
  /// Number of distinct grid points (the repeated 2*pi endpoint excluded).
  std::size_t periodic_size() const { return theta.empty() ? 0 : theta.size() - 1; }
};

/// Uniform grid on [0, 2*pi] with `intervals` steps (intervals + 1 points).
std::vector<double> uniform_angle_grid(std::size_t intervals);

/// Throws DomainError unless the profile sits on a uniform [0, 2*pi] grid
/// with matching array lengths and at least 8 intervals.
void validate_profile_grid(const SolutionProfile& profile);

/// Both psi and psi' return to their starting values within
/// `relative_tol` of the profile's amplitude.
bool is_closed(const SolutionProfile& profile, double relative_tol = 1e-6);

/// Local maxima of psi on [0, 2*pi), detected from + to - sign changes of psi'.
/// Cyclic for closed profiles.
int count_maxima(const SolutionProfile& profile);

/// Sup-norm distance between two closed profiles after aligning both so
/// their argmax of psi sits at theta = 0.
double aligned_distance(const SolutionProfile& a, const SolutionProfile& b);

}  // namespace homeuler
