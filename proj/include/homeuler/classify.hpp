#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "homeuler/dynamics.hpp"
#include "homeuler/period.hpp"
#include "homeuler/profile.hpp"

namespace homeuler {

enum class ResultKind { none, finite, continuum };

std::string_view to_string(ResultKind kind);

/// Number of elliptic 2*pi-periodic solutions for a given (lambda, sign B).
/// The pure rotation at the extremal pressure always exists and is reported
/// separately through `extremal_rotation`.
struct ClassificationResult {
  ResultKind kind = ResultKind::none;
  std::vector<int> windings;  // finite only, ascending
  bool extremal_rotation = true;
  /// Levels where 2*pi/n grazed an end of the sampled period range (scan only).
  std::vector<int> boundary_grazing;

  int count() const { return static_cast<int>(windings.size()); }
  bool operator==(const ClassificationResult&) const = default;
};

enum class CountMode { table, scan };

struct ScanOptions {
  int samples = 400;
  double s_min = min_period_fraction;
  double s_max = max_period_fraction;
  /// Extra levels, log-spaced below s_min down to the smallest level the
  /// quadrature still resolves. For large lambda T approaches its boundary
  /// value only like s^(1/(2 lambda - 2)), so s >= 1e-6 alone misses crossings.
  int tail_samples = 60;
  double tol = 1e-11;
  int threads = 1;
};

/// Table mode evaluates the closed classification; scan mode samples the
/// period function and counts crossings of 2*pi/n.
ClassificationResult count_elliptic(double lambda, int bernoulli_sign, CountMode mode = CountMode::table,
                                    const ScanOptions& options = {});

/// Orbit whose period equals 2*pi/n, by bracketed root refinement on s.
EllipticOrbit find_periodic(double lambda, int bernoulli_sign, int n, double tol = 1e-10,
                            const ScanOptions& options = {});

struct ReconstructOptions {
  double tol = 1e-12;  // travel-time accuracy of the samples
  double closure_tol = 1e-6;
};

/// Samples the orbit through (x_plus, 0) on `samples` uniform intervals of
/// [0, 2*pi] and checks that it closes with n loops. At the center level
/// returns the constant rotation.
SolutionProfile reconstruct_profile(const Params& params, double pressure, int n, int samples,
                                    const ReconstructOptions& options = {});

/// Rotation / elliptic / hyperbolic (>= 2 zeros) / parabolic (one zero).
/// psi counts as zero below 1e-9 max|psi|.
ProfileType classify_profile(const SolutionProfile& profile);

/// theta -> psi(theta/lambda)^(1/lambda) at exponent 1/lambda, resampled on
/// [0, 2*pi]. Pressure and Bernoulli constant of the image are recovered from
/// the image profile. The source must be closed with min psi > 0.
SolutionProfile conjugate_dual(const SolutionProfile& profile);

/// Image of a closed orbit under the conjugacy: the dual level is found from
/// the mapped turning point and the curvature of the mapped profile there.
EllipticOrbit conjugate_orbit(const EllipticOrbit& orbit, double tol = 1e-10);

struct MongeAmpereCount {
  double lambda = 0.0;
  ClassificationResult result;
};

/// det D^2 u = |x|^alpha corresponds to lambda = 2 + alpha/2, B = +1.
MongeAmpereCount ma_count(double alpha);

}  // namespace homeuler
