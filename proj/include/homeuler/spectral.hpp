#pragma once

#include <complex>
#include <span>
#include <vector>

namespace homeuler::spectral {

/// Trigonometric interpolant of M equispaced samples of a 2*pi-periodic
/// function (samples at theta_k = 2*pi*k/M).
class TrigInterpolant {
 public:
  explicit TrigInterpolant(std::span<const double> samples);

  double value(double theta) const;
  double derivative(double theta) const;
  std::size_t size() const { return size_; }

 private:
  std::size_t size_;
  double mean_;
  // cos/sin amplitudes for modes 1..K; the Nyquist mode (even M) is folded
  // into cos_[K-1] with half weight already applied.
  std::vector<double> cos_;
  std::vector<double> sin_;
};

/// d/dtheta of periodic samples via FFT; the Nyquist mode is dropped.
std::vector<double> derivative(std::span<const double> samples);

/// Finite-difference derivative on a non-periodic uniform grid with spacing
/// h. Seven-point stencils, shifted one-sided near the ends (order 6).
std::vector<double> finite_difference_derivative(std::span<const double> samples, double h);

}  // namespace homeuler::spectral
