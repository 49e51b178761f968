#include "homeuler/spectral.hpp"

#include <fftw3.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <mutex>
#include <numbers>

#include "homeuler/errors.hpp"

namespace homeuler::spectral {

namespace {

// The FFTW planner is not reentrant; execution is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

std::vector<std::complex<double>> forward(std::span<const double> samples) {
  const int n = static_cast<int>(samples.size());
  std::vector<double> in(samples.begin(), samples.end());
  std::vector<std::complex<double>> out(samples.size() / 2 + 1);
  fftw_plan plan;
  {
    std::lock_guard lock(planner_mutex());
    plan = fftw_plan_dft_r2c_1d(n, in.data(), reinterpret_cast<fftw_complex*>(out.data()),
                                FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(plan);
  }
  return out;
}

std::vector<double> backward(std::vector<std::complex<double>> coeffs, std::size_t n) {
  std::vector<double> out(n);
  fftw_plan plan;
  {
    std::lock_guard lock(planner_mutex());
    plan = fftw_plan_dft_c2r_1d(static_cast<int>(n), reinterpret_cast<fftw_complex*>(coeffs.data()),
                                out.data(), FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(plan);
  }
  for (auto& v : out) v /= static_cast<double>(n);
  return out;
}

// Fornberg's recursion: weights of the first derivative at z on nodes x.
std::array<double, 7> first_derivative_weights(double z, const std::array<double, 7>& x) {
  constexpr int n = 6;
  double c[7][2] = {};
  double c1 = 1.0, c4 = x[0] - z;
  c[0][0] = 1.0;
  for (int i = 1; i <= n; ++i) {
    const int mn = std::min(i, 1);
    double c2 = 1.0;
    const double c5 = c4;
    c4 = x[i] - z;
    for (int j = 0; j < i; ++j) {
      const double c3 = x[i] - x[j];
      c2 *= c3;
      if (j == i - 1) {
        for (int k = mn; k >= 1; --k) c[i][k] = c1 * (k * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
        c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
      }
      for (int k = mn; k >= 1; --k) c[j][k] = (c4 * c[j][k] - k * c[j][k - 1]) / c3;
      c[j][0] = c4 * c[j][0] / c3;
    }
    c1 = c2;
  }
  std::array<double, 7> w{};
  for (int i = 0; i <= n; ++i) w[i] = c[i][1];
  return w;
}

}  // namespace

TrigInterpolant::TrigInterpolant(std::span<const double> samples) : size_(samples.size()) {
  if (size_ < 2) throw DomainError("trigonometric interpolation needs at least two samples");
  const auto c = forward(samples);
  const double n = static_cast<double>(size_);
  mean_ = c[0].real() / n;
  const std::size_t modes = size_ / 2;
  cos_.resize(modes);
  sin_.resize(modes);
  for (std::size_t k = 1; k <= modes; ++k) {
    const bool nyquist = (size_ % 2 == 0) && k == modes;
    cos_[k - 1] = (nyquist ? 1.0 : 2.0) * c[k].real() / n;
    sin_[k - 1] = nyquist ? 0.0 : -2.0 * c[k].imag() / n;
  }
}

double TrigInterpolant::value(double theta) const {
  double sum = mean_;
  for (std::size_t k = 1; k <= cos_.size(); ++k) {
    const double a = static_cast<double>(k) * theta;
    sum += cos_[k - 1] * std::cos(a) + sin_[k - 1] * std::sin(a);
  }
  return sum;
}

double TrigInterpolant::derivative(double theta) const {
  double sum = 0.0;
  const bool even = size_ % 2 == 0;
  for (std::size_t k = 1; k <= cos_.size(); ++k) {
    if (even && k == cos_.size()) break;
    const double kk = static_cast<double>(k);
    sum += kk * (-cos_[k - 1] * std::sin(kk * theta) + sin_[k - 1] * std::cos(kk * theta));
  }
  return sum;
}

std::vector<double> derivative(std::span<const double> samples) {
  const std::size_t n = samples.size();
  if (n < 2) throw DomainError("spectral derivative needs at least two samples");
  auto c = forward(samples);
  for (std::size_t k = 0; k < c.size(); ++k) {
    c[k] *= std::complex<double>(0.0, static_cast<double>(k));
  }
  if (n % 2 == 0) c.back() = 0.0;
  return backward(std::move(c), n);
}

std::vector<double> finite_difference_derivative(std::span<const double> samples, double h) {
  const std::size_t n = samples.size();
  if (n < 7) throw DomainError("finite-difference derivative needs at least seven samples");
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t start = std::min(i >= 3 ? i - 3 : 0, n - 7);
    std::array<double, 7> nodes{};
    for (std::size_t j = 0; j < 7; ++j) nodes[j] = static_cast<double>(start + j) - static_cast<double>(i);
    const auto w = first_derivative_weights(0.0, nodes);
    double d = 0.0;
    for (std::size_t j = 0; j < 7; ++j) d += w[j] * samples[start + j];
    out[i] = d / h;
  }
  return out;
}

}  // namespace homeuler::spectral
