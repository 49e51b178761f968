#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>

#include "homeuler/errors.hpp"

namespace homeuler::ode {

using State = std::array<double, 2>;

struct StepPoint {
  double t = 0.0;
  State z{};
  State dz{};
};

// Dormand-Prince 5(4) tableau.
namespace dp5 {
inline constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
inline constexpr double a21 = 1.0 / 5;
inline constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
inline constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
inline constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                        a54 = -212.0 / 729;
inline constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                        a64 = 49.0 / 176, a65 = -5103.0 / 18656;
inline constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                        b5 = -2187.0 / 6784, b6 = 11.0 / 84;
// b - b_hat (fourth-order embedded weights)
inline constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                        e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;
}  // namespace dp5

/// Quintic Hermite interpolation between two step points. `a2` and `b2` are
/// the second derivatives at the ends. Sixth-order accurate.
inline State hermite_quintic(double t, const StepPoint& a, const StepPoint& b, const State& a2,
                             const State& b2) {
  const double h = b.t - a.t;
  const double s = (t - a.t) / h;
  const double s2 = s * s, s3 = s2 * s, s4 = s3 * s, s5 = s4 * s;
  const double h0 = 1 - 10 * s3 + 15 * s4 - 6 * s5;
  const double h1 = s - 6 * s3 + 8 * s4 - 3 * s5;
  const double h2 = 0.5 * (s2 - 3 * s3 + 3 * s4 - s5);
  const double h3 = 0.5 * (s3 - 2 * s4 + s5);
  const double h4 = -4 * s3 + 7 * s4 - 3 * s5;
  const double h5 = 10 * s3 - 15 * s4 + 6 * s5;
  State out{};
  for (std::size_t i = 0; i < 2; ++i) {
    out[i] = h0 * a.z[i] + h1 * h * a.dz[i] + h2 * h * h * a2[i] + h3 * h * h * b2[i] +
             h4 * h * b.dz[i] + h5 * b.z[i];
  }
  return out;
}

struct Dopri5Options {
  double tol = 1e-10;
  std::size_t max_steps = 5'000'000;
  double initial_step = 0.0;  // 0: automatic
};

/// Integrates z' = rhs(z) from t0 to t_end with error per unit step control:
///   |err_i| <= h * max(tol |z_n,i|, tol |z_{n+1},i|, 128 eps |z_i'|) for each i.
/// `observer(prev, cur)` runs after every accepted step; returning false stops
/// the integration. Right-hand sides may throw DomainError for trial stages
/// outside the domain: the step is retried with a smaller size.
template <class Rhs, class Observer>
void dopri5(Rhs&& rhs, double t0, State z0, double t_end, const Dopri5Options& opt,
            Observer&& observer) {
  using namespace dp5;
  auto norm = [](const State& v) { return std::max(std::abs(v[0]), std::abs(v[1])); };
  auto axpy = [](const State& z, double h, std::initializer_list<std::pair<double, const State*>> terms) {
    State out = z;
    for (const auto& [coef, k] : terms) {
      out[0] += h * coef * (*k)[0];
      out[1] += h * coef * (*k)[1];
    }
    return out;
  };

  StepPoint cur{t0, z0, rhs(z0)};
  const double span = t_end - t0;
  if (!(span > 0.0)) return;

  double h = opt.initial_step;
  if (h <= 0.0) {
    const double scale = std::max(norm(cur.z), std::numeric_limits<double>::min());
    const double speed = norm(cur.dz);
    h = speed > 0.0 ? 0.01 * scale / speed : 0.01 * span;
    h = std::min({h, 0.01 * span, 0.1});
  }

  std::size_t steps = 0;
  int domain_retries = 0;
  while (cur.t < t_end) {
    if (++steps > opt.max_steps) throw ToleranceNotMet("dopri5: step budget exhausted");
    h = std::min(h, t_end - cur.t);
    if (cur.t + h == cur.t) throw ToleranceNotMet("dopri5: step size underflow");

    State k1 = cur.dz, k2, k3, k4, k5, k6, k7, z_new;
    try {
      k2 = rhs(axpy(cur.z, h, {{a21, &k1}}));
      k3 = rhs(axpy(cur.z, h, {{a31, &k1}, {a32, &k2}}));
      k4 = rhs(axpy(cur.z, h, {{a41, &k1}, {a42, &k2}, {a43, &k3}}));
      k5 = rhs(axpy(cur.z, h, {{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}}));
      k6 = rhs(axpy(cur.z, h, {{a61, &k1}, {a62, &k2}, {a63, &k3}, {a64, &k4}, {a65, &k5}}));
      z_new = axpy(cur.z, h, {{b1, &k1}, {b3, &k3}, {b4, &k4}, {b5, &k5}, {b6, &k6}});
      k7 = rhs(z_new);
    } catch (const DomainError&) {
      if (++domain_retries > 200) throw;
      h *= 0.25;
      continue;
    }

    // Componentwise relative control: a small component (x near its lower
    // turning point) keeps its own relative accuracy. The rounding term is the
    // noise level of the error estimate itself; it only binds where
    // |z_i'|/|z_i| exceeds tol/eps.
    double ratio = 0.0;
    for (std::size_t i = 0; i < 2; ++i) {
      const double err = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
      const double scale =
          std::max({opt.tol * std::abs(cur.z[i]), opt.tol * std::abs(z_new[i]),
                    128.0 * std::numeric_limits<double>::epsilon() * std::max(std::abs(k1[i]), std::abs(k7[i])),
                    std::numeric_limits<double>::min()});
      ratio = std::max(ratio, std::abs(err) / (h * scale));
    }
    if (!std::isfinite(ratio)) {
      h *= 0.25;
      continue;
    }
    const double factor = ratio == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(ratio, -0.25), 0.2, 5.0);
    if (ratio <= 1.0) {
      StepPoint next{cur.t + h, z_new, k7};
      if (t_end - next.t <= 4 * std::numeric_limits<double>::epsilon() * std::abs(t_end)) {
        next.t = t_end;
      }
      domain_retries = 0;
      const bool go_on = observer(cur, next);
      cur = next;
      if (!go_on) return;
    }
    h *= factor;
  }
}

}  // namespace homeuler::ode
