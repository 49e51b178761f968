#include <doctest.h>

#include <cmath>
#include <random>

#include "homeuler/classify.hpp"
#include "homeuler/errors.hpp"
#include "homeuler/field.hpp"

using namespace homeuler;

namespace {

SolutionProfile rotation() {
  SolutionProfile p;
  p.lambda = 2.0;
  p.bernoulli = 1.0;
  p.pressure = 1.0 / 32;
  p.type = ProfileType::rotation;
  p.theta = uniform_angle_grid(64);
  p.psi.assign(p.theta.size(), 0.125);
  p.psi_prime.assign(p.theta.size(), 0.0);
  return p;
}

SolutionProfile linear(int m = 256) {
  SolutionProfile p;
  p.lambda = 2.0;
  p.bernoulli = 1.0;
  p.pressure = 3.0 / 128;
  p.winding = 2;
  p.theta = uniform_angle_grid(static_cast<std::size_t>(m));
  for (double t : p.theta) {
    p.psi.push_back(0.125 + std::cos(2 * t) / 16);
    p.psi_prime.push_back(-std::sin(2 * t) / 8);
  }
  return p;
}

const SolutionProfile& lambda5_n3() {
  static const SolutionProfile p = [] {
    const auto o = find_periodic(5.0, 1, 3);
    return reconstruct_profile(o.params, o.pressure, 3, 512);
  }();
  return p;
}

}  // namespace

TEST_CASE("velocity field values") {
  const auto f = velocity_field(rotation(), {1.0, 2.0, 5, 8});
  CHECK(f.r.front() == 1.0);
  CHECK(f.r.back() == 2.0);
  CHECK(f.theta.size() == 8);
  for (std::size_t j = 0; j < 8; ++j) {
    CHECK(f.at(0, j).u_r == 0.0);
    CHECK(f.at(0, j).u_theta == doctest::Approx(-0.25).epsilon(1e-15));
    CHECK(f.at(0, j).p == doctest::Approx(1.0 / 32).epsilon(1e-15));
    // Homogeneity: r^(lambda-1) = 2 for velocity, r^(2(lambda-1)) = 4 for pressure.
    CHECK(f.at(4, j).u_theta == doctest::Approx(2.0 * f.at(0, j).u_theta).epsilon(1e-15));
    CHECK(f.at(4, j).p == doctest::Approx(4.0 * f.at(0, j).p).epsilon(1e-15));
  }
  const auto g = velocity_field(linear(), {1.0, 2.0, 3, 16});
  CHECK(std::abs(g.at(0, 0).u_r) < 1e-15);
  CHECK(g.at(0, 0).u_theta == doctest::Approx(-3.0 / 8).epsilon(1e-14));
  CHECK(g.at(0, 0).p == doctest::Approx(3.0 / 128).epsilon(1e-15));
  CHECK(g.at(2, 3).u_r == doctest::Approx(2.0 * g.at(0, 3).u_r).epsilon(1e-14));

  SUBCASE("flipped orientation reverses u and keeps p") {
    GridSpec spec{1.0, 2.0, 3, 16, Orientation::flipped};
    const auto h = velocity_field(linear(), spec);
    for (std::size_t k = 0; k < h.values.size(); ++k) {
      CHECK(h.values[k].u_r == -g.values[k].u_r);
      CHECK(h.values[k].u_theta == -g.values[k].u_theta);
      CHECK(h.values[k].p == g.values[k].p);
    }
    const auto a = euler_residual(h), b = euler_residual(g);
    CHECK(a.momentum_norm == doctest::Approx(b.momentum_norm));
  }
}

TEST_CASE("grid validation") {
  CHECK_THROWS_AS(velocity_field(rotation(), {0.0, 2.0, 16, 16}), DomainError);
  CHECK_THROWS_AS(velocity_field(rotation(), {1.0, 1.0, 16, 16}), DomainError);
  CHECK_THROWS_AS(velocity_field(rotation(), {1.0, 2.0, 2, 16}), DomainError);
  auto open = linear();
  open.psi.back() += 0.01;
  CHECK_THROWS_AS(velocity_field(open, {1.0, 2.0, 16, 16}), DomainError);
}

TEST_CASE("Euler residuals") {
  SUBCASE("exact rotation") {
    const auto r = euler_residual(velocity_field(rotation(), {1.0, 2.0, 16, 64}));
    CHECK(r.div_norm < 1e-12);
    CHECK(r.momentum_norm < 1e-12);
  }
  SUBCASE("second-order convergence for lambda = 5, n = 3") {
    double prev_div = 0.0, prev_mom = 0.0;
    for (int k = 0; k < 4; ++k) {
      const auto r = euler_residual(velocity_field(lambda5_n3(), {1.0, 1.5, 16 << k, 64 << k}));
      if (k > 0) {
        CAPTURE(k);
        CHECK(prev_mom / r.momentum_norm > 3.5);
        CHECK(prev_mom / r.momentum_norm < 4.5);
        CHECK(prev_div / r.div_norm > 3.5);
        CHECK(prev_div / r.div_norm < 4.5);
      }
      prev_div = r.div_norm;
      prev_mom = r.momentum_norm;
    }
  }
  SUBCASE("noisy profile is not a solution") {
    auto p = lambda5_n3();
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-0.01, 0.01);
    for (std::size_t k = 0; k + 1 < p.size(); ++k) p.psi[k] *= 1.0 + u(rng);
    p.psi.back() = p.psi.front();
    double prev = 0.0;
    for (int k = 0; k < 3; ++k) {
      const auto r = euler_residual(velocity_field(p, {1.0, 1.5, 16 << k, 64 << k}));
      CHECK(r.momentum_norm > 1e-2);
      CHECK(r.momentum_norm > prev);  // no convergence
      prev = r.momentum_norm;
    }
  }
  SUBCASE("momentum residual is smallest at the recorded pressure") {
    const GridSpec g{1.0, 1.5, 128, 512};
    auto p = lambda5_n3();
    const double p0 = p.pressure;
    double best = INFINITY, best_shift = NAN;
    for (int i = -10; i <= 10; ++i) {
      p.pressure = p0 * (1.0 + 0.01 * i);
      const double m = euler_residual(velocity_field(p, g)).momentum_norm;
      if (m < best) {
        best = m;
        best_shift = 0.01 * i;
      }
    }
    CHECK(best_shift == 0.0);
  }
}
