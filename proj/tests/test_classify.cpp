#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "homeuler/classify.hpp"
#include "homeuler/errors.hpp"

using namespace homeuler;

namespace {

constexpr double pi = std::numbers::pi;

// Integers strictly inside (2, sqrt(2 lambda)), computed by brute force.
std::vector<int> expected_windings(double lambda) {
  std::vector<int> out;
  for (int n = 1; n < 100; ++n) {
    if (n > 2 && n < std::sqrt(2.0 * lambda)) out.push_back(n);
  }
  return out;
}

SolutionProfile linear_profile(double amplitude, int m = 256) {
  SolutionProfile p;
  p.lambda = 2.0;
  p.bernoulli = 1.0;
  p.pressure = 1.0 / 32 - 2.0 * amplitude * amplitude;  // x(1/2 - 2x) at x = 1/8 + A
  p.theta = uniform_angle_grid(static_cast<std::size_t>(m));
  for (double t : p.theta) {
    p.psi.push_back(0.125 + amplitude * std::cos(2 * t));
    p.psi_prime.push_back(-2.0 * amplitude * std::sin(2 * t));
  }
  return p;
}

double spread(const std::vector<double>& v) {
  const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
  return *hi - *lo;
}

}  // namespace

TEST_CASE("table classification") {
  auto r = count_elliptic(5.0, 1);
  CHECK(r.kind == ResultKind::finite);
  CHECK(r.count() == 1);
  CHECK(r.windings == std::vector<int>{3});
  CHECK(r.extremal_rotation);

  CHECK(count_elliptic(3.0, 1).kind == ResultKind::none);
  CHECK(count_elliptic(2.0, 1).kind == ResultKind::continuum);
  CHECK(count_elliptic(0.5, -1).kind == ResultKind::continuum);
  CHECK(count_elliptic(0.3, -1).kind == ResultKind::none);
  CHECK(count_elliptic(4.5, 1).kind == ResultKind::none);
  CHECK(count_elliptic(1.5, 1).kind == ResultKind::none);
  r = count_elliptic(12.5, 1);
  CHECK(r.windings == std::vector<int>{3, 4});
  CHECK(count_elliptic(8.0, 1).windings == std::vector<int>{3});  // 4 = sqrt(16) excluded
  CHECK(count_elliptic(8.0 + 1e-9, 1).windings == std::vector<int>{3, 4});

  for (double l = 1.05; l < 60.0; l += 0.37) {
    CAPTURE(l);
    CHECK(count_elliptic(l, 1).windings == expected_windings(l));
  }

  CHECK_THROWS_AS(count_elliptic(0.5, 1), DomainError);
  CHECK_THROWS_AS(count_elliptic(3.0, -1), DomainError);
  CHECK_THROWS_AS(count_elliptic(3.0, 0), DomainError);
  CHECK_THROWS_AS(count_elliptic(1.0, 1), DomainError);
}

TEST_CASE("scan classification agrees with the table") {
  for (double l : {1.1, 1.2, 1.5, 1.9, 2.0, 2.5, 3.0, 4.0, 4.5, 5.0, 6.0, 8.0, 12.5, 18.0}) {
    CAPTURE(l);
    const auto table = count_elliptic(l, 1, CountMode::table);
    const auto scan = count_elliptic(l, 1, CountMode::scan);
    CHECK(table.kind == scan.kind);
    CHECK(table.windings == scan.windings);
  }
  for (double l : {0.3, 0.5, 0.7, 0.9}) {
    CAPTURE(l);
    CHECK(count_elliptic(l, -1, CountMode::table) == count_elliptic(l, -1, CountMode::scan));
  }
  SUBCASE("closed-interval endpoints are reported as grazing") {
    // 2 pi / 3 is exactly the center limit at lambda = 9/2.
    const auto r = count_elliptic(4.5, 1, CountMode::scan);
    CHECK(r.kind == ResultKind::none);
    CHECK(std::count(r.boundary_grazing.begin(), r.boundary_grazing.end(), 3) == 1);
  }
  SUBCASE("threads do not change the scan") {
    ScanOptions o;
    o.threads = 3;
    CHECK(count_elliptic(12.5, 1, CountMode::scan, o) == count_elliptic(12.5, 1, CountMode::scan));
  }
}

TEST_CASE("find_periodic") {
  const auto o = find_periodic(5.0, 1, 3);
  CHECK(std::abs(o.period - 2.0 * pi / 3.0) <= 1e-9);
  CHECK(o.pressure > 0.0);
  CHECK(o.pressure < elliptic_center(o.params).extremal_pressure);
  CHECK(std::abs(period(o.params, o.pressure, PeriodMethod::flight, 1e-11) - 2.0 * pi / 3.0) < 1e-9);

  CHECK_THROWS_AS(find_periodic(5.0, 1, 2), NoSolution);
  CHECK_THROWS_AS(find_periodic(5.0, 1, 4), NoSolution);
  CHECK_THROWS_AS(find_periodic(2.0, 1, 2), ContinuumCase);
  CHECK_THROWS_AS(find_periodic(0.5, -1, 1), ContinuumCase);
  CHECK_THROWS_AS(find_periodic(3.0, 1, 0), DomainError);
  try {
    find_periodic(4.5, 1, 3);
    FAIL("expected NoSolution");
  } catch (const NoSolution& e) {
    CHECK(std::string(e.what()).find("boundary-grazing") != std::string::npos);
  }

  SUBCASE("every orbit found reconstructs to a solution") {
    for (double l : {5.0, 8.0, 12.5, 18.0}) {
      for (int n : count_elliptic(l, 1).windings) {
        CAPTURE(l);
        CAPTURE(n);
        const auto orb = find_periodic(l, 1, n);
        const auto prof = reconstruct_profile(orb.params, orb.pressure, n, 512);
        CHECK(is_closed(prof));
        CHECK(count_maxima(prof) == n);
        CHECK(prof.type == ProfileType::elliptic);
        // Near the boundary P is a tiny fraction of the terms it balances.
        const double hi = *std::max_element(prof.psi.begin(), prof.psi.end());
        CHECK(spread(pressure_residual_profile(l, prof)) <= 1e-9 * l * l * hi * hi);
      }
    }
  }
}

TEST_CASE("profile reconstruction") {
  SUBCASE("lambda = 5, n = 3") {
    const auto o = find_periodic(5.0, 1, 3);
    const auto p = reconstruct_profile(o.params, o.pressure, 3, 512);
    CHECK(p.winding == 3);
    CHECK(p.size() == 513);
    CHECK(*std::min_element(p.psi.begin(), p.psi.end()) > 0.0);
    CHECK(count_maxima(p) == 3);
    CHECK(std::abs(p.psi.back() - p.psi.front()) <= 1e-6 * o.x_plus);
    CHECK(p.psi.front() == doctest::Approx(o.x_plus).epsilon(1e-12));
  }
  SUBCASE("lambda = 2 linear solution") {
    const Params par{2.0, 1.0};
    const auto p = reconstruct_profile(par, 3.0 / 128, 2, 256);
    CHECK(aligned_distance(p, linear_profile(1.0 / 16)) < 1e-8);
    CHECK(p.type == ProfileType::elliptic);
  }
  SUBCASE("center gives the pure rotation") {
    const auto p = reconstruct_profile({2.0, 1.0}, 1.0 / 32, 1, 64);
    CHECK(p.type == ProfileType::rotation);
    for (double v : p.psi) CHECK(v == doctest::Approx(0.125).epsilon(1e-14));
  }
  SUBCASE("a level that is not 2 pi/n-periodic is rejected") {
    const Params par{5.0, 1.0};
    CHECK_THROWS_AS(reconstruct_profile(par, pressure_from_fraction(par, 0.5), 3, 256), ClosureFailure);
    const auto o = find_periodic(5.0, 1, 3);
    CHECK_THROWS_AS(reconstruct_profile(par, o.pressure, 2, 256), ClosureFailure);
  }
  CHECK_THROWS_AS(reconstruct_profile({2.0, 1.0}, 3.0 / 128, 2, 4), DomainError);
}

TEST_CASE("profile types") {
  auto make = [](double (*f)(double)) {
    SolutionProfile p;
    p.lambda = 2.0;
    p.theta = uniform_angle_grid(360);
    for (double t : p.theta) {
      p.psi.push_back(f(t));
      p.psi_prime.push_back(0.0);
    }
    return p;
  };
  CHECK(classify_profile(make([](double) { return 0.125; })) == ProfileType::rotation);
  CHECK(classify_profile(make([](double t) { return 0.125 + std::cos(2 * t) / 16; })) == ProfileType::elliptic);
  CHECK(classify_profile(make([](double t) { return std::sin(3 * t); })) == ProfileType::hyperbolic);
  // One tangential zero.
  CHECK(classify_profile(make([](double t) { return 1.0 - std::cos(t); })) == ProfileType::parabolic);
  // Two tangential zeros.
  CHECK(classify_profile(make([](double t) { return 1.0 - std::cos(2 * t); })) == ProfileType::hyperbolic);
  CHECK(classify_profile(make([](double t) { return -0.5 - 0.1 * std::cos(t); })) == ProfileType::elliptic);
}

TEST_CASE("conjugacy") {
  const auto src = linear_profile(1.0 / 16, 512);
  const auto dual = conjugate_dual(src);
  CHECK(dual.lambda == 0.5);
  SUBCASE("image is psi~ = sqrt(1/8 + A cos theta)") {
    for (std::size_t k = 0; k < dual.size(); k += 37) {
      CHECK(dual.psi[k] == doctest::Approx(std::sqrt(0.125 + std::cos(dual.theta[k]) / 16)).epsilon(1e-12));
    }
  }
  CHECK(dual.pressure == doctest::Approx(-1.0 / 32).epsilon(1e-9));
  CHECK(spread(pressure_residual_profile(0.5, dual)) < 1e-6);
  CHECK(dual.bernoulli < 0.0);
  CHECK(dual.winding == 1);
  CHECK(dual.type == ProfileType::elliptic);
  CHECK(aligned_distance(conjugate_dual(dual), src) < 1e-7);

  SUBCASE("the recovered Bernoulli constant matches the dual phase system") {
    const Params dp{0.5, dual.bernoulli};
    for (std::size_t k = 0; k < dual.size(); k += 50) {
      CHECK(pressure_hamiltonian(dp, {dual.psi[k], dual.psi_prime[k]}) == doctest::Approx(dual.pressure).epsilon(1e-9));
    }
  }
  SUBCASE("solutions map to solutions at lambda = 3 and 5") {
    for (double l : {3.0, 5.0}) {
      const Params p{l, 1.0};
      // A closed profile needs a 2 pi-periodic level; at lambda = 3 take the
      // center rotation, at lambda = 5 the n = 3 orbit.
      const auto prof = l == 5.0 ? reconstruct_profile(p, find_periodic(5.0, 1, 3).pressure, 3, 512)
                                 : reconstruct_profile(p, elliptic_center(p).extremal_pressure, 1, 64);
      const auto d = conjugate_dual(prof);
      CHECK(d.lambda == doctest::Approx(1.0 / l));
      CHECK(spread(pressure_residual_profile(d.lambda, d)) <= 1e-6 * std::abs(d.pressure));
    }
  }
  SUBCASE("orbit period law") {
    for (double l : {1.5, 2.0, 3.0, 5.0, 12.5}) {
      const Params p{l, 1.0};
      const auto o = elliptic_orbit(p, pressure_from_fraction(p, 0.4));
      const auto d = conjugate_orbit(o);
      CAPTURE(l);
      CHECK(d.params.lambda == doctest::Approx(1.0 / l));
      CHECK(d.params.bernoulli < 0.0);
      CHECK(d.x_plus == doctest::Approx(std::pow(o.x_plus, 1.0 / l)).epsilon(1e-10));
      CHECK(d.x_minus == doctest::Approx(std::pow(o.x_minus, 1.0 / l)).epsilon(1e-8));
      CHECK(std::abs(d.period - l * o.period) < 1e-7);
    }
    const auto d = conjugate_orbit(elliptic_orbit({2.0, 1.0}, 3.0 / 128));
    CHECK(std::abs(d.period - 2.0 * pi) < 1e-9);
    CHECK(d.pressure == doctest::Approx(-1.0 / 32).epsilon(1e-12));
  }
  SUBCASE("domain errors") {
    auto bad = src;
    for (auto& v : bad.psi) v -= 0.2;  // crosses zero
    CHECK_THROWS_AS(conjugate_dual(bad), DomainError);
    auto open = src;
    open.psi.back() += 0.01;
    CHECK_THROWS_AS(conjugate_dual(open), DomainError);
    auto one = src;
    one.lambda = 1.0;
    CHECK_THROWS_AS(conjugate_dual(one), DomainError);
  }
}

TEST_CASE("Monge-Ampere count") {
  auto m = ma_count(5.0);
  CHECK(m.lambda == 4.5);
  CHECK(m.result.kind == ResultKind::none);
  m = ma_count(6.0);
  CHECK(m.lambda == 5.0);
  CHECK(m.result.windings == std::vector<int>{3});
  m = ma_count(12.0);
  CHECK(m.lambda == 8.0);
  CHECK(m.result.count() == 1);
  m = ma_count(21.0);
  CHECK(m.lambda == 12.5);
  CHECK(m.result.windings == std::vector<int>{3, 4});
  CHECK(ma_count(0.0).result.kind == ResultKind::continuum);
  for (double a : {0.5, 3.0, 4.99}) CHECK(ma_count(a).result.kind == ResultKind::none);
  CHECK_THROWS_AS(ma_count(-2.0), DomainError);
  CHECK_THROWS_AS(ma_count(-3.0), DomainError);
  CHECK_THROWS_AS(ma_count(NAN), DomainError);

  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> alpha(-2.0, 40.0);
  for (int i = 0; i < 200; ++i) {
    double a = alpha(rng);
    if (a == -2.0) continue;
    const auto r = ma_count(a);
    CHECK(2.0 * r.lambda == 4.0 + a);
    CHECK(r.result == count_elliptic(2.0 + a / 2.0, 1, CountMode::table));
  }
}
