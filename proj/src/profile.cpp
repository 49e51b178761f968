#include "homeuler/profile.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <boost/math/tools/roots.hpp>

#include "homeuler/errors.hpp"
#include "homeuler/spectral.hpp"

namespace homeuler {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

double max_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

// Location of the global maximum of a closed profile, refined on the
// trigonometric interpolant.
double argmax_angle(const SolutionProfile& p, const spectral::TrigInterpolant& psi) {
  const std::size_t m = p.periodic_size();
  const auto it = std::max_element(p.psi.begin(), p.psi.begin() + static_cast<std::ptrdiff_t>(m));
  const double h = two_pi / static_cast<double>(m);
  const double t0 = p.theta[static_cast<std::size_t>(it - p.psi.begin())];
  double lo = t0 - h, hi = t0 + h;
  const double dlo = psi.derivative(lo), dhi = psi.derivative(hi);
  if (!(dlo > 0.0 && dhi < 0.0)) return t0;
  boost::uintmax_t iters = 200;
  const auto r = boost::math::tools::toms748_solve(
      [&](double t) { return psi.derivative(t); }, lo, hi, dlo, dhi,
      boost::math::tools::eps_tolerance<double>(50), iters);
  return 0.5 * (r.first + r.second);
}

}  // namespace

std::string_view to_string(ProfileType type) {
  switch (type) {
    case ProfileType::elliptic: return "elliptic";
    case ProfileType::hyperbolic: return "hyperbolic";
    case ProfileType::parabolic: return "parabolic";
    case ProfileType::rotation: return "rotation";
  }
  return "elliptic";
}

ProfileType profile_type_from_string(std::string_view name) {
  if (name == "elliptic") return ProfileType::elliptic;
  if (name == "hyperbolic") return ProfileType::hyperbolic;
  if (name == "parabolic") return ProfileType::parabolic;
  if (name == "rotation") return ProfileType::rotation;
  throw DomainError("unknown profile type '" + std::string(name) + "'");
}

std::vector<double> uniform_angle_grid(std::size_t intervals) {
  std::vector<double> theta(intervals + 1);
  for (std::size_t k = 0; k <= intervals; ++k) {
    theta[k] = two_pi * static_cast<double>(k) / static_cast<double>(intervals);
  }
  return theta;
}

void validate_profile_grid(const SolutionProfile& profile) {
  const std::size_t n = profile.theta.size();
  if (n < 9) throw DomainError("profile needs at least 8 grid intervals");
  if (profile.psi.size() != n || profile.psi_prime.size() != n) {
    throw DomainError("profile arrays have mismatched lengths");
  }
  const double h = two_pi / static_cast<double>(n - 1);
  for (std::size_t k = 0; k < n; ++k) {
    if (std::abs(profile.theta[k] - h * static_cast<double>(k)) > 1e-9) {
      throw DomainError("profile grid must be uniform on [0, 2*pi]");
    }
  }
}

bool is_closed(const SolutionProfile& profile, double relative_tol) {
  if (profile.size() < 2) return false;
  const double scale = std::max({max_abs(profile.psi), max_abs(profile.psi_prime),
                                 std::numeric_limits<double>::min()});
  return std::abs(profile.psi.back() - profile.psi.front()) <= relative_tol * scale &&
         std::abs(profile.psi_prime.back() - profile.psi_prime.front()) <= relative_tol * scale;
}

int count_maxima(const SolutionProfile& profile) {
  const auto& d = profile.psi_prime;
  if (d.size() < 3) return 0;
  const double quiet = 1e-9 * std::max({max_abs(d), max_abs(profile.psi),
                                        std::numeric_limits<double>::min()});
  auto sign = [&](double v) { return std::abs(v) <= quiet ? 0 : (v > 0 ? 1 : -1); };
  const bool closed = is_closed(profile);
  const std::size_t n = closed ? profile.periodic_size() : d.size();

  // Collapse the sign sequence, skipping zeros, and count + -> - transitions.
  std::vector<int> signs;
  for (std::size_t k = 0; k < n; ++k) {
    const int s = sign(d[k]);
    if (s != 0 && (signs.empty() || signs.back() != s)) signs.push_back(s);
  }
  if (signs.empty()) return 0;
  int count = 0;
  for (std::size_t k = 1; k < signs.size(); ++k) count += (signs[k - 1] > 0 && signs[k] < 0);
  if (closed) {
    if (signs.size() > 1 && signs.back() > 0 && signs.front() < 0) ++count;
  } else if (sign(d.front()) == 0 && signs.front() < 0) {
    ++count;  // open arc starting at a maximum
  }
  return count;
}

double aligned_distance(const SolutionProfile& a, const SolutionProfile& b) {
  validate_profile_grid(a);
  validate_profile_grid(b);
  const std::size_t ma = a.periodic_size();
  const std::size_t mb = b.periodic_size();
  const spectral::TrigInterpolant pa(std::span(a.psi).first(ma));
  const spectral::TrigInterpolant pb(std::span(b.psi).first(mb));
  const double shift_a = argmax_angle(a, pa);
  const double shift_b = argmax_angle(b, pb);
  const std::size_t m = std::max(ma, mb);
  double dist = 0.0;
  for (std::size_t k = 0; k < m; ++k) {
    const double t = two_pi * static_cast<double>(k) / static_cast<double>(m);
    dist = std::max(dist, std::abs(pa.value(t + shift_a) - pb.value(t + shift_b)));
  }
  return dist;
}

}  // namespace homeuler
