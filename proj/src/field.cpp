#include "homeuler/field.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <span>

#include "homeuler/errors.hpp"
#include "homeuler/spectral.hpp"

namespace homeuler {

void validate_grid_spec(const GridSpec& spec) {
  if (!(spec.r_min > 0.0) || !std::isfinite(spec.r_min)) throw DomainError("field grid needs r_min > 0");
  if (!(spec.r_max > spec.r_min) || !std::isfinite(spec.r_max)) throw DomainError("field grid needs r_max > r_min");
  if (spec.nr < 3 || spec.ntheta < 4) throw DomainError("field grid needs nr >= 3 and ntheta >= 4");
}

FieldGrid velocity_field(const SolutionProfile& profile, const GridSpec& spec) {
  validate_profile_grid(profile);
  validate_grid_spec(spec);
  if (!is_closed(profile)) throw DomainError("field reconstruction needs a closed profile");

  const std::size_t m = profile.periodic_size();
  const spectral::TrigInterpolant psi(std::span(profile.psi).first(m));
  const spectral::TrigInterpolant dpsi(std::span(profile.psi_prime).first(m));

  FieldGrid f;
  f.lambda = profile.lambda;
  f.spec = spec;
  const auto nr = static_cast<std::size_t>(spec.nr);
  const auto nt = static_cast<std::size_t>(spec.ntheta);
  f.r.resize(nr);
  const double dr = (spec.r_max - spec.r_min) / static_cast<double>(nr - 1);
  for (std::size_t i = 0; i < nr; ++i) f.r[i] = spec.r_min + dr * static_cast<double>(i);
  f.r.back() = spec.r_max;
  f.theta.resize(nt);
  for (std::size_t j = 0; j < nt; ++j) {
    f.theta[j] = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(nt);
  }

  std::vector<double> psi_j(nt), dpsi_j(nt);
  for (std::size_t j = 0; j < nt; ++j) {
    psi_j[j] = psi.value(f.theta[j]);
    dpsi_j[j] = dpsi.value(f.theta[j]);
  }
  const double l = profile.lambda;
  const double sign = spec.orientation == Orientation::standard ? 1.0 : -1.0;
  f.values.resize(nr * nt);
  for (std::size_t i = 0; i < nr; ++i) {
    const double ru = std::pow(f.r[i], l - 1.0);
    const double rp = std::pow(f.r[i], 2.0 * (l - 1.0));
    for (std::size_t j = 0; j < nt; ++j) {
      f.values[i * nt + j] = {sign * ru * dpsi_j[j], -sign * l * ru * psi_j[j], rp * profile.pressure};
    }
  }
  return f;
}

EulerResidual euler_residual(const FieldGrid& f) {
  const std::size_t nr = f.r.size(), nt = f.theta.size();
  if (nr < 3 || nt < 4 || f.values.size() != nr * nt) throw DomainError("malformed field grid");
  const double dr = f.r[1] - f.r[0];
  const double dt = 2.0 * std::numbers::pi / static_cast<double>(nt);

  double u_scale = 0.0, m_scale = 0.0;
  for (std::size_t i = 0; i < nr; ++i) {
    for (std::size_t j = 0; j < nt; ++j) {
      const FieldNode& v = f.at(i, j);
      const double speed2 = v.u_r * v.u_r + v.u_theta * v.u_theta;
      u_scale = std::max(u_scale, std::sqrt(speed2) / f.r[i]);
      m_scale = std::max(m_scale, speed2 / f.r[i]);
    }
  }

  EulerResidual res;
  for (std::size_t i = 1; i + 1 < nr; ++i) {
    const double r = f.r[i];
    for (std::size_t j = 0; j < nt; ++j) {
      const FieldNode& c = f.at(i, j);
      const FieldNode& rp = f.at(i + 1, j);
      const FieldNode& rm = f.at(i - 1, j);
      const FieldNode& tp = f.at(i, (j + 1) % nt);
      const FieldNode& tm = f.at(i, (j + nt - 1) % nt);

      const double d_r_rur = (f.r[i + 1] * rp.u_r - f.r[i - 1] * rm.u_r) / (2.0 * dr);
      const double d_r_ur = (rp.u_r - rm.u_r) / (2.0 * dr);
      const double d_r_ut = (rp.u_theta - rm.u_theta) / (2.0 * dr);
      const double d_r_p = (rp.p - rm.p) / (2.0 * dr);
      const double d_t_ur = (tp.u_r - tm.u_r) / (2.0 * dt);
      const double d_t_ut = (tp.u_theta - tm.u_theta) / (2.0 * dt);
      const double d_t_p = (tp.p - tm.p) / (2.0 * dt);

      const double div = (d_r_rur + d_t_ut) / r;
      const double mom_r = c.u_r * d_r_ur + c.u_theta * d_t_ur / r - c.u_theta * c.u_theta / r + d_r_p;
      const double mom_t = c.u_r * d_r_ut + c.u_theta * d_t_ut / r + c.u_r * c.u_theta / r + d_t_p / r;
      res.div_norm = std::max(res.div_norm, std::abs(div));
      res.momentum_norm = std::max({res.momentum_norm, std::abs(mom_r), std::abs(mom_t)});
    }
  }
  if (u_scale > 0.0) res.div_norm /= u_scale;
  if (m_scale > 0.0) res.momentum_norm /= m_scale;
  return res;
}

}  // namespace homeuler
