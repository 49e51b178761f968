#include <string>

#include "homeuler/cli.hpp"
#include "homeuler/errors.hpp"

namespace homeuler::cli {

namespace {

void check_tolerance(const char* name, double v) {
  if (!(v >= 1e-13 && v <= 1e-3)) {
    throw DomainError(std::string(name) + " tolerance must lie in [1e-13, 1e-3], got " + std::to_string(v));
  }
}

}  // namespace

void RunConfig::validate() const {
  check_tolerance("integration", tol.integration);
  check_tolerance("quadrature", tol.quadrature);
  check_tolerance("closure", tol.closure);
  check_tolerance("root", tol.root);
  if (scan_samples < 2) throw DomainError("scan samples must be at least 2");
  if (profile_samples < 8) throw DomainError("profile samples must be at least 8");
  if (jobs < 1) throw DomainError("jobs must be at least 1");
}

}  // namespace homeuler::cli
