#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "homeuler/field.hpp"

namespace homeuler::cli {

enum ExitCode : int {
  exit_ok = 0,
  exit_no_solution = 2,  // NoSolution, a None classification, ClosureFailure
  exit_domain = 3,       // domain, validation and usage errors, ContinuumCase
  exit_tolerance = 4,    // ToleranceNotMet
};

struct Tolerances {
  double integration = 1e-12;  // dopri5 local error per unit step
  double quadrature = 1e-11;   // absolute period accuracy
  double closure = 1e-6;       // profile return mismatch, relative to amplitude
  double root = 1e-10;         // |T - 2 pi/n| in find
};

enum class Format { json, csv };

struct RunConfig {
  Tolerances tol;
  int scan_samples = 400;
  int profile_samples = 512;
  Format format = Format::json;
  std::string out;  // empty: stdout
  Orientation orientation = Orientation::standard;
  int jobs = 1;

  /// Throws DomainError unless every tolerance lies in [1e-13, 1e-3] and the
  /// counts are positive.
  void validate() const;
};

/// Runs one subcommand; data goes to `out` (or --out), diagnostics to `err`.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace homeuler::cli
