#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <numbers>
#include <ostream>
#include <thread>

#include <CLI11.hpp>

#include "homeuler/classify.hpp"
#include "homeuler/cli.hpp"
#include "homeuler/errors.hpp"
#include "homeuler/field.hpp"
#include "homeuler/serialize.hpp"

namespace homeuler::cli {

namespace {

using io::Json;

constexpr const char* version = "0.1.0";
constexpr double two_pi = 2.0 * std::numbers::pi;

struct Inputs {
  double lambda = 0.0;
  double bernoulli = 0.0;
  std::string mode = "table";
  double pressure = 0.0;
  double pressure_frac = 0.0;
  std::string method = "quadrature";
  int samples = 0;
  double s_min = 1e-3;
  double s_max = 1.0 - 1e-3;
  std::string spacing = "uniform";
  int n = 0;
  std::string in;
  double alpha = 0.0;
  GridSpec grid;
  bool check_residual = false;
  double lambda_min = 0.0, lambda_max = 0.0, step = 0.0;
};

int sign_of(double b) {
  if (b == 1.0) return 1;
  if (b == -1.0) return -1;
  throw DomainError("--bernoulli must be +1 or -1 here");
}

Json meta(const RunConfig& cfg) {
  Json t;
  t["integration"] = cfg.tol.integration;
  t["quadrature"] = cfg.tol.quadrature;
  t["closure"] = cfg.tol.closure;
  t["root"] = cfg.tol.root;
  Json m;
  m["version"] = version;
  m["tolerances"] = std::move(t);
  m["scan_samples"] = cfg.scan_samples;
  m["profile_samples"] = cfg.profile_samples;
  return m;
}

ScanOptions scan_options(const RunConfig& cfg) {
  ScanOptions o;
  o.samples = cfg.scan_samples;
  o.tol = cfg.tol.quadrature;
  o.threads = cfg.jobs;
  return o;
}

class Runner {
 public:
  Runner(const RunConfig& cfg, const Inputs& in, std::ostream& out) : cfg_(cfg), in_(in), out_(out) {}

  int classify(bool scan) {
    require_json();
    const auto r = count_elliptic(in_.lambda, sign_of(in_.bernoulli), scan ? CountMode::scan : CountMode::table,
                                  scan_options(cfg_));
    Json j = io::to_json(r);
    j["lambda"] = in_.lambda;
    j["bernoulli"] = in_.bernoulli;
    j["mode"] = scan ? "scan" : "table";
    j["extremal_rotation"] = r.extremal_rotation;
    return finish(j, r.kind == ResultKind::none ? exit_no_solution : exit_ok);
  }

  int period(bool by_fraction, bool flight) {
    require_json();
    const Params p = Params::make(in_.lambda, in_.bernoulli);
    if (!has_elliptic_region(p)) throw DomainError("no elliptic region for these parameters");
    const double s = by_fraction ? in_.pressure_frac : pressure_fraction(p, in_.pressure);
    const double t = period_at_fraction(p, s, flight ? PeriodMethod::flight : PeriodMethod::quadrature,
                                        cfg_.tol.quadrature);
    Json j;
    j["lambda"] = p.lambda;
    j["bernoulli"] = p.bernoulli;
    j["pressure"] = pressure_from_fraction(p, s);
    j["s"] = s;
    j["method"] = flight ? "flight" : "quadrature";
    j["T"] = t;
    return finish(j, exit_ok);
  }

  int period_table() {
    const Params p = Params::make(in_.lambda, in_.bernoulli);
    PeriodTableOptions o;
    o.spacing = in_.spacing == "clustered" ? Spacing::clustered : Spacing::uniform;
    o.tol = cfg_.tol.quadrature;
    o.threads = cfg_.jobs;
    const PeriodTable t = homeuler::period_table(p, in_.samples, in_.s_min, in_.s_max, o);
    if (cfg_.format == Format::csv) return emit(io::period_table_csv(t), exit_ok);
    return finish(io::to_json(t), exit_ok);
  }

  int find() {
    require_json();
    const EllipticOrbit o =
        find_periodic(in_.lambda, sign_of(in_.bernoulli), in_.n, cfg_.tol.root, scan_options(cfg_));
    const SolutionProfile prof = reconstruct_profile(o.params, o.pressure, in_.n, cfg_.profile_samples,
                                                     {cfg_.tol.quadrature, cfg_.tol.closure});
    Json j = io::to_json(o);
    j["n"] = in_.n;
    j["s"] = pressure_fraction(o.params, o.pressure);
    const auto [lo, hi] = std::minmax_element(prof.psi.begin(), prof.psi.end());
    Json summary;
    summary["samples"] = static_cast<int>(prof.size()) - 1;
    summary["maxima"] = count_maxima(prof);
    summary["min_psi"] = *lo;
    summary["max_psi"] = *hi;
    summary["closure_error"] = std::max(std::abs(prof.psi.back() - prof.psi.front()),
                                        std::abs(prof.psi_prime.back() - prof.psi_prime.front()));
    summary["type"] = std::string(to_string(prof.type));
    j["profile"] = std::move(summary);
    return finish(j, exit_ok);
  }

  int reconstruct(int samples) {
    require_json();
    const Params p = Params::make(in_.lambda, in_.bernoulli);
    if (!has_elliptic_region(p)) throw DomainError("no elliptic region for these parameters");
    const double s = in_.pressure_frac;
    if (!(s > 0.0 && s <= 1.0)) throw DomainError("--pressure-frac must lie in (0, 1]");
    const bool center = s == 1.0;
    const double pressure = center ? elliptic_center(p).extremal_pressure : pressure_from_fraction(p, s);
    int n = in_.n;
    if (n == 0) {
      n = 1;
      if (!center) {
        const double t = period_at_fraction(p, s, PeriodMethod::quadrature, cfg_.tol.quadrature);
        n = std::max(1, static_cast<int>(std::lround(two_pi / t)));
      }
    }
    const SolutionProfile prof =
        reconstruct_profile(p, pressure, n, samples, {cfg_.tol.quadrature, cfg_.tol.closure});
    return finish(io::to_json(prof), exit_ok);
  }

  int dual() {
    require_json();
    return finish(io::to_json(conjugate_dual(io::read_profile(in_.in))), exit_ok);
  }

  int ma_count() {
    require_json();
    const auto m = homeuler::ma_count(in_.alpha);
    Json j;
    j["alpha"] = in_.alpha;
    j["lambda"] = m.lambda;
    const Json result = io::to_json(m.result);
    for (const auto& [k, v] : result.items()) j[k] = v;
    return finish(j, m.result.kind == ResultKind::none ? exit_no_solution : exit_ok);
  }

  int field() {
    const SolutionProfile prof = io::read_profile(in_.in);
    GridSpec g = in_.grid;
    g.orientation = cfg_.orientation;
    const FieldGrid f = velocity_field(prof, g);
    if (cfg_.format == Format::csv) {
      if (in_.check_residual) throw DomainError("--check-residual needs JSON output");
      return emit(io::field_csv(f), exit_ok);
    }
    Json j = io::to_json(f);
    if (in_.check_residual) {
      const auto r = euler_residual(f);
      j["residual"] = Json{{"div_norm", r.div_norm}, {"momentum_norm", r.momentum_norm}};
    }
    return finish(j, exit_ok);
  }

  int sweep(bool scan) {
    const int sign = sign_of(in_.bernoulli);
    if (!(in_.step > 0.0) || !(in_.lambda_max >= in_.lambda_min)) {
      throw DomainError("sweep needs --step > 0 and --lambda-max >= --lambda-min");
    }
    if (sign > 0 && !(in_.lambda_min > 1.0)) throw DomainError("B = +1 sweeps need --lambda-min > 1");
    if (sign < 0 && !(in_.lambda_min > 0.0 && in_.lambda_max < 1.0)) {
      throw DomainError("B = -1 sweeps need 0 < lambda < 1");
    }
    const auto count = static_cast<std::size_t>(std::floor((in_.lambda_max - in_.lambda_min) / in_.step + 1e-9)) + 1;
    if (count > 100000) throw DomainError("sweep has too many rows");
    std::vector<double> lambdas(count);
    for (std::size_t i = 0; i < count; ++i) lambdas[i] = in_.lambda_min + static_cast<double>(i) * in_.step;

    std::vector<ClassificationResult> results(count);
    ScanOptions opt = scan_options(cfg_);
    opt.threads = 1;
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto work = [&] {
      for (std::size_t i; (i = next++) < count;) {
        try {
          results[i] = count_elliptic(lambdas[i], sign, scan ? CountMode::scan : CountMode::table, opt);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    };
    {
      std::vector<std::jthread> pool;
      const auto jobs = static_cast<std::size_t>(cfg_.jobs);
      for (std::size_t t = 1; t < std::min(jobs, count); ++t) pool.emplace_back(work);
      work();
    }
    if (failure) std::rethrow_exception(failure);

    if (cfg_.format == Format::csv) {
      std::string text = "lambda,kind,count,windings\n";
      for (std::size_t i = 0; i < count; ++i) {
        std::string w;
        for (int n : results[i].windings) w += (w.empty() ? "" : ";") + std::to_string(n);
        text += io::format_double(lambdas[i]) + ',' + std::string(to_string(results[i].kind)) + ',' +
                std::to_string(results[i].count()) + ',' + w + '\n';
      }
      return emit(text, exit_ok);
    }
    Json rows = Json::array();
    for (std::size_t i = 0; i < count; ++i) {
      Json row;
      row["lambda"] = lambdas[i];
      const Json result = io::to_json(results[i]);
      for (const auto& [k, v] : result.items()) row[k] = v;
      rows.push_back(std::move(row));
    }
    Json j;
    j["bernoulli"] = in_.bernoulli;
    j["mode"] = scan ? "scan" : "table";
    j["rows"] = std::move(rows);
    return finish(j, exit_ok);
  }

 private:
  void require_json() const {
    if (cfg_.format != Format::json) throw DomainError("this subcommand only writes JSON");
  }

  int finish(Json j, int code) {
    j["meta"] = meta(cfg_);
    return emit(io::dump(j) + '\n', code);
  }

  int emit(const std::string& text, int code) {
    if (cfg_.out.empty()) {
      out_ << text;
    } else {
      io::write_text(cfg_.out, text);
    }
    return code;
  }

  const RunConfig& cfg_;
  const Inputs& in_;
  std::ostream& out_;
};

CLI::Option* add_lambda_bernoulli(CLI::App* sub, Inputs& in) {
  sub->add_option("--lambda", in.lambda, "homogeneity exponent")->required();
  return sub->add_option("--bernoulli", in.bernoulli, "Bernoulli constant (sign +1 or -1)")->required();
}

}  // namespace

int dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  Inputs in;
  double tol = 0.0;
  std::string format = "json", orientation = "standard";

  CLI::App app{"Homogeneous steady Euler solutions: periods, classification, profiles, fields", "homeuler"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "key=value file with global options; flags override it");
  app.allow_config_extras(CLI::config_extras_mode::error);
  app.add_option("--tol", tol, "result tolerance (quadrature and root)");
  app.add_option("--integration-tol", cfg.tol.integration, "ODE local error tolerance");
  auto* o_quad = app.add_option("--quadrature-tol", cfg.tol.quadrature, "period quadrature tolerance");
  app.add_option("--closure-tol", cfg.tol.closure, "profile closure tolerance (relative)");
  auto* o_root = app.add_option("--root-tol", cfg.tol.root, "|T - 2 pi/n| tolerance in find");
  app.add_option("--scan-samples", cfg.scan_samples, "period samples for scans");
  app.add_option("--profile-samples", cfg.profile_samples, "profile grid intervals in find");
  app.add_option("--format", format, "output format")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--out", cfg.out, "write output to this file instead of stdout");
  app.add_option("--orientation", orientation, "sign convention of the perpendicular gradient")
      ->check(CLI::IsMember({"standard", "flipped"}));
  app.add_option("--jobs", cfg.jobs, "worker threads");

  auto* classify = app.add_subcommand("classify", "count elliptic 2*pi-periodic solutions");
  add_lambda_bernoulli(classify, in);
  classify->add_option("--mode", in.mode, "table or scan")->check(CLI::IsMember({"table", "scan"}));

  auto* period = app.add_subcommand("period", "full period of one closed orbit");
  add_lambda_bernoulli(period, in);
  auto* o_p = period->add_option("--pressure", in.pressure, "pressure level P");
  auto* o_s = period->add_option("--pressure-frac", in.pressure_frac, "normalised level s in (0,1)");
  o_p->excludes(o_s);
  period->add_option("--method", in.method, "quadrature or flight")
      ->check(CLI::IsMember({"quadrature", "flight"}));

  auto* table = app.add_subcommand("period-table", "period function sampled over s");
  add_lambda_bernoulli(table, in);
  table->add_option("--samples", in.samples, "number of rows")->required();
  table->add_option("--s-min", in.s_min, "smallest s");
  table->add_option("--s-max", in.s_max, "largest s");
  table->add_option("--spacing", in.spacing, "uniform or clustered")
      ->check(CLI::IsMember({"uniform", "clustered"}));

  auto* find = app.add_subcommand("find", "orbit with period 2*pi/n");
  add_lambda_bernoulli(find, in);
  find->add_option("-n,--n", in.n, "winding number")->required();

  auto* recon = app.add_subcommand("reconstruct", "profile dump at one level");
  add_lambda_bernoulli(recon, in);
  recon->add_option("--pressure-frac", in.pressure_frac, "normalised level s in (0,1]")->required();
  int samples = 512;
  recon->add_option("--samples", samples, "grid intervals on [0, 2*pi]");
  recon->add_option("-n,--n", in.n, "expected winding (default: nearest to 2*pi/T)");

  auto* dual = app.add_subcommand("dual", "conjugate profile at exponent 1/lambda");
  dual->add_option("--in", in.in, "profile JSON")->required();

  auto* ma = app.add_subcommand("ma-count", "Monge-Ampere solution count");
  ma->add_option("--alpha", in.alpha, "exponent in det D^2 u = |x|^alpha")->required();

  auto* field = app.add_subcommand("field", "velocity and pressure on a polar grid");
  field->add_option("--in", in.in, "profile JSON")->required();
  field->add_option("--r-min", in.grid.r_min, "inner radius");
  field->add_option("--r-max", in.grid.r_max, "outer radius");
  field->add_option("--nr", in.grid.nr, "radial nodes");
  field->add_option("--ntheta", in.grid.ntheta, "angular nodes");
  field->add_flag("--check-residual", in.check_residual, "report Euler residuals");

  auto* sweep = app.add_subcommand("sweep", "classification over a lambda range");
  sweep->add_option("--lambda-min", in.lambda_min, "first exponent")->required();
  sweep->add_option("--lambda-max", in.lambda_max, "last exponent (inclusive)")->required();
  sweep->add_option("--step", in.step, "exponent increment")->required();
  sweep->add_option("--bernoulli", in.bernoulli, "Bernoulli constant (sign +1 or -1)")->required();
  sweep->add_option("--mode", in.mode, "table or scan")->check(CLI::IsMember({"table", "scan"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return exit_ok;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return exit_ok;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return exit_domain;
  }

  try {
    if (tol > 0.0) {
      if (o_quad->count() == 0) cfg.tol.quadrature = tol;
      if (o_root->count() == 0) cfg.tol.root = tol;
    } else if (app.get_option("--tol")->count() > 0) {
      throw DomainError("--tol must be positive");
    }
    cfg.format = format == "csv" ? Format::csv : Format::json;
    cfg.orientation = orientation == "flipped" ? Orientation::flipped : Orientation::standard;
    cfg.validate();

    Runner run(cfg, in, out);
    if (*classify) return run.classify(in.mode == "scan");
    if (*period) {
      if (o_p->count() + o_s->count() != 1) throw DomainError("give exactly one of --pressure, --pressure-frac");
      return run.period(o_s->count() > 0, in.method == "flight");
    }
    if (*table) return run.period_table();
    if (*find) return run.find();
    if (*recon) return run.reconstruct(samples);
    if (*dual) return run.dual();
    if (*ma) return run.ma_count();
    if (*field) return run.field();
    if (*sweep) return run.sweep(in.mode == "scan");
    err << "error: no subcommand\n";
    return exit_domain;
  } catch (const NoSolution& e) {
    err << "no solution: " << e.what() << '\n';
    return exit_no_solution;
  } catch (const ClosureFailure& e) {
    err << "closure failure: " << e.what() << '\n';
    return exit_no_solution;
  } catch (const ContinuumCase& e) {
    err << "continuum: " << e.what() << '\n';
    return exit_domain;
  } catch (const DomainError& e) {
    err << "domain error: " << e.what() << '\n';
    return exit_domain;
  } catch (const ToleranceNotMet& e) {
    err << "tolerance not met: " << e.what() << '\n';
    return exit_tolerance;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return exit_domain;
  }
}

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{"homeuler"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return dispatch(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace homeuler::cli
