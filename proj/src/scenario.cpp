#include "mildsol/scenario.hpp"

#include "mildsol/aaadiag.hpp"
#include "mildsol/forcing.hpp"
#include "mildsol/memory_kernel.hpp"
#include "mildsol/mlf.hpp"
#include "mildsol/quadrature.hpp"
#include "mildsol/solver.hpp"
#include "mildsol/spectral_operator.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <string>
#include <vector>

namespace mildsol {

namespace {

namespace fs = std::filesystem;
using json = nlohmann::json;

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ConfigError("config parse error in " + path + ": " + e.what());
  }
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  return j;
}

double num_field(const json& j, const std::string& key, double def, double lo,
                 double hi) {
  if (!j.contains(key)) return def;
  if (!j.at(key).is_number())
    throw ConfigError("config field '" + key + "' must be a number");
  const double v = j.at(key).get<double>();
  if (!(v >= lo) || !(v <= hi))
    throw ConfigError("config field '" + key + "' = " + std::to_string(v) +
                      " outside [" + std::to_string(lo) + ", " +
                      std::to_string(hi) + "]");
  return v;
}

std::int64_t int_field(const json& j, const std::string& key, std::int64_t def,
                       std::int64_t lo, std::int64_t hi) {
  if (!j.contains(key)) return def;
  if (!j.at(key).is_number_integer())
    throw ConfigError("config field '" + key + "' must be an integer");
  const std::int64_t v = j.at(key).get<std::int64_t>();
  if (v < lo || v > hi)
    throw ConfigError("config field '" + key + "' outside valid range");
  return v;
}

std::string str_field(const json& j, const std::string& key,
                      const std::string& def) {
  if (!j.contains(key)) return def;
  if (!j.at(key).is_string())
    throw ConfigError("config field '" + key + "' must be a string");
  return j.at(key).get<std::string>();
}

void check_known_keys(const json& j, const std::set<std::string>& allowed) {
  for (const auto& [key, value] : j.items())
    if (allowed.find(key) == allowed.end())
      throw ConfigError("unknown config field '" + key +
                        "' for this scenario");
}

/// Removes everything it registered unless commit() is called.
class ArtifactSet {
 public:
  explicit ArtifactSet(fs::path dir) : dir_(std::move(dir)) {}
  ~ArtifactSet() {
    if (committed_) return;
    std::error_code ec;
    for (const fs::path& p : paths_) fs::remove(p, ec);
  }
  fs::path reserve(const std::string& name) {
    fs::path p = dir_ / name;
    paths_.push_back(p);
    return p;
  }
  void commit() { committed_ = true; }

 private:
  fs::path dir_;
  std::vector<fs::path> paths_;
  bool committed_ = false;
};

void write_csv(const fs::path& path, const std::string& header,
               const std::vector<std::vector<double>>& rows) {
  std::FILE* f = std::fopen(path.string().c_str(), "w");
  if (f == nullptr)
    throw std::runtime_error("cannot write " + path.string());
  std::fprintf(f, "%s\n", header.c_str());
  char buf[64];
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      std::snprintf(buf, sizeof(buf), "%.17g", row[i]);
      std::fprintf(f, "%s%s", i == 0 ? "" : ",", buf);
    }
    std::fprintf(f, "\n");
  }
  std::fclose(f);
}

void write_report(const fs::path& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << j.dump(2) << '\n';
}

// Config echo for reports: the output directory is an invocation detail,
// not part of the experiment, and must not break byte-level determinism.
json config_echo(json cfg) {
  cfg.erase("output_dir");
  return cfg;
}

json contraction_to_json(const ContractionReport& c) {
  json j{{"Lambda", c.Lambda},
         {"verdict", c.verdict == ContractionReport::Verdict::contractive
                         ? "contractive"
                         : "not_contractive"},
         {"factors",
          {{"CM", c.factors.CM},
           {"omega", c.factors.omega},
           {"alpha", c.factors.alpha},
           {"L_f", c.factors.L_f},
           {"k_l1", c.factors.k_l1}}}};
  if (c.example1_condition_value)
    j["example1_condition_value"] = *c.example1_condition_value;
  return j;
}

WeightFunction weight_from_name(const std::string& name) {
  if (name == "one_plus_t2") return WeightFunction::one_plus_t2();
  if (name == "one_plus_t") return WeightFunction::one_plus_t();
  if (name == "one") return WeightFunction::constant_one();
  throw ConfigError("unknown weight 'h': " + name +
                    " (expected one_plus_t2, one_plus_t, or one)");
}

GrowthBound growth_from_json(const json& j, const GrowthBound& def) {
  if (!j.contains("W")) return def;
  const json& w = j.at("W");
  if (!w.is_object()) throw ConfigError("config field 'W' must be an object");
  check_known_keys(w, {"gamma0", "gamma1", "theta"});
  GrowthBound g;
  g.gamma0 = num_field(w, "gamma0", def.gamma0, 0.0, 1e6);
  g.gamma1 = num_field(w, "gamma1", def.gamma1, 0.0, 1e6);
  g.theta = num_field(w, "theta", def.theta, 0.0, 1.0);
  return g;
}

// ---------------------------------------------------------------------------
// example1 / example2_delay

struct ExampleConfig {
  double alpha, beta, mu_shift, dt, t0, t1, history_T, tol;
  Eigen::Index n_modes;
  int max_iter, shifts_n;
  double probe_half, kernel_rate, kernel_scale, delay_tau;
  double u0_scale, nl_tau, nl_weight;
  double split_T, split_eps, CM;
  bool zero_forcing;
  std::int64_t seed;
};

ExampleConfig parse_example(const json& j, bool delay_variant) {
  check_known_keys(
      j, {"scenario",   "alpha",      "beta",      "mu_shift",   "n_modes",
          "dt",         "window",     "history_T", "tol",        "max_iter",
          "shifts_n",   "probe_half", "kernel",    "delay_tau",  "nonlocal",
          "split_T",    "split_eps",  "CM",        "zero_forcing",
          "output_dir", "seed"});
  ExampleConfig c;
  c.alpha = num_field(j, "alpha", 1.5, 1.0 + 1e-6, 2.0 - 1e-6);
  c.beta = num_field(j, "beta", 0.1, -10.0, 10.0);
  c.mu_shift = num_field(j, "mu_shift", 49.0, 1e-6, 1e6);
  c.n_modes = int_field(j, "n_modes", 6, 1, 32);
  c.dt = num_field(j, "dt", 0.05, 1e-6, 1.0);
  double t0 = -230.0, t1 = 230.0;
  if (j.contains("window")) {
    const json& w = j.at("window");
    if (!w.is_object())
      throw ConfigError("config field 'window' must be an object");
    check_known_keys(w, {"t0", "t1"});
    t0 = num_field(w, "t0", t0, -1e6, 1e6);
    t1 = num_field(w, "t1", t1, -1e6, 1e6);
  }
  if (!(t1 > t0)) throw ConfigError("window.t1 must exceed window.t0");
  c.t0 = t0;
  c.t1 = t1;
  const double n_real = (t1 - t0) / c.dt + 1.0;
  if (n_real > 2.1e4)
    throw ConfigError("window/dt implies " + std::to_string(n_real) +
                      " nodes; desk-scale limit is 21000");
  c.history_T = num_field(j, "history_T", 60.0, 10.0 * c.dt, 1e4);
  c.tol = num_field(j, "tol", 1e-8, 1e-14, 1.0);
  c.max_iter = static_cast<int>(int_field(j, "max_iter", 60, 1, 10000));
  c.shifts_n = static_cast<int>(int_field(j, "shifts_n", 5, 1, 12));
  c.probe_half = num_field(j, "probe_half", 15.0, c.dt, 1e4);
  c.kernel_rate = 1.0;
  c.kernel_scale = 1.0;
  if (j.contains("kernel")) {
    const json& k = j.at("kernel");
    if (!k.is_object())
      throw ConfigError("config field 'kernel' must be an object");
    check_known_keys(k, {"rate", "scale"});
    c.kernel_rate = num_field(k, "rate", 1.0, 1e-6, 1e6);
    c.kernel_scale = num_field(k, "scale", 1.0, -1e6, 1e6);
  }
  c.delay_tau =
      delay_variant ? num_field(j, "delay_tau", 1.0, 0.0, c.history_T) : -1.0;
  c.u0_scale = 1.0;
  c.nl_tau = 1.0;
  c.nl_weight = 0.25;
  if (j.contains("nonlocal")) {
    const json& nl = j.at("nonlocal");
    if (!nl.is_object())
      throw ConfigError("config field 'nonlocal' must be an object");
    check_known_keys(nl, {"u0_scale", "tau", "weight"});
    c.u0_scale = num_field(nl, "u0_scale", 1.0, -1e6, 1e6);
    c.nl_tau = num_field(nl, "tau", 1.0, 0.0, t1);
    c.nl_weight = num_field(nl, "weight", 0.25, -10.0, 10.0);
  }
  c.split_T = num_field(j, "split_T", 20.0, 0.0, t1);
  c.split_eps = num_field(j, "split_eps", 1e-2, 1e-12, 1.0);
  c.CM = num_field(j, "CM", -1.0, -1.0, 1e6);
  c.zero_forcing = j.contains("zero_forcing") && j.at("zero_forcing").is_boolean()
                       ? j.at("zero_forcing").get<bool>()
                       : false;
  c.seed = int_field(j, "seed", 12345, 0, INT64_MAX);
  if (c.t0 > -c.probe_half || c.t1 < c.probe_half)
    throw ConfigError("probe_half must fit inside the solve window");
  return c;
}

/// Forcing mode coefficients along a fixed trajectory, with the same padded
/// memory treatment the solver uses.
Path forcing_along(const SpectralOperator& op, double alpha,
                   const AAAForcing& f, const Kernel& kernel, const Path& u,
                   double history_T, double delay_tau) {
  (void)alpha;
  const double dt = u.grid.dt;
  const auto L = static_cast<Eigen::Index>(std::llround(history_T / dt));
  const TimeGrid pad_grid(u.grid.t0 - static_cast<double>(L) * dt, dt,
                          u.grid.n + L);
  Path u_pad(pad_grid, u.dim());
  u_pad.values.leftCols(L).colwise() = Eigen::VectorXd(u.values.col(0));
  u_pad.values.rightCols(u.grid.n) = u.values;

  Eigen::MatrixXd phi(u.dim(), pad_grid.n);
  if (delay_tau >= 0.0) {
    for (Eigen::Index s = 0; s < pad_grid.n; ++s)
      phi.col(s) = u_pad.interpolate(
          std::max(pad_grid.node(s) - delay_tau, pad_grid.t0));
  } else {
    phi = convolve_history_all(kernel, u_pad, history_T);
  }

  std::unique_ptr<SineCollocation> colloc;
  if (op.basis_tag == BasisTag::dirichlet_sine_on_0_pi)
    colloc = std::make_unique<SineCollocation>(op.n_modes(),
                                               4 * op.n_modes() + 1);
  Path out(u.grid, u.dim());
  for (Eigen::Index s = 0; s < u.grid.n; ++s)
    out.values.col(s) =
        eval_forcing_spectral(f, colloc.get(), u.grid.node(s),
                              u_pad.values.col(L + s), phi.col(L + s));
  return out;
}

Path restrict_from_zero(const Path& u) {
  const auto off =
      static_cast<Eigen::Index>(std::llround(-u.grid.t0 / u.grid.dt));
  if (off < 0 || off >= u.grid.n - 1 ||
      std::abs(u.grid.node(off)) > 1e-9)
    throw std::runtime_error("restrict_from_zero: grid has no t = 0 node");
  const TimeGrid g(0.0, u.grid.dt, u.grid.n - off);
  return Path(g, u.values.rightCols(u.grid.n - off));
}

void run_example(const json& cfg, const fs::path& out_dir, bool delay_variant) {
  const ExampleConfig c = parse_example(cfg, delay_variant);
  const auto n =
      static_cast<Eigen::Index>(std::llround((c.t1 - c.t0) / c.dt)) + 1;
  const TimeGrid window(c.t0, c.dt, n);

  const SpectralOperator op = make_dirichlet_laplacian(c.mu_shift, c.n_modes);
  AAAForcing f = make_example1_forcing(c.beta);
  if (c.zero_forcing) {
    f.aa_multipliers.clear();
    f.decay_scale = 0.0;
    f.memory_coupling = Nonlinearity::zero;
    f.lipschitz_L = 0.0;
    f.uniform_bound_W = GrowthBound{0.0, 0.0, 1.0};
  }
  const Kernel kernel = Kernel::exponential(c.kernel_rate, c.kernel_scale);

  double CM = c.CM;
  if (CM <= 0.0) {
    const double t_max = std::max(
        2.0 * c.history_T,
        std::pow(2e3 / std::abs(op.sector.omega), 1.0 / c.alpha));
    CM = operator_decay_constant(op, c.alpha, t_max, 1200);
  }
  ContractionReport contraction = contraction_constant_example1(
      CM, c.alpha, op.sector.omega, c.zero_forcing ? 0.0 : c.beta);
  // The generic Theorem-3.1 bookkeeping with this instance's actual factors.
  const double k_l1 = delay_variant ? 1.0 : kernel.l1_norm();
  ContractionReport generic = contraction_constant(
      CM, c.alpha, op.sector.omega, f.lipschitz_L, k_l1);

  PicardOptions popts;
  popts.tol = c.tol;
  popts.max_iter = c.max_iter;
  popts.delay_tau = c.delay_tau;
  popts.CM = CM;
  const Path guess(window, c.n_modes);
  PicardResult pr = picard_solve(op, c.alpha, f, kernel, window, c.history_T,
                                 guess, popts);
  if (!pr.converged)
    throw NumericalFailure("picard iteration did not converge within " +
                           std::to_string(c.max_iter) + " iterations");
  const Path& u = pr.fixed_point;
  const Path u_pos = restrict_from_zero(u);

  // Variation-of-parameters run v on [0, t1] against the fixed point.
  NonlocalCondition cond;
  cond.points = {{c.nl_tau, c.nl_weight}};
  cond.u0 = Eigen::VectorXd::Constant(c.n_modes, c.u0_scale);
  const Path f_path = forcing_along(op, c.alpha, f, kernel, u, c.history_T,
                                    c.delay_tau);
  const Path f_path_pos = restrict_from_zero(f_path);
  const Path v =
      ivp_solve(op, c.alpha, f_path_pos, cond, u_pos, u_pos.grid);
  const GapReport gap = asymptotic_gap(v, u_pos, c.alpha, op.sector.omega);

  // Translate recurrence diagnostics on the whole-line fixed point.
  const ShiftSequence shifts = sqrt2_shift_sequence(c.shifts_n);
  const auto probe_n = static_cast<Eigen::Index>(
                           std::llround(2.0 * c.probe_half / c.dt)) + 1;
  const TimeGrid probe(-c.probe_half, c.dt, probe_n);
  if (!u.covers(probe.t0 - shifts.shifts.back()) ||
      !u.covers(probe.t_end() + shifts.shifts.back()))
    throw ConfigError(
        "window too short for the requested shifts: need coverage of the "
        "probe grid shifted by " +
        std::to_string(shifts.shifts.back()));
  const TranslateReport tr = translate_test(u, shifts, probe);

  // Decay split: re-solve with the vanishing forcing term removed; the
  // difference from the AA candidate must decay past split_T.
  AAAForcing f_aa = f;
  f_aa.decay_scale = 0.0;
  const PicardResult pr_aa = picard_solve(op, c.alpha, f_aa, kernel, window,
                                          c.history_T, guess, popts);
  const bool split_ok =
      decay_split_test(u, pr_aa.fixed_point, c.split_T, c.split_eps);

  // Seeded empirical Lipschitz sample (ties the seed into the report).
  const double lip = estimate_lipschitz(
      f, 2.0, 2000, 1, static_cast<std::uint64_t>(c.seed));

  ArtifactSet artifacts(out_dir);
  const fs::path sol_csv = artifacts.reserve("solution.csv");
  const fs::path tr_csv = artifacts.reserve("translate.csv");
  const fs::path gap_csv = artifacts.reserve("gap.csv");
  const fs::path report = artifacts.reserve("report.json");

  {
    std::string header = "t";
    for (Eigen::Index k = 0; k < c.n_modes; ++k)
      header += ",mode" + std::to_string(k + 1);
    std::vector<std::vector<double>> rows;
    rows.reserve(static_cast<std::size_t>(window.n));
    for (Eigen::Index j = 0; j < window.n; ++j) {
      std::vector<double> row{window.node(j)};
      for (Eigen::Index k = 0; k < c.n_modes; ++k)
        row.push_back(u.values(k, j));
      rows.push_back(std::move(row));
    }
    write_csv(sol_csv, header, rows);
  }
  {
    std::vector<std::vector<double>> rows;
    for (std::size_t m = 0; m < tr.errors.size(); ++m)
      rows.push_back({shifts.shifts[m], tr.errors[m], tr.reverse_errors[m]});
    write_csv(tr_csv, "shift,error,reverse_error", rows);
  }
  {
    std::vector<std::vector<double>> rows;
    for (Eigen::Index j = 0; j < gap.grid.n; ++j)
      rows.push_back({gap.grid.node(j), gap.gaps(j)});
    write_csv(gap_csv, "t,gap", rows);
  }

  const auto gap_at = [&](double t) {
    const auto j = static_cast<Eigen::Index>(std::llround(t / c.dt));
    return j >= 0 && j < gap.grid.n ? gap.gaps(j) : -1.0;
  };
  json rep{
      {"scenario", delay_variant ? "example2_delay" : "example1"},
      {"config", config_echo(cfg)},
      {"CM", CM},
      {"contraction", contraction_to_json(generic)},
      {"contraction_example1_bookkeeping", contraction_to_json(contraction)},
      {"picard",
       {{"iterations", pr.iterations},
        {"converged", pr.converged},
        {"residual", pr.residual},
        {"empirical_ratio", pr.empirical_ratio},
        {"iterate_deltas", pr.iterate_deltas},
        {"history_T", pr.truncation_budget.history_T},
        {"tail_error_bound", pr.truncation_budget.tail_error_bound}}},
      {"gap",
       {{"fitted_c", gap.fitted_c},
        {"late_over_early", gap.late_over_early},
        {"gap_at_1", gap_at(1.0)},
        {"gap_at_50", gap_at(50.0)}}},
      {"translate",
       {{"shifts", shifts.shifts},
        {"errors", tr.errors},
        {"reverse_errors", tr.reverse_errors},
        {"decreasing", tr.decreasing},
        {"two_sided_ok", tr.two_sided_ok}}},
      {"decay_split",
       {{"T", c.split_T}, {"eps", c.split_eps}, {"pass", split_ok}}},
      {"lipschitz_estimate", lip},
      {"seed", c.seed}};
  write_report(report, rep);
  artifacts.commit();
}

// ---------------------------------------------------------------------------
// mlf_validate

void run_mlf_validate(const json& cfg, const fs::path& out_dir, bool execute) {
  check_known_keys(cfg, {"scenario", "output_dir", "seed", "tolerance"});
  const double tol = num_field(cfg, "tolerance", 1e-8, 1e-12, 1e-2);
  const std::vector<double> alphas{1.1, 1.25, 1.5, 1.75, 1.9};
  const std::vector<double> mus{-0.5, -1.0, -4.0, -25.0};
  const std::vector<double> ts{0.1, 0.5, 1.0, 2.0, 5.0, 10.0, 25.0};

  if (!execute) return;
  std::vector<std::vector<double>> rows;
  double max_err = 0.0;
  for (double a : alphas)
    for (double mu : mus)
      for (double t : ts) {
        const double series = resolvent_symbol(a, mu, t);
        const double contour = contour_eval(a, mu, t).real();
        const double err = std::abs(series - contour);
        max_err = std::max(max_err, err);
        rows.push_back({a, mu, t, series, contour, err});
      }

  double exp_err = 0.0, cos_err = 0.0;
  for (int i = 0; i <= 200; ++i) {
    const double t = 10.0 * i / 200.0;
    exp_err = std::max(exp_err,
                       std::abs(ml_eval(1.0, -t) - std::exp(-t)));
    cos_err = std::max(cos_err,
                       std::abs(ml_eval(2.0, -t * t) - std::cos(t)));
  }

  ArtifactSet artifacts(out_dir);
  const fs::path lattice_csv = artifacts.reserve("lattice.csv");
  const fs::path report = artifacts.reserve("report.json");
  write_csv(lattice_csv, "alpha,mu,t,series,contour,abs_error", rows);
  json rep{{"scenario", "mlf_validate"},
           {"config", config_echo(cfg)},
           {"max_lattice_error", max_err},
           {"exp_identity_error", exp_err},
           {"cos_identity_error", cos_err},
           {"tolerance", tol},
           {"pass", max_err <= tol && exp_err <= tol && cos_err <= tol}};
  write_report(report, rep);
  artifacts.commit();
  if (max_err > tol || exp_err > tol || cos_err > tol)
    throw NumericalFailure("mlf_validate: dual-route disagreement " +
                           std::to_string(std::max({max_err, exp_err,
                                                    cos_err})) +
                           " exceeds tolerance");
}

// ---------------------------------------------------------------------------
// identity_check

void run_identity_check(const json& cfg, const fs::path& out_dir, bool execute) {
  check_known_keys(cfg, {"scenario", "output_dir", "seed", "tolerance"});
  const double tol = num_field(cfg, "tolerance", 1e-6, 1e-12, 1e-2);
  const std::vector<double> alphas{1.25, 1.5, 1.75};
  const std::vector<double> omegas{-0.5, -1.0, -4.0};

  if (!execute) return;
  std::vector<std::vector<double>> rows;
  double max_rel = 0.0, max_scaling = 0.0;
  for (double a : alphas)
    for (double w : omegas) {
      const double closed = kernel_integral_identity(a, w);
      // Independent route: adaptive quadrature to R plus the exact
      // alternating-series tail.
      const double R = std::pow(1e5 / std::abs(w), 1.0 / a);
      const double quad_part = quad::adaptive_simpson(
          [&](double s) { return 1.0 / (1.0 + std::abs(w) * std::pow(s, a)); },
          0.0, R, 1e-12 * closed);
      const double quad = quad_part + cuesta_kernel_tail(a, w, R);
      const double rel = std::abs(quad - closed) / closed;
      max_rel = std::max(max_rel, rel);
      for (double cscale : {2.0, 10.0}) {
        const double scaled = kernel_integral_identity(a, cscale * w);
        const double predicted = std::pow(cscale, -1.0 / a) * closed;
        max_scaling = std::max(
            max_scaling, std::abs(scaled - predicted) / predicted);
      }
      rows.push_back({a, w, closed, quad, rel});
    }

  ArtifactSet artifacts(out_dir);
  const fs::path csv = artifacts.reserve("identity.csv");
  const fs::path report = artifacts.reserve("report.json");
  write_csv(csv, "alpha,omega,closed_form,quadrature,rel_error", rows);
  json rep{{"scenario", "identity_check"},
           {"config", config_echo(cfg)},
           {"max_rel_error", max_rel},
           {"max_scaling_error", max_scaling},
           {"tolerance", tol},
           {"pass", max_rel <= tol && max_scaling <= 1e-14}};
  write_report(report, rep);
  artifacts.commit();
  if (max_rel > tol || max_scaling > 1e-14)
    throw NumericalFailure("identity_check: closed form vs quadrature "
                           "disagreement exceeds tolerance");
}

// ---------------------------------------------------------------------------
// contraction_check

void run_contraction_check(const json& cfg, const fs::path& out_dir, bool execute) {
  check_known_keys(cfg, {"scenario", "output_dir", "seed", "CM", "alpha",
                         "omega", "L_f", "k_l1", "beta"});
  const double CM = num_field(cfg, "CM", 1.0, 1e-12, 1e6);
  const double alpha = num_field(cfg, "alpha", 1.5, 1.0 + 1e-6, 2.0 - 1e-6);
  const double omega = num_field(cfg, "omega", -2.0, -1e9, -1e-12);
  const double L_f = num_field(cfg, "L_f", 0.1, 0.0, 1e6);
  const double k_l1 = num_field(cfg, "k_l1", 1.0, 0.0, 1e6);
  const double beta = num_field(cfg, "beta", 0.1, -10.0, 10.0);

  if (!execute) return;
  const ContractionReport rep1 =
      contraction_constant(CM, alpha, omega, L_f, k_l1);
  const ContractionReport rep2 =
      contraction_constant_example1(CM, alpha, omega, beta);
  const double cross =
      CM * L_f * (1.0 + k_l1) * kernel_integral_identity(alpha, omega);
  const double consistency =
      std::abs(rep1.Lambda - cross) / std::max(cross, 1e-300);

  ArtifactSet artifacts(out_dir);
  const fs::path report = artifacts.reserve("report.json");
  json rep{{"scenario", "contraction_check"},
           {"config", config_echo(cfg)},
           {"contraction", contraction_to_json(rep1)},
           {"example1_bookkeeping", contraction_to_json(rep2)},
           {"formula_consistency_rel", consistency}};
  write_report(report, rep);
  artifacts.commit();
  if (consistency > 1e-12)
    throw NumericalFailure("contraction_check: Lambda code paths disagree");
}

// ---------------------------------------------------------------------------
// theorem2_check

void run_theorem2_check(const json& cfg, const fs::path& out_dir, bool execute) {
  check_known_keys(cfg, {"scenario", "output_dir", "seed", "CM", "alpha",
                         "omega", "W", "h", "r_grid", "xi_grid", "margin",
                         "condition_i_threshold", "condition_i_t_max"});
  const double CM = num_field(cfg, "CM", 1.0, 1e-12, 1e6);
  const double alpha = num_field(cfg, "alpha", 1.5, 1.0 + 1e-6, 2.0 - 1e-6);
  const double omega = num_field(cfg, "omega", -1.0, -1e9, -1e-12);
  const GrowthBound W = growth_from_json(cfg, GrowthBound{1.0, 1.0, 0.5});
  const WeightFunction h = weight_from_name(
      str_field(cfg, "h", "one_plus_t"));

  auto grid_from = [&](const char* key,
                       std::vector<double> def) -> std::vector<double> {
    if (!cfg.contains(key)) return def;
    if (!cfg.at(key).is_array())
      throw ConfigError(std::string("config field '") + key +
                        "' must be an array of numbers");
    std::vector<double> g;
    for (const auto& v : cfg.at(key)) {
      if (!v.is_number())
        throw ConfigError(std::string("config field '") + key +
                          "' must contain only numbers");
      g.push_back(v.get<double>());
    }
    if (g.empty())
      throw ConfigError(std::string("config field '") + key +
                        "' must be nonempty");
    return g;
  };
  const std::vector<double> r_grid =
      grid_from("r_grid", {0.5, 1.0, 2.0, 4.0, 8.0});
  const std::vector<double> xi_grid =
      grid_from("xi_grid", {4.0, 8.0, 16.0, 32.0, 64.0, 128.0});

  Theorem2Options opts;
  opts.liminf_margin = num_field(cfg, "margin", 0.05, 0.0, 10.0);
  opts.condition_i_threshold =
      num_field(cfg, "condition_i_threshold", 1e-3, 1e-12, 1.0);
  opts.condition_i_t_max =
      num_field(cfg, "condition_i_t_max", 1e8, 1e2, 1e12);

  if (!execute) return;
  const HypothesisReport hr =
      check_theorem2(CM, alpha, omega, W, h, r_grid, xi_grid, opts);

  ArtifactSet artifacts(out_dir);
  const fs::path beta_csv = artifacts.reserve("beta.csv");
  const fs::path trace_csv = artifacts.reserve("condition_i.csv");
  const fs::path report = artifacts.reserve("report.json");
  {
    std::vector<std::vector<double>> rows;
    for (std::size_t i = 0; i < hr.beta_samples.size(); ++i)
      rows.push_back({hr.beta_samples[i].first, hr.beta_samples[i].second});
    write_csv(beta_csv, "r,beta", rows);
  }
  {
    std::vector<std::vector<double>> rows;
    for (const auto& [t, v] : hr.condition_i_trace) rows.push_back({t, v});
    write_csv(trace_csv, "t,normalized_integral", rows);
  }
  json rep{{"scenario", "theorem2_check"},
           {"config", config_echo(cfg)},
           {"condition_i_ok", hr.condition_i_ok},
           {"condition_iv_ok", hr.condition_iv_ok},
           {"xi_over_beta", hr.xi_over_beta}};
  if (hr.holder_variant) {
    rep["holder_variant"] = {{"gamma0", hr.holder_variant->gamma0},
                             {"gamma1", hr.holder_variant->gamma1},
                             {"theta", hr.holder_variant->theta},
                             {"gamma_over_CM",
                              hr.holder_variant->gamma_over_CM},
                             {"ok", hr.holder_variant->ok}};
  }
  write_report(report, rep);
  artifacts.commit();
}

// ---------------------------------------------------------------------------
// asymptotic_gap (pure relaxation control)

void run_asymptotic_gap(const json& cfg, const fs::path& out_dir, bool execute) {
  check_known_keys(cfg, {"scenario", "output_dir", "seed", "alpha", "mu_shift",
                         "n_modes", "dt", "t1"});
  const double alpha = num_field(cfg, "alpha", 1.5, 1.0 + 1e-6, 2.0 - 1e-6);
  const double mu_shift = num_field(cfg, "mu_shift", 1.0, 1e-6, 1e6);
  const auto n_modes =
      static_cast<Eigen::Index>(int_field(cfg, "n_modes", 4, 1, 32));
  const double dt = num_field(cfg, "dt", 0.01, 1e-6, 1.0);
  const double t1 = num_field(cfg, "t1", 50.0, 10.0 * dt, 1e4);
  const auto n = static_cast<Eigen::Index>(std::llround(t1 / dt)) + 1;
  if (n > 21000) throw ConfigError("t1/dt exceeds the desk-scale node limit");
  if (!execute) return;

  const SpectralOperator op = make_dirichlet_laplacian(mu_shift, n_modes);
  const TimeGrid window(0.0, dt, n);
  NonlocalCondition cond;
  cond.u0 = Eigen::VectorXd::Ones(n_modes);
  const Path zero(window, n_modes);
  const Path v = ivp_solve(op, alpha, zero, cond, zero, window);
  const GapReport gap = asymptotic_gap(v, zero, alpha, op.sector.omega);

  const double t_max = std::max(
      2.0 * t1, std::pow(2e3 / std::abs(op.sector.omega), 1.0 / alpha));
  const double CM = operator_decay_constant(op, alpha, t_max, 1200);
  const double bound = CM * cond.u0.norm() * 1.05;
  const bool ok = gap.fitted_c <= bound;

  ArtifactSet artifacts(out_dir);
  const fs::path csv = artifacts.reserve("gap.csv");
  const fs::path report = artifacts.reserve("report.json");
  std::vector<std::vector<double>> rows;
  for (Eigen::Index j = 0; j < gap.grid.n; ++j)
    rows.push_back({gap.grid.node(j), gap.gaps(j)});
  write_csv(csv, "t,gap", rows);
  json rep{{"scenario", "asymptotic_gap"},
           {"config", config_echo(cfg)},
           {"CM", CM},
           {"fitted_c", gap.fitted_c},
           {"certified_bound", bound},
           {"late_over_early", gap.late_over_early},
           {"pass", ok}};
  write_report(report, rep);
  artifacts.commit();
  if (!ok)
    throw NumericalFailure(
        "asymptotic_gap: decay envelope exceeds the certified bound");
}

// ---------------------------------------------------------------------------

void dispatch(const json& cfg, const fs::path& out_dir, bool execute) {
  const std::string scenario = str_field(cfg, "scenario", "");
  if (scenario.empty())
    throw ConfigError("config must name a 'scenario'");
  const std::set<std::string> known{
      "example1",       "example2_delay", "mlf_validate", "identity_check",
      "contraction_check", "theorem2_check", "asymptotic_gap"};
  if (known.find(scenario) == known.end())
    throw ConfigError("unknown scenario '" + scenario + "'");
  if (scenario == "example1" || scenario == "example2_delay") {
    const bool delay = scenario == "example2_delay";
    parse_example(cfg, delay);
    if (execute) run_example(cfg, out_dir, delay);
    return;
  }
  if (scenario == "mlf_validate") return run_mlf_validate(cfg, out_dir, execute);
  if (scenario == "identity_check")
    return run_identity_check(cfg, out_dir, execute);
  if (scenario == "contraction_check")
    return run_contraction_check(cfg, out_dir, execute);
  if (scenario == "theorem2_check")
    return run_theorem2_check(cfg, out_dir, execute);
  if (scenario == "asymptotic_gap")
    return run_asymptotic_gap(cfg, out_dir, execute);
}

}  // namespace

void validate_config_file(const std::string& config_path) {
  const json cfg = load_json(config_path);
  dispatch(cfg, fs::path("."), /*execute=*/false);
}

void run_scenario_file(const std::string& config_path,
                       const std::string& output_dir_override,
                       std::int64_t seed_override) {
  json cfg = load_json(config_path);
  if (!output_dir_override.empty()) cfg["output_dir"] = output_dir_override;
  if (seed_override >= 0) cfg["seed"] = seed_override;
  const fs::path out_dir(str_field(cfg, "output_dir", "."));
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec && !fs::is_directory(out_dir))
    throw ConfigError("cannot create output_dir: " + out_dir.string());
  try {
    dispatch(cfg, out_dir, /*execute=*/true);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config error: ") + e.what());
  }
}

}  // namespace mildsol
