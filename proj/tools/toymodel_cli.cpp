#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "config.hpp"
#include "toymodel/burgers.hpp"
#include "toymodel/error.hpp"
#include "toymodel/flux.hpp"
#include "toymodel/hydro.hpp"
#include "toymodel/io.hpp"
#include "toymodel/perturbation.hpp"
#include "toymodel/toy_model.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace toymodel;
using toymodel::cli::Config;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_config = 2;
constexpr int exit_numeric = 3;
constexpr int exit_verification = 4;

const std::vector<std::string> integration_keys = {"dt", "t_end", "sample_every", "drift_tol",
                                                   "phase_floor", "output_dir"};

struct Subcommand {
  std::string name;
  std::string help;
  std::vector<std::string> keys;
};

const std::vector<Subcommand> subcommands = {
    {"simulate-toy", "Integrate the complex lattice and write its trajectory",
     {"ic", "n", "eps", "node", "input"}},
    {"simulate-hydro", "Integrate a hydrodynamic form and write its trajectory",
     {"variant", "ic", "n", "eps", "first_node"}},
    {"simulate-burgers", "Integrate a discrete Burgers variant",
     {"variant", "n", "eps", "coeff", "amplitude"}},
    {"exact-burgers", "Tabulate the exact rarefaction wave on a (j, t) grid",
     {"variant", "n", "eps", "alpha", "beta", "samples"}},
    {"compare", "Compare lattice densities with the matching Burgers reference",
     {"ic", "n", "eps", "delta"}},
    {"split-demo", "Symmetric Burgers endpoint splitting from a block of ones",
     {"block", "amplitude"}},
    {"verify-theorem", "Sweep the deviation bounds over an (eps, n) grid",
     {"eps", "n", "delta", "first_node"}},
    {"flux", "Truncated mass and energy fluxes along a lattice trajectory",
     {"ic", "n", "eps", "node", "input", "n_trunc"}},
};

struct Invocation {
  std::string config_path;
  std::map<std::string, std::string> raw;
};

/// Failure of a verification check: the run completed, the claim did not hold.
struct VerificationFailure {
  std::string message;
  json details;
};

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::drift_exceeded:
    case ErrorKind::non_finite:
    case ErrorKind::vacuum_node:
      return exit_numeric;
    default:
      return exit_config;
  }
}

void report_error(const std::string& kind, const std::string& message, int code,
                  const json& details = nullptr) {
  json rec = {{"status", "error"}, {"kind", kind}, {"message", message}, {"exit_code", code}};
  if (!details.is_null()) rec["details"] = details;
  std::cerr << rec.dump() << std::endl;
}

struct Context {
  std::string command;
  Config cfg;
  fs::path out_dir;

  IntegratorConfig integrator(double dt_default, double t_end_default,
                              std::size_t sample_default = 1) const {
    IntegratorConfig ic;
    ic.dt = cfg.number("dt", dt_default);
    ic.t_end = cfg.number("t_end", t_end_default);
    ic.sample_every = cfg.count("sample_every", sample_default);
    ic.drift_tol = cfg.number("drift_tol", ic.drift_tol);
    ic.phase_floor = cfg.number("phase_floor", ic.phase_floor);
    ic.validate();
    return ic;
  }

  json metadata(const json& params, const json& results = nullptr) const {
    json meta = {{"subcommand", command}, {"config", cfg.to_json()}, {"parameters", params}};
    if (!results.is_null()) meta["results"] = results;
    return meta;
  }

  void write(const std::string& file, const std::string& content, const json& meta) const {
    const fs::path path = out_dir / file;
    io::write_with_sidecar(path, content, meta);
    std::cout << "wrote " << path.string() << '\n';
  }
};

json integrator_json(const IntegratorConfig& ic) {
  return {{"dt", ic.dt},
          {"t_end", ic.t_end},
          {"steps", ic.steps()},
          {"sample_every", ic.sample_every},
          {"drift_tol", ic.drift_tol},
          {"phase_floor", ic.phase_floor}};
}

FirstNodePhase first_node(const Config& cfg) {
  const std::string v = cfg.text("first_node", "anchored");
  if (v == "anchored") return FirstNodePhase::anchored;
  if (v == "formal") return FirstNodePhase::formal;
  throw Error(ErrorKind::config, "first_node must be 'anchored' or 'formal'");
}

std::size_t lattice_size(const Config& cfg, std::size_t fallback) {
  const std::size_t n = cfg.count("n", fallback);
  if (n == 0) throw Error(ErrorKind::config, "n must be at least 1");
  return n;
}

double positive(const Config& cfg, const std::string& key, double fallback) {
  const double v = cfg.number(key, fallback);
  if (!(v > 0.0) || !std::isfinite(v)) throw Error(ErrorKind::config, key + " must be positive");
  return v;
}

/// Complex initial data selected by the ic key.
ComplexLattice complex_initial_data(const Config& cfg, json& params, std::size_t n_default) {
  const std::string ic = cfg.text("ic", "shock");
  params["ic"] = ic;
  if (ic == "csv") {
    const std::string input = cfg.text("input", "");
    if (input.empty()) throw Error(ErrorKind::config, "ic = csv needs an input path");
    params["input"] = input;
    auto b = io::read_lattice_csv(input);
    params["n"] = b.size();
    return b;
  }
  const std::size_t n = lattice_size(cfg, n_default);
  params["n"] = n;
  if (ic == "shock") return shock_initial_data(n);
  if (ic == "pertid") {
    const double eps = positive(cfg, "eps", 1.0);
    params["eps"] = eps;
    return rarefaction_initial_data(n, eps);
  }
  if (ic == "circle") {
    const std::size_t node = cfg.count("node", 1);
    if (node < 1 || node > n) throw Error(ErrorKind::config, "node must lie in 1..n");
    params["node"] = node;
    return circle_initial_data(n, node);
  }
  throw Error(ErrorKind::config, "unknown ic '" + ic + "' (shock, pertid, circle, csv)");
}

int simulate_toy(const Context& ctx) {
  json params;
  const ComplexLattice b0 = complex_initial_data(ctx.cfg, params, 32);
  const IntegratorConfig ic = ctx.integrator(1e-3, 1.0);
  params["integrator"] = integrator_json(ic);
  const auto traj = integrate_toy(b0, ic);
  const auto& d0 = traj.diagnostics.front();
  const auto& d1 = traj.diagnostics.back();
  const json results = {
      {"mass_drift", relative_drift(d1.mass, d0.mass)},
      {"hamiltonian_drift", energy_drift(*d1.hamiltonian, *d0.hamiltonian)},
      {"samples", traj.size()}};
  ctx.write("toy_trajectory.csv", io::lattice_csv(traj, ic.phase_floor),
            ctx.metadata(params, results));
  std::cout << results.dump() << '\n';
  return exit_ok;
}

int simulate_hydro(const Context& ctx) {
  const std::string variant = ctx.cfg.text("variant", "alt");
  const std::string ic_name = ctx.cfg.text("ic", "pertid");
  const std::size_t n = lattice_size(ctx.cfg, 32);
  const double eps = positive(ctx.cfg, "eps", 1.0);
  const IntegratorConfig ic = ctx.integrator(default_step(eps), 0.1);
  json params = {{"variant", variant}, {"ic", ic_name}, {"n", n}, {"integrator", integrator_json(ic)}};

  ComplexLattice b0;
  if (ic_name == "shock") {
    b0 = shock_initial_data(n);
  } else if (ic_name == "pertid") {
    b0 = rarefaction_initial_data(n, eps);
    params["eps"] = eps;
  } else {
    throw Error(ErrorKind::config, "simulate-hydro ic must be 'shock' or 'pertid'");
  }
  const HydroState h0 = madelung_decompose(b0, ic.phase_floor);

  std::string csv;
  json results;
  if (variant == "phase") {
    const auto traj = integrate_hydro(h0, ic);
    csv = io::lattice_csv(traj);
    results["mass_drift"] = relative_drift(traj.diagnostics.back().mass, traj.diagnostics.front().mass);
  } else if (variant == "alt") {
    const FirstNodePhase first = first_node(ctx.cfg);
    params["first_node"] = first == FirstNodePhase::anchored ? "anchored" : "formal";
    const auto traj = integrate_alt(to_alt(h0), ic, first);
    csv = io::lattice_csv(traj);
    results["mass_drift"] = relative_drift(traj.diagnostics.back().mass, traj.diagnostics.front().mass);
  } else {
    throw Error(ErrorKind::config, "simulate-hydro variant must be 'phase' or 'alt'");
  }
  ctx.write("hydro_trajectory.csv", csv, ctx.metadata(params, results));
  std::cout << results.dump() << '\n';
  return exit_ok;
}

int simulate_burgers(const Context& ctx) {
  const std::string variant = ctx.cfg.text("variant", "backward");
  const std::size_t n = lattice_size(ctx.cfg, 64);
  json params = {{"variant", variant}, {"n", n}};
  std::string csv;
  if (variant == "backward") {
    const double eps = positive(ctx.cfg, "eps", 1.0);
    const double coeff = ctx.cfg.number("coeff", 8.0);
    const double amplitude = positive(ctx.cfg, "amplitude", eps / 8.0);
    const IntegratorConfig ic = ctx.integrator(1e-3, 1.0);
    params.update({{"eps", eps}, {"coeff", coeff}, {"amplitude", amplitude},
                   {"integrator", integrator_json(ic)}});
    csv = io::profile_csv(integrate_backward(step_profile(n, amplitude), coeff, ic));
  } else if (variant == "symmetric") {
    const double amplitude = positive(ctx.cfg, "amplitude", 1.0);
    const IntegratorConfig ic = ctx.integrator(1e-3, 1.0);
    params.update({{"amplitude", amplitude}, {"integrator", integrator_json(ic)}});
    csv = io::profile_csv(integrate_symmetric(step_profile(n, amplitude), ic));
  } else if (variant == "modified") {
    const double eps = positive(ctx.cfg, "eps", 1.0);
    const IntegratorConfig ic = ctx.integrator(default_step(eps), 1.0);
    params.update({{"eps", eps}, {"integrator", integrator_json(ic)}});
    csv = io::profile_csv(integrate_modified(rarefaction_alt_data(n, eps), ic));
  } else {
    throw Error(ErrorKind::config, "variant must be backward, symmetric or modified");
  }
  ctx.write("burgers_profile.csv", csv, ctx.metadata(params));
  return exit_ok;
}

int exact_burgers(const Context& ctx) {
  const std::string variant = ctx.cfg.text("variant", "backward");
  const std::size_t n = lattice_size(ctx.cfg, 64);
  const double eps = positive(ctx.cfg, "eps", 1.0);
  const double t_end = ctx.cfg.number("t_end", 1.0);
  const std::size_t samples = ctx.cfg.count("samples", 11);
  if (!(t_end > 0.0) || samples < 2) {
    throw Error(ErrorKind::config, "exact-burgers needs t_end > 0 and samples >= 2");
  }
  json params = {{"variant", variant}, {"n", n}, {"t_end", t_end}, {"samples", samples}};

  const auto time_at = [&](std::size_t k) {
    return t_end * static_cast<double>(k) / static_cast<double>(samples - 1);
  };
  std::string csv;
  if (variant == "backward") {
    ScalingParams p = ScalingParams::from_epsilon(eps);
    p.alpha = ctx.cfg.number("alpha", p.alpha);
    p.beta = ctx.cfg.number("beta", p.beta);
    p.validate();
    params.update({{"alpha", p.alpha}, {"beta", p.beta}});
    Trajectory<BurgersProfile> table;
    for (std::size_t k = 0; k < samples; ++k) {
      table.push(time_at(k), exact_backward_profile(n, time_at(k), p), {});
    }
    csv = io::profile_csv(table);
  } else if (variant == "modified") {
    params["eps"] = eps;
    Trajectory<AltHydroState> table;
    for (std::size_t k = 0; k < samples; ++k) {
      table.push(time_at(k), modified_exact(time_at(k), eps, n), {});
    }
    csv = io::profile_csv(table);
  } else {
    throw Error(ErrorKind::config, "exact-burgers variant must be 'backward' or 'modified'");
  }
  ctx.write("exact_profile.csv", csv, ctx.metadata(params));
  return exit_ok;
}

int compare(const Context& ctx) {
  const std::string ic_name = ctx.cfg.text("ic", "pertid");
  const std::size_t n = lattice_size(ctx.cfg, 64);
  const double eps = positive(ctx.cfg, "eps", 1.0);
  const double delta = positive(ctx.cfg, "delta", 0.1);
  const IntegratorConfig ic = ctx.integrator(1e-3, 2.0);
  json params = {{"ic", ic_name}, {"n", n}, {"integrator", integrator_json(ic)}};

  ComplexLattice b0;
  if (ic_name == "pertid") {
    b0 = rarefaction_initial_data(n, eps);
    params.update({{"eps", eps}, {"delta", delta}});
  } else if (ic_name == "shock") {
    b0 = shock_initial_data(n);
  } else {
    throw Error(ErrorKind::config, "compare ic must be 'pertid' or 'shock'");
  }
  const auto toy = integrate_toy(b0, ic);

  // The shock data sits on the symmetric Burgers manifold; the small data is
  // compared with the exact modified-Burgers wave.
  std::vector<BurgersProfile> reference;
  if (ic_name == "shock") {
    IntegratorConfig sym = ic;
    const auto traj = integrate_symmetric(step_profile(n, 1.0), sym);
    reference = traj.states;
  } else {
    for (double t : toy.times) reference.push_back({modified_exact(t, eps, n).rho});
  }

  std::ostringstream csv;
  csv << "t,j,rho_toy,rho_ref,abs_diff\n";
  double worst = 0.0;
  long worst_j = 0;
  double worst_t = 0.0;
  for (std::size_t s = 0; s < toy.size(); ++s) {
    const std::string t = io::format_double(toy.times[s]);
    for (std::size_t k = 0; k < n; ++k) {
      const double rho = std::norm(toy.states[s].values()[k]);
      const double ref = reference[s].rho[k];
      const double diff = std::abs(rho - ref);
      if (diff > worst) {
        worst = diff;
        worst_j = static_cast<long>(k + 1);
        worst_t = toy.times[s];
      }
      csv << t << ',' << (k + 1) << ',' << io::format_double(rho) << ',' << io::format_double(ref)
          << ',' << io::format_double(diff) << '\n';
    }
  }

  json results = {{"max_abs_diff", worst}, {"worst_node", worst_j}, {"worst_time", worst_t}};
  bool checked = false;
  bool pass = true;
  if (ic_name == "pertid" && ic.t_end <= delta / eps * (1.0 + 1e-12)) {
    const double bound = delta * eps / 12.0;
    checked = true;
    pass = worst <= bound;
    results.update({{"bound", bound}, {"pass", pass}});
  }
  results["bound_checked"] = checked;
  ctx.write("compare.csv", csv.str(), ctx.metadata(params, results));
  std::cout << results.dump() << '\n';
  if (!pass) throw VerificationFailure{"density deviation exceeds delta*eps/12", results};
  return exit_ok;
}

int split_demo(const Context& ctx) {
  const std::size_t block = ctx.cfg.count("block", 1000);
  if (block < 2) throw Error(ErrorKind::config, "block must be at least 2");
  const double amplitude = positive(ctx.cfg, "amplitude", 1.0);
  const IntegratorConfig ic = ctx.integrator(1e-3, 60.0, 1000);
  const std::size_t n = 2 * block;
  json params = {{"block", block}, {"n", n}, {"amplitude", amplitude},
                 {"integrator", integrator_json(ic)}};

  const auto t0 = std::chrono::steady_clock::now();
  const auto traj = integrate_symmetric(step_profile(n, amplitude), ic);
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  std::ostringstream series;
  series << "t,s_N,r_Nm1\n";
  bool s_increasing = true;
  bool r_decreasing = true;
  for (std::size_t i = 0; i < traj.size(); ++i) {
    const auto split = even_odd_decompose(traj.states[i]);
    const double s = split.s_at(static_cast<long>(block));
    const double r = split.r_at(static_cast<long>(block) - 1);
    if (i > 0) {
      const auto prev = even_odd_decompose(traj.states[i - 1]);
      s_increasing = s_increasing && s > prev.s_at(static_cast<long>(block));
      r_decreasing = r_decreasing && r < prev.r_at(static_cast<long>(block) - 1);
    }
    series << io::format_double(traj.times[i]) << ',' << io::format_double(s) << ','
           << io::format_double(r) << '\n';
  }

  Trajectory<BurgersProfile> last;
  last.push(traj.times.back(), traj.states.back(), traj.diagnostics.back());
  const auto& rho = traj.states.back().rho;
  const bool right_end_above = rho[n - 1] > amplitude && rho[n - 3] > amplitude;
  const bool left_ramp = rho[0] < rho[block / 2] && rho[block / 2] <= amplitude * (1.0 + 1e-9);
  const json results = {{"s_N_strictly_increasing", s_increasing},
                        {"r_Nm1_strictly_decreasing", r_decreasing},
                        {"right_end_even_sites_above_block", right_end_above},
                        {"left_rarefaction_ramp", left_ramp},
                        {"s_N_final", rho[n - 1]},
                        {"r_Nm1_final", rho[n - 2]},
                        {"seconds", seconds}};
  // Wall time is left out of the sidecar so identical runs give identical files.
  json stable = results;
  stable.erase("seconds");
  ctx.write("split_profile.csv", io::profile_csv(last), ctx.metadata(params, stable));
  ctx.write("split_series.csv", series.str(), ctx.metadata(params, stable));
  std::cout << results.dump() << '\n';
  if (!(s_increasing && r_decreasing && right_end_above && left_ramp)) {
    throw VerificationFailure{"endpoint splitting not reproduced", results};
  }
  return exit_ok;
}

int verify_theorem_cmd(const Context& ctx) {
  const auto eps_values = ctx.cfg.numbers("eps", {0.25, 0.5, 1.0, 2.0, 4.0, 8.0});
  std::vector<std::size_t> sizes;
  for (double x : ctx.cfg.numbers("n", {16, 64, 256})) {
    if (!(x >= 1.0) || x != std::floor(x)) throw Error(ErrorKind::config, "n entries must be positive integers");
    sizes.push_back(static_cast<std::size_t>(x));
  }
  const double delta = positive(ctx.cfg, "delta", 0.1);
  TheoremOptions opt;
  opt.dt = ctx.cfg.number("dt", 0.0);
  opt.sample_every = ctx.cfg.count("sample_every", 1);
  opt.drift_tol = ctx.cfg.number("drift_tol", opt.drift_tol);
  opt.phase_floor = ctx.cfg.number("phase_floor", opt.phase_floor);
  opt.first = first_node(ctx.cfg);
  if (ctx.cfg.has("t_end")) {
    throw Error(ErrorKind::config, "verify-theorem runs to delta/eps; t_end is not accepted");
  }

  const auto reports = verify_theorem_sweep(eps_values, sizes, delta, opt);
  json all = json::array();
  bool pass = true;
  for (const auto& r : reports) {
    all.push_back(io::to_json(r));
    pass = pass && r.pass;
  }
  const json params = {{"eps", eps_values}, {"n", sizes}, {"delta", delta},
                       {"dt", opt.dt}, {"sample_every", opt.sample_every}};
  const json results = {{"runs", reports.size()}, {"all_pass", pass}};
  ctx.write("theorem_reports.json", all.dump(2) + "\n", ctx.metadata(params, results));
  ctx.write("theorem_summary.csv", io::sweep_csv(reports), ctx.metadata(params, results));
  std::cout << results.dump() << '\n';
  if (!pass) throw VerificationFailure{"deviation bound violated", results};
  return exit_ok;
}

int flux_cmd(const Context& ctx) {
  json params;
  const ComplexLattice b0 = complex_initial_data(ctx.cfg, params, 32);
  const std::size_t n = b0.size();
  const std::size_t n_trunc = ctx.cfg.count("n_trunc", n / 2);
  if (n_trunc < 2 || n_trunc >= n) throw Error(ErrorKind::config, "n_trunc must satisfy 2 <= n_trunc < n");
  const IntegratorConfig ic = ctx.integrator(1e-3, 1.0);
  params.update({{"n_trunc", n_trunc}, {"integrator", integrator_json(ic)}});
  const auto traj = integrate_toy(b0, ic);
  const auto cum = cumulative_mass_flux(traj, n_trunc);
  const json results = {{"integrated_mass_flux", cum.integrated_flux},
                        {"mass_change", cum.mass_change},
                        {"mismatch", cum.mismatch()}};
  ctx.write("flux_series.csv", io::flux_csv(flux_series(traj, n_trunc)),
            ctx.metadata(params, results));
  std::cout << results.dump() << '\n';
  return exit_ok;
}

int dispatch(const Context& ctx) {
  if (ctx.command == "simulate-toy") return simulate_toy(ctx);
  if (ctx.command == "simulate-hydro") return simulate_hydro(ctx);
  if (ctx.command == "simulate-burgers") return simulate_burgers(ctx);
  if (ctx.command == "exact-burgers") return exact_burgers(ctx);
  if (ctx.command == "compare") return compare(ctx);
  if (ctx.command == "split-demo") return split_demo(ctx);
  if (ctx.command == "verify-theorem") return verify_theorem_cmd(ctx);
  return flux_cmd(ctx);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Toy model lattice simulator and verification harness"};
  app.require_subcommand(1);
  std::map<std::string, Invocation> inv;
  std::map<std::string, CLI::App*> subs;
  for (const auto& sc : subcommands) {
    CLI::App* sub = app.add_subcommand(sc.name, sc.help);
    Invocation& in = inv[sc.name];
    sub->add_option("--config", in.config_path, "TOML file with flat keys");
    std::vector<std::string> keys = sc.keys;
    keys.insert(keys.end(), integration_keys.begin(), integration_keys.end());
    for (const auto& key : keys) sub->add_option("--" + key, in.raw[key], "overrides '" + key + "'");
    subs[sc.name] = sub;
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    report_error("config", e.what(), exit_config);
    return exit_config;
  }

  try {
    Context ctx;
    for (const auto& sc : subcommands) {
      if (!subs[sc.name]->parsed()) continue;
      ctx.command = sc.name;
      const Invocation& in = inv[sc.name];
      if (!in.config_path.empty()) ctx.cfg = Config::load(in.config_path);
      for (const auto& [key, raw] : in.raw) {
        if (subs[sc.name]->count("--" + key) > 0) ctx.cfg.set_from_flag(key, raw);
      }
      std::vector<std::string> allowed = sc.keys;
      allowed.insert(allowed.end(), integration_keys.begin(), integration_keys.end());
      ctx.cfg.require_known(allowed);
    }
    ctx.out_dir = ctx.cfg.text("output_dir", "out");
    return dispatch(ctx);
  } catch (const VerificationFailure& f) {
    report_error("verification_failed", f.message, exit_verification, f.details);
    return exit_verification;
  } catch (const Error& e) {
    const int code = exit_code_for(e.kind());
    report_error(std::string(to_string(e.kind())), e.what(), code);
    return code;
  } catch (const std::exception& e) {
    report_error("io", e.what(), exit_config);
    return exit_config;
  }
}
