#include "cli/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include "fisher_modes/errors.hpp"
#include "fisher_modes/fisher.hpp"
#include "fisher_modes/hydrogen.hpp"
#include "fisher_modes/modes.hpp"
#include "fisher_modes/schwarzschild_radial.hpp"
#include "fisher_modes/serialize.hpp"

namespace fisher_modes::cli {
namespace {

const std::vector<std::string> kCommands{"mode", "verify", "radial", "hydrogen", "distance"};

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

// Pulls --config out of the arguments and splices the file's key=value lines
// in as flags right after the command name, so explicit flags (which come
// later) win.
std::vector<std::string> splice_config(std::vector<std::string> args) {
  std::optional<std::string> path;
  for (std::size_t i = 0; i < args.size();) {
    if (args[i] == "--config") {
      if (i + 1 >= args.size()) throw DomainError("--config needs a file path");
      path = args[i + 1];
      args.erase(args.begin() + i, args.begin() + i + 2);
    } else if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
      args.erase(args.begin() + i);
    } else {
      ++i;
    }
  }
  if (!path) return args;

  std::ifstream in(*path);
  if (!in) throw DomainError("cannot read config file '" + *path + "'");
  std::vector<std::string> injected;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    line = trim(line.substr(0, line.find('#')));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw DomainError("config line " + std::to_string(lineno) + ": expected key=value");
    }
    const std::string key = trim(line.substr(0, eq));
    std::istringstream values(line.substr(eq + 1));
    std::vector<std::string> tokens;
    for (std::string tok; values >> tok;) tokens.push_back(tok);
    if (key.empty() || tokens.empty()) {
      throw DomainError("config line " + std::to_string(lineno) + ": empty key or value");
    }
    if (tokens.size() == 1) {
      injected.push_back("--" + key + "=" + tokens[0]);
    } else {
      injected.push_back("--" + key);
      injected.insert(injected.end(), tokens.begin(), tokens.end());
    }
  }
  auto at = std::find_first_of(args.begin(), args.end(), kCommands.begin(), kCommands.end());
  const auto pos = at == args.end() ? args.begin() : at + 1;
  args.insert(pos, injected.begin(), injected.end());
  return args;
}

std::string fmt10(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

void emit(const RunConfig& cfg, const std::string& text, std::ostream& out) {
  if (cfg.out.empty()) {
    out << text;
    return;
  }
  const std::string partial = cfg.out + ".partial";
  {
    std::ofstream f(partial, std::ios::binary | std::ios::trunc);
    if (!f) throw DomainError("cannot open output file '" + partial + "'");
    f << text;
    f.flush();
    if (!f) throw DomainError("failed writing '" + partial + "'");
  }
  std::error_code ec;
  std::filesystem::rename(partial, cfg.out, ec);
  if (ec) throw DomainError("cannot move '" + partial + "' to '" + cfg.out + "': " + ec.message());
}

std::string format_of(const RunConfig& cfg, const char* fallback) {
  return cfg.format.value_or(fallback);
}

Domain with_overrides(Domain d, const RunConfig& cfg) {
  if (cfg.rmax) d.r_max = *cfg.rmax;
  if (cfg.nodes_r) d.n_r = *cfg.nodes_r;
  if (cfg.nodes_theta) d.n_theta = *cfg.nodes_theta;
  if (cfg.nodes_phi) d.n_phi = *cfg.nodes_phi;
  return d;
}

HydrogenState hydrogen_state(const RunConfig& cfg) {
  HydrogenState s;
  if (!cfg.hydrogen.empty()) {
    s.n = cfg.hydrogen[0];
    s.idx = AngularIndex(cfg.hydrogen[1], cfg.hydrogen[2]);
  } else {
    s.n = cfg.n;
    s.idx = AngularIndex(cfg.ell, cfg.m);
  }
  s.a = cfg.a;
  s.validate();
  return s;
}

RadialProblem radial_problem(const RunConfig& cfg) {
  RadialProblem p;
  p.metric = MetricSpec::schwarzschild(cfg.r_s);
  p.eta_prime = cfg.eta;
  p.ell = cfg.ell;
  p.alpha_prime_sq = cfg.alpha_sq.value_or(0.0);
  p.r_start = cfg.r_start;
  p.r_end = cfg.r_end;
  p.init_value = cfg.init_value;
  p.init_slope = cfg.init_slope;
  if (cfg.horizon_delta) {
    const HorizonStart h = near_horizon_start(p, *cfg.horizon_delta);
    p.r_start = h.r_start;
    p.init_value = h.value;
    p.init_slope = h.slope;
  }
  p.validate();
  return p;
}

ModeFunction build_mode(const RunConfig& cfg) {
  if (!cfg.hydrogen.empty()) return make_hydrogen_mode(hydrogen_state(cfg), with_overrides(hydrogen_domain(hydrogen_state(cfg)), cfg));

  const ModeFamily family = parse_family(cfg.family);
  if (cfg.mu && family != ModeFamily::Free) throw DomainError("--mu applies to free modes only");
  if (cfg.sigma_r && family != ModeFamily::Localized) {
    throw DomainError("--sigma-r applies to localized modes only");
  }
  if (cfg.r_s != 0.0 && family != ModeFamily::SchwarzschildNumeric) {
    throw DomainError("--rs > 0 requires --family schwarzschild");
  }
  ModeSpec spec;
  spec.family = family;
  spec.eta = cfg.eta;
  spec.idx = AngularIndex(cfg.ell, cfg.m);
  spec.n_radial = cfg.n;
  switch (family) {
    case ModeFamily::Free: {
      // Under the default closure the requested alpha^2 only guards against
      // evanescent requests; any positive value will do.
      spec.alpha_sq = cfg.mu ? kg_alpha_sq(*cfg.mu) : cfg.alpha_sq.value_or(1.0);
      const SpectralClosure closure = cfg.mu || cfg.closure == "eta" ? SpectralClosure::ResolveEta
                                                                     : SpectralClosure::ResolveAlpha;
      Domain box;
      box.r_max = cfg.rbox;
      return make_free_mode(spec, with_overrides(box, cfg), closure);
    }
    case ModeFamily::Localized: {
      spec.beta = cfg.beta;
      if (cfg.alpha_sq) {
        if (cfg.sigma_r) throw DomainError("--alpha-sq and --sigma-r both fix beta's scale; give one");
        spec.n_radial = localized_quantum_number(*cfg.alpha_sq, cfg.eta, cfg.ell, cfg.beta);
      }
      std::optional<LocalizationConstraint> constraint;
      if (cfg.sigma_r) constraint = LocalizationConstraint{*cfg.sigma_r};
      const ModeFunction base = make_localized_mode(spec, constraint);
      const Domain d = with_overrides(base.support(), cfg);
      return d == base.support() ? base : make_localized_mode(spec, constraint, d);
    }
    case ModeFamily::Hydrogen: {
      const HydrogenState s = hydrogen_state(cfg);
      return make_hydrogen_mode(s, with_overrides(hydrogen_domain(s), cfg));
    }
    case ModeFamily::SchwarzschildNumeric: {
      const RadialSolution sol = solve_radial(radial_problem(cfg), cfg.rtol);
      return make_schwarzschild_mode(sol, cfg.m, cfg.nodes_theta.value_or(16), cfg.nodes_phi.value_or(16));
    }
  }
  throw DomainError("unknown family");
}

int cmd_mode(const RunConfig& cfg, std::ostream& out) {
  if (cfg.samples < 2) throw DomainError("--samples must be >= 2");
  const ModeFunction mode = build_mode(cfg);
  const Domain& d = mode.support();
  const Json spec = to_json(mode.spec(), d);
  std::vector<double> r(cfg.samples), raw(cfg.samples), normalized(cfg.samples);
  for (int i = 0; i < cfg.samples; ++i) {
    r[i] = d.r_min + (d.r_max - d.r_min) * double(i) / double(cfg.samples - 1);
    normalized[i] = mode.radial(r[i]).v;
    raw[i] = normalized[i] / mode.spec().norm;
  }
  std::ostringstream os;
  if (format_of(cfg, "csv") == "json") {
    Json j{{"mode", spec}, {"samples", Json{{"r", r}, {"R", raw}, {"R_normalized", normalized}}}};
    os << j.dump(2) << '\n';
  } else {
    os << "# mode=" << spec.dump() << '\n' << "r,R,R_normalized\n";
    for (int i = 0; i < cfg.samples; ++i) {
      os << fmt10(r[i]) << ',' << fmt10(raw[i]) << ',' << fmt10(normalized[i]) << '\n';
    }
  }
  emit(cfg, os.str(), out);
  return kOk;
}

const char* const kCoord[4] = {"tau", "r", "theta", "phi"};

int cmd_verify(const RunConfig& cfg, std::ostream& out) {
  if (!(cfg.tol > 0.0)) throw DomainError("--tol must be > 0");
  const ModeFunction mode = build_mode(cfg);
  const Domain& d = mode.support();
  const FisherReport rep = fisher_matrix(mode, d, std::max(cfg.tol, 1e-300));
  const ConstraintResult con = constraint_check(mode, mode.metric(), d, cfg.tol);
  std::optional<AppendixCheck> appendix;
  if (mode.spec().family == ModeFamily::Hydrogen) {
    appendix = appendix_fisher_check(hydrogen_state(cfg), d, cfg.tol);
  }
  const bool pass = rep.pass && con.all_pass && (!appendix || appendix->pass);

  std::ostringstream os;
  if (format_of(cfg, "json") == "json") {
    Json j{{"report", to_json(rep)}, {"constraints", to_json(con)}};
    if (appendix) j["appendix"] = to_json(*appendix);
    j["pass"] = pass;
    os << j.dump(2) << '\n';
  } else {
    os << "section,row,col,computed,expected,residual\n";
    for (int mu = 0; mu < 4; ++mu) {
      for (int nu = mu; nu < 4; ++nu) {
        os << "fisher," << kCoord[mu] << ',' << kCoord[nu] << ',' << fmt10(rep.entries[mu][nu])
           << ',' << fmt10(rep.expected[mu][nu]) << ',' << fmt10(rep.residuals[mu][nu]) << '\n';
      }
    }
    for (int mu = 0; mu < 4; ++mu) {
      os << "constraint," << kCoord[mu] << ",," << fmt10(con.lhs[mu]) << ','
         << fmt10(con.rhs[mu] + con.boundary[mu]) << ',' << fmt10(con.residual[mu]) << '\n';
    }
    if (appendix && appendix->reference) {
      for (int i = 0; i < 3; ++i) {
        os << "appendix," << kCoord[i + 1] << ",," << fmt10(appendix->integrals[i]) << ','
           << fmt10((*appendix->reference)[i]) << ',' << fmt10(appendix->reference_residuals[i])
           << '\n';
      }
    }
  }
  emit(cfg, os.str(), out);
  return pass ? kOk : kToleranceFailed;
}

int cmd_hydrogen(const RunConfig& cfg, std::ostream& out) {
  if (!(cfg.tol > 0.0)) throw DomainError("--tol must be > 0");
  const HydrogenState s = hydrogen_state(cfg);
  const AppendixCheck check = appendix_fisher_check(s, with_overrides(hydrogen_domain(s), cfg), cfg.tol);
  std::ostringstream os;
  if (format_of(cfg, "csv") == "json") {
    os << to_json(check).dump(2) << '\n';
  } else {
    const std::string state = "(" + std::to_string(s.n) + " " + std::to_string(s.idx.ell()) + " " +
                              std::to_string(s.idx.m()) + ")";
    os << "state,integral,reference,computed,right_side,residual\n";
    for (int i = 0; i < 3; ++i) {
      os << state << ',' << kCoord[i + 1] << ','
         << (check.reference ? fmt10((*check.reference)[i]) : std::string()) << ','
         << fmt10(check.integrals[i]) << ',' << fmt10(check.right_sides[i]) << ','
         << fmt10(check.reference ? check.reference_residuals[i] : check.side_residuals[i]) << '\n';
    }
  }
  emit(cfg, os.str(), out);
  return check.pass ? kOk : kToleranceFailed;
}

int cmd_radial(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const RadialSolution sol = solve_radial(radial_problem(cfg), cfg.rtol);
  std::ostringstream os;
  if (format_of(cfg, "csv") == "json") {
    os << to_json(sol).dump(2) << '\n';
  } else {
    write_radial_csv(os, sol);
  }
  emit(cfg, os.str(), out);
  std::ostream& summary = cfg.out.empty() ? err : out;
  summary << "max_residual=" << fmt10(sol.max_residual) << " points=" << sol.grid.size() << '\n';
  return kOk;
}

int cmd_distance(const RunConfig& cfg, std::ostream& out) {
  const double d = statistical_distance(cfg.rho_a, cfg.rho_b);
  std::ostringstream os;
  if (format_of(cfg, "csv") == "json") {
    os << Json{{"cells", cfg.rho_a.size()}, {"distance", d}}.dump(2) << '\n';
  } else {
    os << "cells,distance\n" << cfg.rho_a.size() << ',' << fmt10(d) << '\n';
  }
  emit(cfg, os.str(), out);
  return kOk;
}

void add_mode_options(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--family", cfg.family, "free | localized | hydrogen | schwarzschild")
      ->check(CLI::IsMember({"free", "localized", "hydrogen", "schwarzschild"}));
  sub->add_option("--eta", cfg.eta, "temporal frequency eta");
  sub->add_option("--ell", cfg.ell, "angular degree l");
  sub->add_option("--m", cfg.m, "azimuthal order m");
  sub->add_option("--n", cfg.n, "Dirichlet zero index (free), Laguerre degree (localized), principal number (hydrogen)");
  sub->add_option("--beta", cfg.beta, "localization multiplier beta");
  sub->add_option("--alpha-sq", cfg.alpha_sq, "multiplier sum alpha^2");
  sub->add_option("--mu", cfg.mu, "Klein-Gordon mass; sets alpha^2 = -mu^2 and solves for eta");
  sub->add_option("--sigma-r", cfg.sigma_r, "localization constraint <r^2> = sigma_r^2");
  sub->add_option("--closure", cfg.closure, "quantity absorbing the box quantization")
      ->check(CLI::IsMember({"alpha", "eta"}));
  sub->add_option("--a", cfg.a, "hydrogen length scale");
  sub->add_option("--rbox", cfg.rbox, "free-mode box radius");
  sub->add_option("--rmax", cfg.rmax, "outer radius of the domain");
  sub->add_option("--nodes-r", cfg.nodes_r, "radial quadrature nodes");
  sub->add_option("--nodes-theta", cfg.nodes_theta, "polar quadrature nodes");
  sub->add_option("--nodes-phi", cfg.nodes_phi, "azimuthal quadrature nodes");
}

void add_radial_options(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--rs", cfg.r_s, "Schwarzschild radius");
  sub->add_option("--rstart", cfg.r_start, "initial radius");
  sub->add_option("--rend", cfg.r_end, "final radius");
  sub->add_option("--init-value", cfg.init_value, "R(r_start)");
  sub->add_option("--init-slope", cfg.init_slope, "R'(r_start)");
  sub->add_option("--rtol", cfg.rtol, "solver relative tolerance");
  sub->add_option("--horizon-delta", cfg.horizon_delta,
                  "start at r_s(1 + delta) from the near-horizon series");
}

}  // namespace

int run(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Separable wave-function modes and Fisher-metric verification", "fisher-modes"};
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.require_subcommand(1);
  app.fallthrough();
  app.set_help_all_flag("--help-all");
  app.add_option("--config", "key=value file; explicit flags override it");
  app.add_option("--out", cfg.out, "output path (written via <path>.partial); stdout if omitted");
  app.add_option("--format", cfg.format, "csv | json")->check(CLI::IsMember({"csv", "json"}));

  auto* mode = app.add_subcommand("mode", "construct a mode; write R(r) samples and its spec");
  add_mode_options(mode, cfg);
  mode->add_option("--samples", cfg.samples, "number of radial samples");
  add_radial_options(mode, cfg);

  auto* verify = app.add_subcommand("verify", "Fisher matrix and constraint residuals of a mode");
  add_mode_options(verify, cfg);
  add_radial_options(verify, cfg);
  verify->add_option("--hydrogen", cfg.hydrogen, "hydrogen state n l m")->expected(3);
  verify->add_option("--tol", cfg.tol, "relative tolerance for the constraint residuals");

  auto* hydrogen = app.add_subcommand("hydrogen", "spatial Fisher integrals of a hydrogen state");
  hydrogen->add_option("--n", cfg.n, "principal quantum number");
  hydrogen->add_option("--ell", cfg.ell, "angular degree l");
  hydrogen->add_option("--m", cfg.m, "azimuthal order m");
  hydrogen->add_option("--a", cfg.a, "length scale");
  hydrogen->add_option("--state", cfg.hydrogen, "state n l m")->expected(3);
  hydrogen->add_option("--rmax", cfg.rmax, "outer radius");
  hydrogen->add_option("--nodes-r", cfg.nodes_r, "radial quadrature nodes");
  hydrogen->add_option("--nodes-theta", cfg.nodes_theta, "polar quadrature nodes");
  hydrogen->add_option("--nodes-phi", cfg.nodes_phi, "azimuthal quadrature nodes");
  hydrogen->add_option("--tol", cfg.tol, "relative tolerance");

  auto* radial = app.add_subcommand("radial", "solve the Schwarzschild radial equation");
  add_radial_options(radial, cfg);
  radial->add_option("--eta", cfg.eta, "frequency eta'");
  radial->add_option("--ell", cfg.ell, "angular degree l");
  radial->add_option("--alpha-sq", cfg.alpha_sq, "multiplier alpha'^2 (default 0)");

  auto* distance = app.add_subcommand("distance", "statistical distance of two distributions");
  distance->add_option("--rho-a", cfg.rho_a, "comma-separated probabilities")->delimiter(',')->required();
  distance->add_option("--rho-b", cfg.rho_b, "comma-separated probabilities")->delimiter(',')->required();

  try {
    std::vector<std::string> args = splice_config(raw_args);
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInvalidInput;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kInvalidInput;
  }

  try {
    if (*mode) return cmd_mode(cfg, out);
    if (*verify) return cmd_verify(cfg, out);
    if (*hydrogen) return cmd_hydrogen(cfg, out);
    if (*radial) return cmd_radial(cfg, out, err);
    if (*distance) return cmd_distance(cfg, out);
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kInvalidInput;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kNumericalFailure;
  } catch (const std::exception& e) {
    err << "failure: " << e.what() << '\n';
    return kNumericalFailure;
  }
  return kInvalidInput;
}

}  // namespace fisher_modes::cli
