#include "fisher_modes/serialize.hpp"

#include <string>

#include "fisher_modes/errors.hpp"

namespace fisher_modes {
namespace {

Json matrix(const Matrix4& m) {
  Json rows = Json::array();
  for (const auto& row : m) {
    Json r = Json::array();
    for (double v : row) r.push_back(v + 0.0);  // no "-0.0" in reports
    rows.push_back(r);
  }
  return rows;
}

template <class T>
T field(const Json& j, const char* key) {
  if (!j.contains(key)) throw DomainError(std::string("missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("field '") + key + "': " + e.what());
  }
}

const char* const kCoordNames[4] = {"tau", "r", "theta", "phi"};

}  // namespace

Json to_json(const Domain& dom) {
  return Json{{"r_min", dom.r_min},
              {"r_max", dom.r_max},
              {"n_r", dom.n_r},
              {"n_theta", dom.n_theta},
              {"n_phi", dom.n_phi}};
}

Domain domain_from_json(const Json& j) {
  Domain dom;
  dom.r_min = field<double>(j, "r_min");
  dom.r_max = field<double>(j, "r_max");
  dom.n_r = field<int>(j, "n_r");
  dom.n_theta = field<int>(j, "n_theta");
  dom.n_phi = field<int>(j, "n_phi");
  return dom;
}

Json to_json(const ModeSpec& spec, const Domain& dom) {
  return Json{{"family", std::string(family_name(spec.family))},
              {"eta", spec.eta},
              {"ell", spec.idx.ell()},
              {"m", spec.idx.m()},
              {"alpha_sq", spec.alpha_sq},
              {"beta", spec.beta},
              {"n_radial", spec.n_radial},
              {"norm", spec.norm},
              {"domain", to_json(dom)}};
}

ModeSpec mode_spec_from_json(const Json& j) {
  ModeSpec spec;
  spec.family = parse_family(field<std::string>(j, "family"));
  spec.eta = field<double>(j, "eta");
  spec.idx = AngularIndex(field<int>(j, "ell"), field<int>(j, "m"));
  spec.alpha_sq = field<double>(j, "alpha_sq");
  spec.beta = field<double>(j, "beta");
  spec.n_radial = field<int>(j, "n_radial");
  spec.norm = field<double>(j, "norm");
  return spec;
}

Json to_json(const FisherReport& rep) {
  Json checked = Json::array();
  for (const auto& row : rep.checked) checked.push_back(row);
  return Json{{"mode", to_json(rep.mode, rep.domain)},
              {"domain", to_json(rep.domain)},
              {"metric", Json{{"kind", rep.metric.r_s() == 0.0 ? "minkowski" : "schwarzschild"},
                              {"r_s", rep.metric.r_s()}}},
              {"coordinates", Json::array({"tau", "r", "theta", "phi"})},
              {"entries", matrix(rep.entries)},
              {"expected", matrix(rep.expected)},
              {"residuals", matrix(rep.residuals)},
              {"imag_parts", matrix(rep.imag_parts)},
              {"checked", checked},
              {"metric_diag", rep.metric_diag},
              {"norm", rep.norm},
              {"tol", rep.tol},
              {"offdiag_tol", rep.offdiag_tol},
              {"pass", rep.pass}};
}

Json to_json(const ConstraintResult& res) {
  Json rows = Json::array();
  for (int mu = 0; mu < 4; ++mu) {
    rows.push_back(Json{{"coordinate", kCoordNames[mu]},
                        {"lhs", res.lhs[mu]},
                        {"rhs", res.rhs[mu]},
                        {"boundary", res.boundary[mu]},
                        {"residual", res.residual[mu]},
                        {"pass", res.pass[mu]}});
  }
  return Json{{"constraints", rows}, {"tol", res.tol}, {"pass", res.all_pass}};
}

Json to_json(const AppendixCheck& check) {
  Json rows = Json::array();
  for (int i = 0; i < 3; ++i) {
    Json row{{"integral", kCoordNames[i + 1]},
             {"computed", check.integrals[i]},
             {"right_side", check.right_sides[i]},
             {"side_residual", check.side_residuals[i]}};
    if (check.reference) {
      row["reference"] = (*check.reference)[i];
      row["reference_residual"] = check.reference_residuals[i];
    } else {
      row["reference"] = nullptr;
    }
    rows.push_back(row);
  }
  return Json{{"state", Json{{"n", check.state.n},
                             {"ell", check.state.idx.ell()},
                             {"m", check.state.idx.m()},
                             {"a", check.state.a}}},
              {"domain", to_json(check.domain)},
              {"integrals", rows},
              {"quarter_factor_absorbed", check.quarter_factor_absorbed},
              {"tol", check.tol},
              {"pass", check.pass}};
}

Json to_json(const RadialSolution& sol) {
  const RadialProblem& p = sol.problem;
  return Json{{"problem", Json{{"r_s", p.metric.r_s()},
                               {"eta_prime", p.eta_prime},
                               {"ell", p.ell},
                               {"alpha_prime_sq", p.alpha_prime_sq},
                               {"r_start", p.r_start},
                               {"r_end", p.r_end},
                               {"init_value", p.init_value},
                               {"init_slope", p.init_slope}}},
              {"rel_tol", sol.rel_tol},
              {"max_residual", sol.max_residual},
              {"r", sol.grid},
              {"R", sol.values},
              {"dR_dr", sol.slopes},
              {"residual", sol.residuals}};
}

}  // namespace fisher_modes
