#pragma once

#include <json.hpp>

#include "fisher_modes/fisher.hpp"
#include "fisher_modes/hydrogen.hpp"
#include "fisher_modes/modes.hpp"
#include "fisher_modes/quadrature.hpp"
#include "fisher_modes/schwarzschild_radial.hpp"

namespace fisher_modes {

using Json = nlohmann::ordered_json;

Json to_json(const Domain& dom);
Domain domain_from_json(const Json& j);

// {family, eta, ell, m, alpha_sq, beta, n_radial, norm, domain}
Json to_json(const ModeSpec& spec, const Domain& dom);
ModeSpec mode_spec_from_json(const Json& j);

// {mode, domain, entries, expected, residuals, imag_parts, pass, ...}
Json to_json(const FisherReport& rep);
Json to_json(const ConstraintResult& res);
Json to_json(const AppendixCheck& check);
Json to_json(const RadialSolution& sol);

}  // namespace fisher_modes
