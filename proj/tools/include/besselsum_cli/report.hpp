#pragma once

#include <besselsum/lattice_sums.hpp>

#include "json.hpp"

namespace besselsum::cli {

using Json = nlohmann::ordered_json;

inline Json complex_json(Complex z) { return Json::array({z.real(), z.imag()}); }

inline Json report_json(const IdentityReport& r) {
    Json j;
    j["lhs"] = complex_json(r.lhs);
    j["rhs"] = complex_json(r.rhs);
    j["abs_residual"] = r.abs_residual;
    j["tolerance"] = r.tolerance;
    j["lhs_tail_bound"] = r.lhs_tail_bound;
    j["rhs_tail_bound"] = r.rhs_tail_bound;
    j["lhs_truncation_radius"] = r.lhs_truncation_radius;
    j["guaranteed"] = r.guaranteed;
    j["verdict"] = r.passed() ? "pass" : "fail";
    return j;
}

} // namespace besselsum::cli
