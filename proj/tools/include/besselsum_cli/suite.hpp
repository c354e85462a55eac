#pragma once

#include <string>
#include <vector>

#include "json.hpp"

namespace besselsum::cli {

using Json = nlohmann::ordered_json;

struct SuiteOptions {
    /// Fewer random bases in criterion 1.
    bool quick = false;
    int threads = 1;
};

struct CriterionResult {
    int id = 0;
    std::string title;
    bool passed = false;
    /// One-line summary of the worst observed quantity against its bound.
    std::string detail;
    double seconds = 0.0;
    Json data;
};

CriterionResult criterion_main_identity(const SuiteOptions& opts);
CriterionResult criterion_integer_closed_form(const SuiteOptions& opts);
CriterionResult criterion_discrete_torus(const SuiteOptions& opts);
CriterionResult criterion_gauss_sums(const SuiteOptions& opts);
CriterionResult criterion_eta(const SuiteOptions& opts);
CriterionResult criterion_jacobi(const SuiteOptions& opts);
CriterionResult criterion_continuum_limit(const SuiteOptions& opts);
CriterionResult criterion_codes(const SuiteOptions& opts);
CriterionResult criterion_heat(const SuiteOptions& opts);
CriterionResult criterion_eta_probe(const SuiteOptions& opts);

/// Criteria 1 to 10 in order. An exception inside a criterion marks it failed.
std::vector<CriterionResult> run_suite(const SuiteOptions& opts);

/// "criterion N: PASS title (detail)".
std::string format_line(const CriterionResult& r);

} // namespace besselsum::cli
