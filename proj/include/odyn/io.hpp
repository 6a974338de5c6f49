#pragma once

#include <json.hpp>

#include "odyn/harness.hpp"

namespace odyn {

using json = nlohmann::ordered_json;

struct ProblemOptions {
    unsigned bound = 20;
    unsigned degree = 2;
    unsigned long steps = 40;
    unsigned long seed = 0;
    unsigned long bit_budget = 1000000;
};

struct ProblemSpec {
    GroupEndomorphism endo;
    ProblemOptions options;
};

/// {"additive": [["p/q", ...], ...], "torus": [[int, ...], ...], "options": {...}}
/// At least one block must be present; both blocks must be square and
/// nonsingular (dominance is validated on load).
ProblemSpec parse_problem_spec(const json& j);
ProblemSpec parse_problem_spec_text(const std::string& text);

json matrix_json(const QMatrix& m);
json matrix_json(const ZMatrix& m);
QMatrix parse_qmatrix(const json& j);
ZMatrix parse_zmatrix(const json& j);

json rational_function_json(const MultiRationalFunction& f);
MultiRationalFunction parse_rational_function(const json& j, std::size_t nvars,
                                              const NumberFieldPtr& field);

json verdict_json(const Verdict& v);

/// The subset of a serialized verdict that cmd_verify needs back.
struct ParsedVerdict {
    Verdict::Kind kind;
    CoordinateSystem coordinates = CoordinateSystem::Original;
    std::optional<MultiRationalFunction> fibration;
    std::optional<UnivariatePoly> field_minpoly;
    std::optional<WitnessPoint> witness;
    std::vector<std::string> caveats;
};
ParsedVerdict parse_verdict_json(const json& j, std::size_t k, std::size_t l);

json density_json(const DensityReport& report,
                  std::optional<unsigned long> adjusted_steps = std::nullopt);
json growth_json(const GrowthReport& report);
json orbit_json(const std::vector<OrbitPoint>& points);
json algebraic_number_json(const AlgebraicNumber& a);

std::string poly_coeff_array_to_text(const UnivariatePoly& p);

}  // namespace odyn
