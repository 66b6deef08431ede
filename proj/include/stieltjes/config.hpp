#pragma once

#include "stieltjes/derivator.hpp"
#include "stieltjes/gfunction.hpp"
#include "stieltjes/helmholtz.hpp"
#include "stieltjes/solver.hpp"

#include <json.hpp>

#include <optional>
#include <vector>

namespace stieltjes {

using Json = nlohmann::json;

/// A function read from a config, with the structure needed for dispatch.
struct ParsedFunction {
    GFunction fn;
    std::optional<Complex> constant;  // set for kind "const"
    std::vector<double> breaks;       // piecewise-const switch points
};

/// Number, [re, im] pair, or one of the strings "nan", "inf", "-inf".
Complex parse_complex(const Json& j);
double parse_real(const Json& j);

Derivator parse_derivator(const Json& j);

/// Kinds: const, piecewise-const, poly, exp, sin, cos.
/// piecewise-const takes "value": [{"until": b, "value": v}, ..., {"value": v}],
/// left-continuous, with every "until" a jump abscissa of d.
ParsedFunction parse_function(const Json& j, const Derivator& d);

struct ParsedProblem {
    ProblemSpec spec;
    ParsedFunction P;
    ParsedFunction Q;
    ParsedFunction f;
};

ParsedProblem parse_problem(const Json& j, const Derivator& d);

struct HelmholtzConfig {
    double w1 = 1.0;
    double w2 = 2.0;
    double t1 = 1.0;
    double T = 3.0;
    Complex x0{1.0, 0.0};
    Complex v0{0.0, 0.0};
    Json f;  // forcing, parsed per derivator; null means zero
    std::vector<double> deltas{0.0, 0.4, 0.2, 0.1, 0.05};
};

HelmholtzConfig parse_helmholtz(const Json& j);

}  // namespace stieltjes
