#pragma once

#include "stieltjes/gfunction.hpp"

namespace stieltjes {

struct QuadratureOptions {
    double abs_tol = 1e-10;
    int max_depth = 40;
};

/// Adaptive 8-point Gauss-Legendre on [a,b]. The rule is open, so f is never
/// sampled at a or b. Throws IntegrationError on a non-finite sample.
Complex gauss_adaptive(const ScalarFn& f, double a, double b, const QuadratureOptions& opt = {});

}  // namespace stieltjes
