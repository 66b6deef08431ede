#pragma once

#include "stieltjes/derivator.hpp"
#include "stieltjes/gfunction.hpp"

#include <cstddef>

namespace stieltjes {

struct SolutionPair {
    GFunction y1;
    GFunction y2;
};

/// y1 y2' - y2 y1' + (y1 y2'' - y2 y1'') dg + (y1' y2'' - y2' y1'') dg^2.
Complex wronskian_g(const Derivator& d, const SolutionPair& pair, double t);
/// Same determinant with numeric first and second g-derivatives.
Complex wronskian_numeric(const Derivator& d, const GFunction& y1, const GFunction& y2, double t);
/// y1(t+) y2'(t+) - y2(t+) y1'(t+) with right limits extrapolated numerically.
Complex wronskian_with_limits(const Derivator& d, const SolutionPair& pair, double t);
/// y1 y2' - y2 y1'.
Complex wronskian_simplified(const Derivator& d, const SolutionPair& pair, double t);

double wronskian_relation_residual(const Derivator& d, const SolutionPair& pair, const GFunction& P,
                                   const GFunction& Q, double t);

/// Throws PreconditionError at the first jump where 1 - P dg + Q dg^2 vanishes.
void check_cond_pq(const Derivator& d, const GFunction& P, const GFunction& Q);

/// w0 exp_g(-P + Q dg; t).
Complex wronskian_exp_form(const Derivator& d, const GFunction& P, const GFunction& Q, Complex w0, double t);
/// Multiplicative inverse of W_g for homogeneous solutions with simplified Wronskian w0 at 0.
Complex wronskian_inverse(const Derivator& d, const GFunction& P, const GFunction& Q, Complex w0, double t);

enum class Independence { Independent, Inconclusive };
/// Never reports dependence: a vanishing Wronskian on the grid is inconclusive.
Independence independence_test(const Derivator& d, const SolutionPair& pair, std::size_t n = 256);

}  // namespace stieltjes
