#pragma once

#include "stieltjes/derivator.hpp"
#include "stieltjes/gfunction.hpp"
#include "stieltjes/gmeasure.hpp"
#include "stieltjes/solver.hpp"
#include "stieltjes/wronskian.hpp"

#include <optional>
#include <vector>

namespace stieltjes {

/// v'' + w0^2 v = f with w0 = w1 on [0,t1] and w2 on (t1,T].
///
/// t1 must be a jump abscissa. It may be omitted only when w1 == w2.
struct HelmholtzSpec {
    double w1 = 1.0;
    double w2 = 1.0;
    std::optional<double> t1;
    Complex x0{1.0, 0.0};
    Complex v0{0.0, 0.0};
    GFunction f = GFunction::constant(0.0);
};

/// l11 = i w1, l12 = -i w1, l21 = i w2, l22 = -i w2.
struct HelmholtzRoots {
    Complex l11, l12, l21, l22;
};

/// a11 = alpha_1^1, a21 = alpha_2^1, a12 = alpha_1^2, a22 = alpha_2^2.
struct AlphaCoefficients {
    Complex a11, a21, a12, a22;
};

struct GcondResiduals {
    double value = 0.0;       // continuity of (1 + l dg) exp_g across t1
    double derivative = 0.0;  // same for the first derivative
};

HelmholtzRoots helmholtz_roots(const HelmholtzSpec& spec);
void validate_helmholtz(const Derivator& d, const HelmholtzSpec& spec);

/// w0^2 as a left-continuous coefficient.
GFunction helmholtz_w0_squared(const HelmholtzSpec& spec);
ProblemSpec helmholtz_problem(const HelmholtzSpec& spec);

AlphaCoefficients alpha_closed_form(const Derivator& d, const HelmholtzSpec& spec);
/// Partial-pivoting solve of the 2x2 splice system at t1.
AlphaCoefficients alpha_linear_solve(const Derivator& d, const HelmholtzSpec& spec);
GcondResiduals gcond_residuals(const Derivator& d, const HelmholtzSpec& spec, const AlphaCoefficients& a);

SolutionPair helmholtz_basis(const Derivator& d, const HelmholtzSpec& spec);
SolutionBundle helmholtz_homogeneous(const Derivator& d, const HelmholtzSpec& spec);
SolutionBundle helmholtz_particular(const Derivator& d, const HelmholtzSpec& spec, std::size_t n = kDefaultGridN);
/// Homogeneous plus particular part.
SolutionBundle helmholtz_solution(const Derivator& d, const HelmholtzSpec& spec, std::size_t n = kDefaultGridN);

/// (l12 - l11)(1 + w0^2 dg^2) exp_g(w0^2 dg; t).
Complex helmholtz_wronskian(const Derivator& d, const HelmholtzSpec& spec, double t);

/// g(t) = t + delta * [t > t1] on [0,T]; delta == 0 gives the identity.
Derivator helmholtz_derivator(double T, double t1, double delta);

/// Unforced solution of the classical problem (delta = 0) with analytic derivatives.
/// deriv2 at t1 takes the left value.
GFunction classical_helmholtz(double w1, double w2, double t1, Complex x0, Complex v0);

struct LimitRow {
    double delta = 0.0;
    double max_error = 0.0;
};

std::vector<LimitRow> classical_limit_study(double w1, double w2, double t1, double T, Complex x0, Complex v0,
                                            const std::vector<double>& deltas, std::size_t n = kDefaultGridN);

}  // namespace stieltjes
