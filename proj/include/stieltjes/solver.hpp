#pragma once

#include "stieltjes/derivator.hpp"
#include "stieltjes/gfunction.hpp"
#include "stieltjes/gmeasure.hpp"
#include "stieltjes/wronskian.hpp"

#include <string>
#include <utility>

namespace stieltjes {

/// v'' + P v' + Q v = f on [0,T], v(0) = x0, v'(0) = v0 (derivatives in g).
struct ProblemSpec {
    GFunction P;
    GFunction Q;
    GFunction f;
    Complex x0;
    Complex v0;
};

enum class Method { ClosedFormDistinct, ClosedFormDouble, VariationOfParameters, Factorization, FirstOrder };

std::string method_tag(Method m);

struct SolutionBundle {
    GFunction v;  // carries deriv1 and, where available, deriv2
    Method method = Method::VariationOfParameters;
};

/// Roots of l^2 + P l + Q, ordered by (Re, Im); a double root is -P/2 twice.
std::pair<Complex, Complex> char_roots(Complex P, Complex Q);
/// Roots closer than this are treated as a double root.
inline constexpr double kDoubleRootGap = 1e-8;

/// u' = p u + f, u(0) = u0.
SolutionBundle solve_first_order(const Derivator& d, const GFunction& p, const GFunction& f, Complex u0,
                                 std::size_t n = kDefaultGridN);

SolutionPair homogeneous_basis_const(const Derivator& d, Complex P, Complex Q);

SolutionBundle solve_const_ivp(const Derivator& d, Complex P, Complex Q, const GFunction& f, Complex x0,
                               Complex v0, std::size_t n = kDefaultGridN);

/// Factorized form through the nested integral; independent of solve_const_ivp.
SolutionBundle solve_const_factorization(const Derivator& d, Complex P, Complex Q, const GFunction& f, Complex x0,
                                         Complex v0, std::size_t n = kDefaultGridN);

/// y2 = phi y1 with phi = int exp_g(-P + Q dg) / (y1 (y1 + y1' dg)).
GFunction second_homogeneous_solution(const Derivator& d, const GFunction& P, const GFunction& Q,
                                      const GFunction& y1, std::size_t n = kDefaultGridN);

/// v_p = c1 y1 + c2 y2 with Wronskian-weighted coefficient integrals; v_p(0) = v_p'(0) = 0.
SolutionBundle particular_solution(const Derivator& d, const GFunction& P, const GFunction& Q,
                                   const GFunction& f, const SolutionPair& pair, std::size_t n = kDefaultGridN);

SolutionBundle solve_ivp(const Derivator& d, const ProblemSpec& spec, const SolutionPair& pair,
                         std::size_t n = kDefaultGridN);

enum class ResidualMode {
    Analytic,       // analytic derivatives where present
    NumericSecond,  // analytic v', numerically differentiated v''
    Numeric,        // both derivatives numeric
};

/// max over grid(d,n) of |v'' + P v' + Q v - f|; C_g interiors are covered through t*.
double residual(const Derivator& d, const SolutionBundle& sol, const ProblemSpec& spec,
                std::size_t n = kDefaultGridN, ResidualMode mode = ResidualMode::Analytic);

}  // namespace stieltjes
