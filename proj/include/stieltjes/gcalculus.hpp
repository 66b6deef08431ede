#pragma once

#include "stieltjes/derivator.hpp"
#include "stieltjes/gfunction.hpp"
#include "stieltjes/gmeasure.hpp"

#include <optional>

namespace stieltjes {

struct NumericDerivativeOptions {
    double step_scale = 1e-5;       // initial h = step_scale * T
    double jump_step_scale = 1e-6;  // probe offset used for f(t+) at jumps
    double min_dg = 1e-9;           // smallest admissible g-increment
};

/// Difference quotient in g following the point classification:
/// jump quotient on D_g, one-sided quotients at 0, T, N_g- and N_g+ and at
/// density breaks, symmetric quotient elsewhere, t -> t* inside C_g.
Complex g_derivative_numeric(const Derivator& d, const ScalarFn& f, double t,
                             const NumericDerivativeOptions& opt = {});

/// f(t+): extrapolated from the right at jumps, f(t) elsewhere.
Complex right_limit(const Derivator& d, const ScalarFn& f, double t, const NumericDerivativeOptions& opt = {});

/// Uses f.deriv1 when present, otherwise the numeric quotient.
Complex g_derivative(const Derivator& d, const GFunction& f, double t);

/// Uses f.deriv2, else differentiates f.deriv1, else differences twice.
Complex g_derivative2(const Derivator& d, const GFunction& f, double t);

enum class DerivativeAccuracy { Analytic, NumericOnAnalytic, NumericOnNumeric };
DerivativeAccuracy second_derivative_accuracy(const GFunction& f);
double accuracy_tolerance(DerivativeAccuracy a);

double product_rule_residual(const Derivator& d, const GFunction& f1, const GFunction& f2, double t);
/// Meaningful only where f2(t*)(f2(t*) + f2'(t) dg(t*)) != 0.
double quotient_rule_residual(const Derivator& d, const GFunction& f1, const GFunction& f2, double t);

/// Coefficient p with 1 + p(t_j) dg(t_j) != 0 at every jump.
class RegressiveFn {
public:
    static RegressiveFn make(const Derivator& d, GFunction p);
    static RegressiveFn constant(const Derivator& d, Complex lambda);

    const GFunction& p() const { return p_; }
    double margin() const { return margin_; }
    /// Set for constant coefficients, enabling the closed-form exponential.
    const std::optional<Complex>& constant_value() const { return constant_; }

private:
    RegressiveFn(GFunction p, double margin, std::optional<Complex> c)
        : p_(std::move(p)), margin_(margin), constant_(c) {}

    GFunction p_;
    double margin_;
    std::optional<Complex> constant_;
};

/// Throws RegressivityError naming the first jump where 1 + p dg vanishes.
double regressivity_margin(const Derivator& d, const ScalarFn& p, const char* what = "p");

Complex g_exponential(const Derivator& d, const RegressiveFn& p, double t);
Complex g_exponential(const Derivator& d, Complex lambda, double t);

/// exp_g(lambda; .) with deriv1 = lambda*v, deriv2 = lambda^2*v.
GFunction exp_g(const Derivator& d, Complex lambda);
/// exp_g(p; .) from a prefix table on grid(d,n); deriv1 = p(t*) v.
GFunction exp_g(const Derivator& d, const RegressiveFn& p, std::size_t n = kDefaultGridN);

double g_exp_product_check(const Derivator& d, const RegressiveFn& p, const RegressiveFn& q, double t);
double g_exp_inverse_check(const Derivator& d, const RegressiveFn& p, double t);

/// int_{[0,t)} eta / (1 + lambda dg) dmu_g.
Complex phi_resolvent(const Derivator& d, const ScalarFn& eta, Complex lambda, double t);
/// The eta == 1 case in closed form, with deriv1 = 1/(1 + lambda dg(t*)).
GFunction phi_resolvent_unit(const Derivator& d, Complex lambda);

/// v = phi exp_g(lambda; .) with phi = phi_resolvent_unit; derivatives satisfy
/// v^(n) = n lambda^(n-1) exp_g(lambda; .) + lambda^n v.
GFunction polynomial_exp(const Derivator& d, Complex lambda);
Complex polynomial_exp_solution(const Derivator& d, Complex lambda, unsigned n, double t);

}  // namespace stieltjes
