#include "stieltjes/gcalculus.hpp"

#include "stieltjes/errors.hpp"
#include "stieltjes/mutation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <sstream>

namespace stieltjes {

namespace {

constexpr double kRegressivityFloor = 1e-14;

// f(t+) at a jump, extrapolated quadratically in g from probes at h, 2h, 4h to the right.
Complex extrapolate_right(const Derivator& d, const ScalarFn& f, double t, const NumericDerivativeOptions& opt) {
    const double cap = 0.125 * (d.structural_after(t) - t);
    const double h = std::min(opt.jump_step_scale * d.T(), cap);
    const double gp = d.eval_g_right(t);
    const double u1 = d.eval_g(t + h) - gp;
    const double u2 = d.eval_g(t + 2.0 * h) - gp;
    const double u3 = d.eval_g(t + 4.0 * h) - gp;
    const Complex f1 = f(t + h);
    if (!(u2 > u1 && u3 > u2)) return f1;
    const Complex f2 = f(t + 2.0 * h), f3 = f(t + 4.0 * h);
    const double l1 = u2 * u3 / ((u1 - u2) * (u1 - u3));
    const double l2 = u1 * u3 / ((u2 - u1) * (u2 - u3));
    const double l3 = u1 * u2 / ((u3 - u1) * (u3 - u2));
    return l1 * f1 + l2 * f2 + l3 * f3;
}

// One-sided quotients in g at steps h, 2h, 4h, extrapolated quadratically to zero g-offset.
Complex one_sided(const Derivator& d, const ScalarFn& f, double t, int dir, const NumericDerivativeOptions& opt) {
    double room = dir > 0 ? d.structural_after(t) - t : t - d.structural_before(t);
    double cap = 0.5 * room;
    double h = std::min(opt.step_scale * d.T(), 0.25 * cap);
    double g0 = d.eval_g(t);
    double u1 = d.eval_g(t + dir * h) - g0;
    while (std::abs(u1) < opt.min_dg) {
        if (8.0 * h > cap) throw DerivativeError("derivative undefined at t=" + format_abscissa(t), t);
        h *= 2.0;
        u1 = d.eval_g(t + dir * h) - g0;
    }
    const double u2 = d.eval_g(t + 2.0 * dir * h) - g0;
    const double u3 = d.eval_g(t + 4.0 * dir * h) - g0;
    const Complex f0 = f(t);
    const Complex q1 = (f(t + dir * h) - f0) / u1;
    const Complex q2 = (f(t + 2.0 * dir * h) - f0) / u2;
    const Complex q3 = (f(t + 4.0 * dir * h) - f0) / u3;
    if (u2 == u1 || u3 == u2) return q1;
    // Lagrange weights of the nodes u1, u2, u3 evaluated at 0.
    const double l1 = u2 * u3 / ((u1 - u2) * (u1 - u3));
    const double l2 = u1 * u3 / ((u2 - u1) * (u2 - u3));
    const double l3 = u1 * u2 / ((u3 - u1) * (u3 - u2));
    return l1 * q1 + l2 * q2 + l3 * q3;
}

// Symmetric quotient in g; steps h and 2h combined to cancel the h^2 term.
Complex central(const Derivator& d, const ScalarFn& f, double t, const NumericDerivativeOptions& opt) {
    double room = std::min(d.structural_after(t) - t, t - d.structural_before(t));
    double cap = 0.5 * room;
    double h = std::min(opt.step_scale * d.T(), 0.5 * cap);
    double dg = d.eval_g(t + h) - d.eval_g(t - h);
    while (dg < 2.0 * opt.min_dg) {
        if (4.0 * h > cap) throw DerivativeError("derivative undefined at t=" + format_abscissa(t), t);
        h *= 2.0;
        dg = d.eval_g(t + h) - d.eval_g(t - h);
    }
    const double dg2 = d.eval_g(t + 2.0 * h) - d.eval_g(t - 2.0 * h);
    const Complex q1 = (f(t + h) - f(t - h)) / dg;
    const Complex q2 = (f(t + 2.0 * h) - f(t - 2.0 * h)) / dg2;
    return (4.0 * q1 - q2) / 3.0;
}

Complex ipow(Complex z, unsigned k) {
    Complex r{1.0, 0.0};
    while (k-- > 0) r *= z;
    return r;
}

Complex const_exponent(const Derivator& d, Complex lambda, double t) {
    Complex acc = lambda * d.continuous_part(t);
    if (mutation_active(Mutation::DropExpJumpTerm)) return acc;
    for (const auto& j : d.jumps()) {
        if (j.t >= t) break;
        acc += std::log(1.0 + lambda * j.size);
    }
    return acc;
}

}  // namespace

Complex g_derivative_numeric(const Derivator& d, const ScalarFn& f, double t, const NumericDerivativeOptions& opt) {
    if (!(t >= 0.0 && t <= d.T())) throw DomainError("t=" + format_abscissa(t) + " outside [0,T]");
    const double ts = d.star(t);
    const PointClass pc = d.classify(ts);
    switch (pc.tag) {
    case PointClass::Tag::Jump:
        return (extrapolate_right(d, f, ts, opt) - f(ts)) / pc.jump_size;
    case PointClass::Tag::NgPlus:
        return one_sided(d, f, ts, +1, opt);
    case PointClass::Tag::NgMinus:
        return one_sided(d, f, ts, -1, opt);
    default:
        break;
    }
    if (ts == 0.0 || d.density_breaks_at(ts)) return one_sided(d, f, ts, +1, opt);
    if (ts == d.T()) return one_sided(d, f, ts, -1, opt);
    return central(d, f, ts, opt);
}

Complex right_limit(const Derivator& d, const ScalarFn& f, double t, const NumericDerivativeOptions& opt) {
    if (!d.is_jump(t)) return f(t);
    return extrapolate_right(d, f, t, opt);
}

Complex g_derivative(const Derivator& d, const GFunction& f, double t) {
    if (f.has_deriv1()) return f.deriv1(t);
    return g_derivative_numeric(d, f.value, t);
}

Complex g_derivative2(const Derivator& d, const GFunction& f, double t) {
    if (f.has_deriv2()) return f.deriv2(t);
    if (f.has_deriv1()) return g_derivative_numeric(d, f.deriv1, t);
    // Outer step is larger so inner rounding noise is not amplified.
    NumericDerivativeOptions outer;
    outer.step_scale = 1e-3;
    outer.jump_step_scale = 1e-4;
    ScalarFn first = [&d, value = f.value](double s) { return g_derivative_numeric(d, value, s); };
    return g_derivative_numeric(d, first, t, outer);
}

DerivativeAccuracy second_derivative_accuracy(const GFunction& f) {
    if (f.has_deriv2()) return DerivativeAccuracy::Analytic;
    if (f.has_deriv1()) return DerivativeAccuracy::NumericOnAnalytic;
    return DerivativeAccuracy::NumericOnNumeric;
}

double accuracy_tolerance(DerivativeAccuracy a) {
    switch (a) {
    case DerivativeAccuracy::Analytic: return 1e-9;
    case DerivativeAccuracy::NumericOnAnalytic: return 1e-6;
    case DerivativeAccuracy::NumericOnNumeric: return 1e-4;
    }
    return 1e-4;
}

double product_rule_residual(const Derivator& d, const GFunction& f1, const GFunction& f2, double t) {
    if (!f1.has_deriv1() || !f2.has_deriv1()) throw ContractError("product rule requires analytic first derivatives");
    ScalarFn prod = [&](double s) { return f1.value(s) * f2.value(s); };
    const double ts = d.star(t);
    const double dg = d.jump(ts);
    Complex a = f1.deriv1(t), b = f2.deriv1(t);
    Complex rhs = a * f2.value(ts) + b * f1.value(ts) + a * b * dg;
    return std::abs(g_derivative_numeric(d, prod, t) - rhs);
}

double quotient_rule_residual(const Derivator& d, const GFunction& f1, const GFunction& f2, double t) {
    if (!f1.has_deriv1() || !f2.has_deriv1()) throw ContractError("quotient rule requires analytic first derivatives");
    ScalarFn quot = [&](double s) { return f1.value(s) / f2.value(s); };
    const double ts = d.star(t);
    const double dg = d.jump(ts);
    Complex a = f1.deriv1(t), b = f2.deriv1(t);
    Complex u = f1.value(ts), w = f2.value(ts);
    Complex rhs = (a * w - u * b) / (w * (w + b * dg));
    return std::abs(g_derivative_numeric(d, quot, t) - rhs);
}

double regressivity_margin(const Derivator& d, const ScalarFn& p, const char* what) {
    double margin = std::numeric_limits<double>::infinity();
    for (const auto& j : d.jumps()) {
        double m = std::abs(1.0 + p(j.t) * j.size);
        if (!(m > kRegressivityFloor))
            throw RegressivityError(std::string("1 + ") + what + "*dg vanishes at jump t=" + format_abscissa(j.t),
                                    j.t);
        margin = std::min(margin, m);
    }
    return margin;
}

RegressiveFn RegressiveFn::make(const Derivator& d, GFunction p) {
    double m = regressivity_margin(d, p.value);
    return {std::move(p), m, std::nullopt};
}

RegressiveFn RegressiveFn::constant(const Derivator& d, Complex lambda) {
    double m = regressivity_margin(d, [lambda](double) { return lambda; }, "lambda");
    return {GFunction::constant(lambda), m, lambda};
}

Complex g_exponential(const Derivator& d, Complex lambda, double t) {
    if (!(t >= 0.0 && t <= d.T())) throw DomainError("t=" + format_abscissa(t) + " outside [0,T]");
    regressivity_margin(d, [lambda](double) { return lambda; }, "lambda");
    return std::exp(const_exponent(d, lambda, t));
}

Complex g_exponential(const Derivator& d, const RegressiveFn& p, double t) {
    if (p.constant_value()) return g_exponential(d, *p.constant_value(), t);
    if (!(t >= 0.0 && t <= d.T())) throw DomainError("t=" + format_abscissa(t) + " outside [0,T]");
    const ScalarFn& pv = p.p().value;
    Complex acc = integrate_continuous(d, pv, 0.0, t);
    if (!mutation_active(Mutation::DropExpJumpTerm)) {
        for (const auto& j : d.jumps()) {
            if (j.t >= t) break;
            acc += std::log(1.0 + pv(j.t) * j.size);
        }
    }
    return std::exp(acc);
}

GFunction exp_g(const Derivator& d, Complex lambda) {
    std::ostringstream name;
    name.precision(17);
    name << "lambda=" << lambda;
    regressivity_margin(d, [lambda](double) { return lambda; }, name.str().c_str());
    auto value = [d, lambda](double t) { return std::exp(const_exponent(d, lambda, t)); };
    return {value, [value, lambda](double t) { return lambda * value(t); },
            [value, lambda](double t) { return lambda * lambda * value(t); }, "exp_g"};
}

GFunction exp_g(const Derivator& d, const RegressiveFn& p, std::size_t n) {
    if (p.constant_value()) return exp_g(d, *p.constant_value());
    const ScalarFn pv = p.p().value;
    PrefixIntegral::JumpTerm jt = [pv](double t, double dj) -> Complex {
        if (mutation_active(Mutation::DropExpJumpTerm)) return {};
        return std::log(1.0 + pv(t) * dj);
    };
    auto table = std::make_shared<const PrefixIntegral>(d, pv, n, jt);
    ScalarFn value = [table](double t) { return std::exp((*table)(t)); };
    ScalarFn d1 = [d, pv, value](double t) {
        double ts = d.star(t);
        return pv(ts) * value(ts);
    };
    ScalarFn d2;
    if (p.p().has_deriv1()) {
        const ScalarFn dp = p.p().deriv1;
        d2 = [d, pv, dp, value](double t) {
            double ts = d.star(t);
            Complex pp = pv(ts), q = dp(ts);
            return value(ts) * (q + pp * pp + q * pp * d.jump(ts));
        };
    }
    return {value, d1, d2, "exp_g"};
}

double g_exp_product_check(const Derivator& d, const RegressiveFn& p, const RegressiveFn& q, double t) {
    const ScalarFn pv = p.p().value, qv = q.p().value;
    GFunction r{[d, pv, qv](double s) {
        Complex a = pv(s), b = qv(s);
        return a + b + a * b * d.jump(s);
    }};
    RegressiveFn rr = RegressiveFn::make(d, r);
    return std::abs(g_exponential(d, p, t) * g_exponential(d, q, t) - g_exponential(d, rr, t));
}

double g_exp_inverse_check(const Derivator& d, const RegressiveFn& p, double t) {
    const ScalarFn pv = p.p().value;
    GFunction q{[d, pv](double s) {
        Complex a = pv(s);
        return -a / (1.0 + a * d.jump(s));
    }};
    RegressiveFn qq = RegressiveFn::make(d, q);
    return std::abs(g_exponential(d, p, t) * g_exponential(d, qq, t) - 1.0);
}

Complex phi_resolvent(const Derivator& d, const ScalarFn& eta, Complex lambda, double t) {
    regressivity_margin(d, [lambda](double) { return lambda; }, "lambda");
    ScalarFn integrand = [&](double s) { return eta(s) / (1.0 + lambda * d.jump(s)); };
    return integrate(d, integrand, t);
}

GFunction phi_resolvent_unit(const Derivator& d, Complex lambda) {
    regressivity_margin(d, [lambda](double) { return lambda; }, "lambda");
    ScalarFn value = [d, lambda](double t) {
        Complex acc = d.continuous_part(t);
        for (const auto& j : d.jumps()) {
            if (j.t >= t) break;
            acc += j.size / (1.0 + lambda * j.size);
        }
        return acc;
    };
    ScalarFn d1 = [d, lambda](double t) { return 1.0 / (1.0 + lambda * d.jump(d.star(t))); };
    return {value, d1, {}, "phi"};
}

GFunction polynomial_exp(const Derivator& d, Complex lambda) {
    GFunction e = exp_g(d, lambda);
    GFunction phi = phi_resolvent_unit(d, lambda);
    ScalarFn ev = e.value, pv = phi.value;
    ScalarFn v = [ev, pv](double t) { return pv(t) * ev(t); };
    ScalarFn d1 = [ev, v, lambda](double t) { return ev(t) + lambda * v(t); };
    ScalarFn d2 = [ev, v, lambda](double t) { return 2.0 * lambda * ev(t) + lambda * lambda * v(t); };
    return {v, d1, d2, "phi*exp_g"};
}

Complex polynomial_exp_solution(const Derivator& d, Complex lambda, unsigned n, double t) {
    GFunction v = polynomial_exp(d, lambda);
    if (n == 0) return v.value(t);
    return static_cast<double>(n) * ipow(lambda, n - 1) * g_exponential(d, lambda, t) + ipow(lambda, n) * v.value(t);
}

}  // namespace stieltjes
