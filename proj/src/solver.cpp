#include "stieltjes/solver.hpp"

#include "stieltjes/errors.hpp"
#include "stieltjes/gcalculus.hpp"
#include "stieltjes/mutation.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

namespace stieltjes {

std::string method_tag(Method m) {
    switch (m) {
    case Method::ClosedFormDistinct: return "closed-form-distinct";
    case Method::ClosedFormDouble: return "closed-form-double";
    case Method::VariationOfParameters: return "varpar";
    case Method::Factorization: return "factorization";
    case Method::FirstOrder: return "first-order";
    }
    return "unknown";
}

std::pair<Complex, Complex> char_roots(Complex P, Complex Q) {
    const Complex s = std::sqrt(P * P - 4.0 * Q);
    // Pick the sign that avoids cancellation, then use Vieta for the other root.
    const Complex q = -0.5 * (P + (std::real(std::conj(P) * s) >= 0.0 ? s : -s));
    Complex r1 = q;
    Complex r2 = q != Complex{} ? Q / q : -P - q;
    if (std::abs(r1 - r2) < kDoubleRootGap) return {-0.5 * P, -0.5 * P};
    const double scale = std::max({1.0, std::abs(r1), std::abs(r2)});
    const bool same_re = std::abs(r1.real() - r2.real()) <= 1e-14 * scale;
    const bool swap = same_re ? r2.imag() < r1.imag() : r2.real() < r1.real();
    if (swap) std::swap(r1, r2);
    return {r1, r2};
}

SolutionBundle solve_first_order(const Derivator& d, const GFunction& p, const GFunction& f, Complex u0,
                                 std::size_t n) {
    RegressiveFn rp = RegressiveFn::make(d, p);
    GFunction e = exp_g(d, rp, n);
    const ScalarFn pv = p.value, fv = f.value, ev = e.value;
    auto I = std::make_shared<const PrefixIntegral>(
        d, [d, pv, fv, ev](double s) { return fv(s) / (ev(s) * (1.0 + pv(s) * d.jump(s))); }, n);
    ScalarFn u = [ev, I, u0](double t) { return ev(t) * (u0 + (*I)(t)); };
    ScalarFn u1 = [d, pv, fv, u](double t) {
        double ts = d.star(t);
        return pv(ts) * u(ts) + fv(ts);
    };
    ScalarFn u2;
    if (p.has_deriv1() && f.has_deriv1()) {
        const ScalarFn dp = p.deriv1, df = f.deriv1;
        u2 = [d, pv, dp, df, u, u1](double t) {
            double ts = d.star(t);
            Complex a = u1(ts);
            return dp(ts) * u(ts) + pv(ts) * a + dp(ts) * a * d.jump(ts) + df(ts);
        };
    }
    return {GFunction{u, u1, u2, "first-order"}, Method::FirstOrder};
}

SolutionPair homogeneous_basis_const(const Derivator& d, Complex P, Complex Q) {
    auto [l1, l2] = char_roots(P, Q);
    if (l1 == l2) return {exp_g(d, l1), polynomial_exp(d, l1)};
    return {exp_g(d, l1), exp_g(d, l2)};
}

SolutionBundle solve_const_ivp(const Derivator& d, Complex P, Complex Q, const GFunction& f, Complex x0,
                               Complex v0, std::size_t n) {
    auto [l1, l2] = char_roots(P, Q);
    const ScalarFn fv = f.value;
    if (l1 == l2) {
        const Complex l = l1;
        GFunction e = exp_g(d, l);
        GFunction phi = phi_resolvent_unit(d, l);
        const ScalarFn ev = e.value, pv = phi.value;
        auto I = std::make_shared<const PrefixIntegral>(
            d, [d, ev, fv, l](double s) { return fv(s) / (ev(s) * (1.0 + l * d.jump(s))); }, n);
        auto K = std::make_shared<const PrefixIntegral>(
            d,
            [d, ev, pv, fv, l](double s) {
                double dg = d.jump(s);
                Complex r = 1.0 + l * dg;
                return fv(s) / ev(s) * (pv(s) / r + dg / (r * r));
            },
            n);
        auto c1 = [K, x0](double t) { return x0 - (*K)(t); };
        auto c2 = [I, x0, v0, l](double t) { return v0 - l * x0 + (*I)(t); };
        ScalarFn v = [=](double t) {
            Complex et = ev(t);
            return c1(t) * et + c2(t) * pv(t) * et;
        };
        ScalarFn v1 = [=](double t) {
            Complex et = ev(t), y2 = pv(t) * et;
            return c1(t) * l * et + c2(t) * (et + l * y2);
        };
        ScalarFn v2 = [=](double t) {
            Complex et = ev(t), y2 = pv(t) * et;
            return c1(t) * l * l * et + c2(t) * (2.0 * l * et + l * l * y2) + fv(t);
        };
        return {GFunction{v, v1, v2, "closed-form-double"}, Method::ClosedFormDouble};
    }
    GFunction e1 = exp_g(d, l1), e2 = exp_g(d, l2);
    const ScalarFn ev1 = e1.value, ev2 = e2.value;
    auto I1 = std::make_shared<const PrefixIntegral>(
        d, [d, ev1, fv, l1](double s) { return fv(s) / (ev1(s) * (1.0 + l1 * d.jump(s))); }, n);
    auto I2 = std::make_shared<const PrefixIntegral>(
        d, [d, ev2, fv, l2](double s) { return fv(s) / (ev2(s) * (1.0 + l2 * d.jump(s))); }, n);
    const Complex A = (l2 * x0 - v0) / (l2 - l1);
    const Complex B = (v0 - l1 * x0) / (l2 - l1);
    const Complex gap = l1 - l2;
    auto c1 = [=](double t) { return A + (*I1)(t) / gap; };
    auto c2 = [=](double t) { return B - (*I2)(t) / gap; };
    ScalarFn v = [=](double t) { return c1(t) * ev1(t) + c2(t) * ev2(t); };
    ScalarFn v1 = [=](double t) { return c1(t) * l1 * ev1(t) + c2(t) * l2 * ev2(t); };
    ScalarFn v2 = [=](double t) { return c1(t) * l1 * l1 * ev1(t) + c2(t) * l2 * l2 * ev2(t) + fv(t); };
    return {GFunction{v, v1, v2, "closed-form-distinct"}, Method::ClosedFormDistinct};
}

SolutionBundle solve_const_factorization(const Derivator& d, Complex P, Complex Q, const GFunction& f, Complex x0,
                                         Complex v0, std::size_t n) {
    auto [l1, l2] = char_roots(P, Q);
    regressivity_margin(d, [l1 = l1](double) { return l1; }, "lambda1");
    regressivity_margin(d, [l2 = l2](double) { return l2; }, "lambda2");
    const ScalarFn fv = f.value;
    const ScalarFn ev1 = exp_g(d, l1).value, ev2 = exp_g(d, l2).value;
    // exp_g((l1 - l2)/(1 + l2 dg)) through its own prefix table.
    const Complex gap = l1 - l2;
    GFunction ratio = exp_g(
        d, RegressiveFn::make(d, GFunction{[d, gap, l2 = l2](double s) { return gap / (1.0 + l2 * d.jump(s)); }}), n);
    const ScalarFn rv = ratio.value;
    auto h = [d, rv, l2 = l2](double s) { return rv(s) / (1.0 + l2 * d.jump(s)); };
    auto J = std::make_shared<const PrefixIntegral>(
        d, [d, ev1, fv, l1 = l1](double s) { return fv(s) / (ev1(s) * (1.0 + l1 * d.jump(s))); }, n);
    auto Phi = std::make_shared<const PrefixIntegral>(d, h, n);
    auto Psi = std::make_shared<const PrefixIntegral>(d, [h, J](double s) { return h(s) * (*J)(s); }, n);
    const Complex a = v0 - l2 * x0;
    ScalarFn v = [=](double t) { return ev2(t) * (x0 + a * (*Phi)(t) + (*Psi)(t)); };
    ScalarFn w = [=](double t) { return ev1(t) * (a + (*J)(t)); };
    ScalarFn v1 = [=, l2 = l2](double t) { return l2 * v(t) + w(t); };
    ScalarFn v2 = [=, l1 = l1, l2 = l2](double t) { return l2 * v1(t) + l1 * w(t) + fv(t); };
    return {GFunction{v, v1, v2, "factorization"}, Method::Factorization};
}

GFunction second_homogeneous_solution(const Derivator& d, const GFunction& P, const GFunction& Q,
                                      const GFunction& y1, std::size_t n) {
    if (!y1.has_deriv1()) throw ContractError("second homogeneous solution requires y1'");
    check_cond_pq(d, P, Q);
    const ScalarFn Pv = P.value, Qv = Q.value, yv = y1.value, yd = y1.deriv1;
    for (double t : d.grid(n)) {
        if (!(std::abs(yv(t)) > 1e-9))
            throw PreconditionError("y1 vanishes near t=" + format_abscissa(t), t);
        if (!(std::abs(yv(t) + yd(t) * d.jump(t)) > 1e-9))
            throw PreconditionError("y1(t+) vanishes at t=" + format_abscissa(t), t);
    }
    auto pE = [d, Pv, Qv](double s) { return -Pv(s) + Qv(s) * d.jump(s); };
    GFunction E = exp_g(d, RegressiveFn::make(d, GFunction{pE}), n);
    const ScalarFn Ev = E.value;
    auto phi = std::make_shared<const PrefixIntegral>(
        d, [d, Ev, yv, yd](double s) { return Ev(s) / (yv(s) * (yv(s) + yd(s) * d.jump(s))); }, n);
    ScalarFn v = [phi, yv](double t) { return (*phi)(t) * yv(t); };
    ScalarFn v1 = [d, phi, yv, yd, Ev](double t) {
        double ts = d.star(t);
        return (*phi)(ts) * yd(ts) + Ev(ts) / yv(ts);
    };
    ScalarFn v2;
    if (y1.has_deriv2()) {
        const ScalarFn ydd = y1.deriv2;
        v2 = [d, phi, yv, yd, ydd, Ev, pE](double t) {
            const double ts = d.star(t);
            const double dg = d.jump(ts);
            const Complex y = yv(ts), y_1 = yd(ts), y_2 = ydd(ts), e = Ev(ts);
            const Complex dphi = e / (y * (y + y_1 * dg));
            const Complex dE = pE(ts) * e;
            const Complex r = 1.0 / y;
            const Complex dr = -y_1 / (y * (y + y_1 * dg));
            return dphi * (y_1 + y_2 * dg) + (*phi)(ts) * y_2 + dE * r + e * dr + dE * dr * dg;
        };
    }
    return {v, v1, v2, "phi*y1"};
}

SolutionBundle particular_solution(const Derivator& d, const GFunction& P, const GFunction& Q,
                                   const GFunction& f, const SolutionPair& pair, std::size_t n) {
    if (!pair.y1.has_deriv1() || !pair.y2.has_deriv1())
        throw ContractError("particular solution requires analytic first derivatives");
    check_cond_pq(d, P, Q);
    for (double t : d.grid(n)) {
        Complex w = wronskian_g(d, pair, t);
        if (!(std::abs(w) > 1e-12))
            throw PreconditionError("g-Wronskian vanishes at t=" + format_abscissa(t), t);
    }
    const SolutionPair pr = pair;
    const ScalarFn fv = f.value;
    const double sign = mutation_active(Mutation::FlipDefc1Sign) ? 1.0 : -1.0;
    auto c1 = std::make_shared<const PrefixIntegral>(
        d,
        [d, pr, fv, sign](double s) {
            return sign * (pr.y2.value(s) + pr.y2.deriv1(s) * d.jump(s)) * fv(s) / wronskian_g(d, pr, s);
        },
        n);
    auto c2 = std::make_shared<const PrefixIntegral>(
        d,
        [d, pr, fv](double s) {
            return (pr.y1.value(s) + pr.y1.deriv1(s) * d.jump(s)) * fv(s) / wronskian_g(d, pr, s);
        },
        n);
    ScalarFn v = [=](double t) { return (*c1)(t) * pr.y1.value(t) + (*c2)(t) * pr.y2.value(t); };
    ScalarFn v1 = [=](double t) { return (*c1)(t) * pr.y1.deriv1(t) + (*c2)(t) * pr.y2.deriv1(t); };
    ScalarFn v2;
    if (pr.y1.has_deriv2() && pr.y2.has_deriv2())
        v2 = [=](double t) { return (*c1)(t) * pr.y1.deriv2(t) + (*c2)(t) * pr.y2.deriv2(t) + fv(t); };
    return {GFunction{v, v1, v2, "varpar"}, Method::VariationOfParameters};
}

SolutionBundle solve_ivp(const Derivator& d, const ProblemSpec& spec, const SolutionPair& pair, std::size_t n) {
    const auto& [y1, y2] = pair;
    if (!y1.has_deriv1() || !y2.has_deriv1()) throw ContractError("solve_ivp requires analytic first derivatives");
    const Complex a = y1.value(0.0), a1 = y1.deriv1(0.0), b = y2.value(0.0), b1 = y2.deriv1(0.0);
    const Complex w0 = a * b1 - b * a1;
    const double scale = std::max(1.0, std::max(std::abs(a), std::abs(b)) * std::max(std::abs(a1), std::abs(b1)));
    if (!(std::abs(w0) > 1e-14 * scale)) throw PreconditionError("initial Wronskian vanishes", 0.0);
    const Complex k1 = (spec.x0 * b1 - spec.v0 * b) / w0;
    const Complex k2 = (spec.v0 * a - spec.x0 * a1) / w0;
    SolutionBundle vp = particular_solution(d, spec.P, spec.Q, spec.f, pair, n);
    const GFunction p = vp.v;
    const SolutionPair pr = pair;
    ScalarFn v = [=](double t) { return p.value(t) + k1 * pr.y1.value(t) + k2 * pr.y2.value(t); };
    ScalarFn v1 = [=](double t) { return p.deriv1(t) + k1 * pr.y1.deriv1(t) + k2 * pr.y2.deriv1(t); };
    ScalarFn v2;
    if (p.has_deriv2())
        v2 = [=](double t) { return p.deriv2(t) + k1 * pr.y1.deriv2(t) + k2 * pr.y2.deriv2(t); };
    return {GFunction{v, v1, v2, "varpar"}, Method::VariationOfParameters};
}

double residual(const Derivator& d, const SolutionBundle& sol, const ProblemSpec& spec, std::size_t n,
                ResidualMode mode) {
    const GFunction& v = sol.v;
    double worst = 0.0;
    for (double t : d.grid(n)) {
        if (d.star(t) != t) continue;
        Complex x = v.value(t);
        Complex x1, x2;
        switch (mode) {
        case ResidualMode::Analytic:
            x1 = g_derivative(d, v, t);
            x2 = g_derivative2(d, v, t);
            break;
        case ResidualMode::NumericSecond:
            x1 = g_derivative(d, v, t);
            x2 = g_derivative2(d, GFunction{v.value, v.deriv1, {}, v.label}, t);
            break;
        case ResidualMode::Numeric:
            x1 = g_derivative_numeric(d, v.value, t);
            x2 = g_derivative2(d, GFunction{v.value}, t);
            break;
        }
        double r = std::abs(x2 + spec.P.value(t) * x1 + spec.Q.value(t) * x - spec.f.value(t));
        worst = std::max(worst, r);
    }
    return worst;
}

}  // namespace stieltjes
