#include "stieltjes/wronskian.hpp"

#include "stieltjes/errors.hpp"
#include "stieltjes/gcalculus.hpp"
#include "stieltjes/mutation.hpp"

#include <algorithm>
#include <cmath>

namespace stieltjes {

namespace {

void require_derivs(const SolutionPair& pair, bool second) {
    if (!pair.y1.has_deriv1() || !pair.y2.has_deriv1())
        throw ContractError("Wronskian requires analytic first derivatives");
    if (second && (!pair.y1.has_deriv2() || !pair.y2.has_deriv2()))
        throw ContractError("g-Wronskian requires analytic second derivatives");
}

Complex determinant(Complex a, Complex a1, Complex a2, Complex b, Complex b1, Complex b2, double dg) {
    Complex w = a * b1 - b * a1 + (a * b2 - b * a2) * dg;
    if (!mutation_active(Mutation::DropWronskianDg2)) w += (a1 * b2 - b1 * a2) * dg * dg;
    return w;
}

// -P + Q dg, regressive exactly when condPQ holds.
RegressiveFn wronskian_exponent(const Derivator& d, const GFunction& P, const GFunction& Q) {
    check_cond_pq(d, P, Q);
    ScalarFn pv = P.value, qv = Q.value;
    return RegressiveFn::make(d, GFunction{[d, pv, qv](double s) { return -pv(s) + qv(s) * d.jump(s); }});
}

}  // namespace

Complex wronskian_g(const Derivator& d, const SolutionPair& pair, double t) {
    require_derivs(pair, true);
    const auto& [y1, y2] = pair;
    return determinant(y1.value(t), y1.deriv1(t), y1.deriv2(t), y2.value(t), y2.deriv1(t), y2.deriv2(t), d.jump(t));
}

Complex wronskian_numeric(const Derivator& d, const GFunction& y1, const GFunction& y2, double t) {
    return determinant(y1.value(t), g_derivative(d, y1, t), g_derivative2(d, y1, t), y2.value(t),
                       g_derivative(d, y2, t), g_derivative2(d, y2, t), d.jump(t));
}

Complex wronskian_with_limits(const Derivator& d, const SolutionPair& pair, double t) {
    require_derivs(pair, false);
    const auto& [y1, y2] = pair;
    Complex a = right_limit(d, y1.value, t), a1 = right_limit(d, y1.deriv1, t);
    Complex b = right_limit(d, y2.value, t), b1 = right_limit(d, y2.deriv1, t);
    return a * b1 - b * a1;
}

Complex wronskian_simplified(const Derivator&, const SolutionPair& pair, double t) {
    require_derivs(pair, false);
    const auto& [y1, y2] = pair;
    return y1.value(t) * y2.deriv1(t) - y2.value(t) * y1.deriv1(t);
}

double wronskian_relation_residual(const Derivator& d, const SolutionPair& pair, const GFunction& P,
                                   const GFunction& Q, double t) {
    const double dg = d.jump(t);
    Complex factor = 1.0 - P.value(t) * dg + Q.value(t) * dg * dg;
    return std::abs(wronskian_g(d, pair, t) - factor * wronskian_simplified(d, pair, t));
}

void check_cond_pq(const Derivator& d, const GFunction& P, const GFunction& Q) {
    for (const auto& j : d.jumps()) {
        Complex c = 1.0 - P.value(j.t) * j.size + Q.value(j.t) * j.size * j.size;
        if (!(std::abs(c) > 1e-14))
            throw PreconditionError("1 - P*dg + Q*dg^2 vanishes at jump t=" + format_abscissa(j.t), j.t);
    }
}

Complex wronskian_exp_form(const Derivator& d, const GFunction& P, const GFunction& Q, Complex w0, double t) {
    RegressiveFn p = wronskian_exponent(d, P, Q);
    if (w0 == Complex{}) return {};
    return w0 * g_exponential(d, p, t);
}

Complex wronskian_inverse(const Derivator& d, const GFunction& P, const GFunction& Q, Complex w0, double t) {
    if (w0 == Complex{}) throw PreconditionError("Wronskian inverse requires a nonzero initial Wronskian");
    check_cond_pq(d, P, Q);
    ScalarFn pv = P.value, qv = Q.value;
    auto cond = [d, pv, qv](double s) {
        double dg = d.jump(s);
        return 1.0 - pv(s) * dg + qv(s) * dg * dg;
    };
    GFunction q{[d, pv, qv, cond](double s) { return (pv(s) - qv(s) * d.jump(s)) / cond(s); }};
    RegressiveFn qq = RegressiveFn::make(d, q);
    return g_exponential(d, qq, t) / (w0 * cond(t));
}

Independence independence_test(const Derivator& d, const SolutionPair& pair, std::size_t n) {
    require_derivs(pair, false);
    const bool full = pair.y1.has_deriv2() && pair.y2.has_deriv2();
    const auto grid = d.grid(n);
    double n1 = 0.0, n2 = 0.0;
    for (double t : grid) {
        n1 = std::max(n1, std::abs(pair.y1.value(t)));
        n2 = std::max(n2, std::abs(pair.y2.deriv1(t)));
    }
    const double cutoff = 1e-12 * std::max(1.0, n1 * n2);
    for (double t : grid) {
        Complex w = full ? wronskian_g(d, pair, t) : wronskian_simplified(d, pair, t);
        if (std::abs(w) > cutoff) return Independence::Independent;
    }
    return Independence::Inconclusive;
}

}  // namespace stieltjes
