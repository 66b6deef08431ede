#include "stieltjes/helmholtz.hpp"

#include "stieltjes/errors.hpp"
#include "stieltjes/gcalculus.hpp"
#include "stieltjes/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

namespace stieltjes {

namespace {

constexpr Complex kI{0.0, 1.0};

struct SpliceData {
    HelmholtzRoots r;
    double dg = 0.0;
    Complex e11, e12, e21, e22;  // exp_g(l; t1)
};

SpliceData splice_data(const Derivator& d, const HelmholtzSpec& spec) {
    SpliceData s;
    s.r = helmholtz_roots(spec);
    const double t1 = *spec.t1;
    s.dg = d.jump(t1);
    s.e11 = g_exponential(d, s.r.l11, t1);
    s.e12 = g_exponential(d, s.r.l12, t1);
    s.e21 = g_exponential(d, s.r.l21, t1);
    s.e22 = g_exponential(d, s.r.l22, t1);
    return s;
}

GFunction splice(const Derivator& d, Complex left_root, Complex a1, Complex a2, const HelmholtzRoots& r,
                 std::optional<double> t1) {
    const ScalarFn el = exp_g(d, left_root).value;
    const ScalarFn e1 = exp_g(d, r.l21).value, e2 = exp_g(d, r.l22).value;
    const double cut = t1.value_or(d.T());
    auto piece = [=](double t, Complex ml, Complex m1, Complex m2) {
        if (t <= cut) return ml * el(t);
        return a1 * m1 * e1(t) + a2 * m2 * e2(t);
    };
    const Complex l = left_root, p = r.l21, q = r.l22;
    ScalarFn v = [=](double t) { return piece(t, 1.0, 1.0, 1.0); };
    ScalarFn v1 = [=](double t) { return piece(t, l, p, q); };
    ScalarFn v2 = [=](double t) { return piece(t, l * l, p * p, q * q); };
    return {v, v1, v2, "helmholtz"};
}

}  // namespace

HelmholtzRoots helmholtz_roots(const HelmholtzSpec& spec) {
    return {kI * spec.w1, -kI * spec.w1, kI * spec.w2, -kI * spec.w2};
}

void validate_helmholtz(const Derivator& d, const HelmholtzSpec& spec) {
    if (!std::isfinite(spec.w1) || !std::isfinite(spec.w2)) throw ConfigError("frequencies must be finite");
    if (spec.w1 == 0.0 || spec.w2 == 0.0)
        throw SingularSystemError("frequencies must be nonzero (splice determinant is proportional to w2)");
    if (spec.t1) {
        if (!d.is_jump(*spec.t1))
            throw PreconditionError("switch time t1=" + format_abscissa(*spec.t1) + " is not a jump abscissa",
                                    *spec.t1);
    } else if (spec.w1 != spec.w2) {
        throw PreconditionError("a switch time is required when w1 != w2");
    }
    const auto r = helmholtz_roots(spec);
    for (Complex l : {r.l11, r.l12, r.l21, r.l22}) regressivity_margin(d, [l](double) { return l; }, "i*w");
}

GFunction helmholtz_w0_squared(const HelmholtzSpec& spec) {
    const double a = spec.w1 * spec.w1, b = spec.w2 * spec.w2;
    const std::optional<double> t1 = spec.t1;
    ScalarFn v = [a, b, t1](double t) { return Complex(!t1 || t <= *t1 ? a : b); };
    return {v, "w0^2"};
}

ProblemSpec helmholtz_problem(const HelmholtzSpec& spec) {
    return {GFunction::constant(0.0), helmholtz_w0_squared(spec), spec.f, spec.x0, spec.v0};
}

AlphaCoefficients alpha_closed_form(const Derivator& d, const HelmholtzSpec& spec) {
    validate_helmholtz(d, spec);
    if (!spec.t1) return {1.0, 0.0, 0.0, 1.0};
    const SpliceData s = splice_data(d, spec);
    const auto& r = s.r;
    const Complex den1 = s.e21 * (1.0 + r.l21 * s.dg) * (r.l22 - r.l21);
    const Complex den2 = s.e22 * (1.0 + r.l22 * s.dg) * (r.l22 - r.l21);
    auto first = [&](Complex l, Complex e) { return e * (1.0 + l * s.dg) * (r.l22 - l) / den1; };
    auto second = [&](Complex l, Complex e) { return e * (1.0 + l * s.dg) * (l - r.l21) / den2; };
    return {first(r.l11, s.e11), second(r.l11, s.e11), first(r.l12, s.e12), second(r.l12, s.e12)};
}

AlphaCoefficients alpha_linear_solve(const Derivator& d, const HelmholtzSpec& spec) {
    validate_helmholtz(d, spec);
    if (!spec.t1) return {1.0, 0.0, 0.0, 1.0};
    const SpliceData s = splice_data(d, spec);
    const auto& r = s.r;
    const Complex c1 = s.e21 * (1.0 + r.l21 * s.dg), c2 = s.e22 * (1.0 + r.l22 * s.dg);
    // Rows: value continuity and derivative continuity.
    Complex m[2][2] = {{c1, c2}, {r.l21 * c1, r.l22 * c2}};
    const double col1 = std::hypot(std::abs(m[0][0]), std::abs(m[1][0]));
    const double col2 = std::hypot(std::abs(m[0][1]), std::abs(m[1][1]));
    const Complex det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    if (!(std::abs(det) > 1e-13 * col1 * col2))
        throw SingularSystemError("splice system at t1 is singular", *spec.t1);

    auto solve = [&](Complex b0, Complex b1) -> std::pair<Complex, Complex> {
        Complex a[2][2] = {{m[0][0], m[0][1]}, {m[1][0], m[1][1]}};
        Complex b[2] = {b0, b1};
        if (std::abs(a[1][0]) > std::abs(a[0][0])) {
            std::swap(a[0][0], a[1][0]);
            std::swap(a[0][1], a[1][1]);
            std::swap(b[0], b[1]);
        }
        const Complex factor = a[1][0] / a[0][0];
        const Complex u11 = a[1][1] - factor * a[0][1];
        const Complex y1 = b[1] - factor * b[0];
        const Complex x2 = y1 / u11;
        const Complex x1 = (b[0] - a[0][1] * x2) / a[0][0];
        return {x1, x2};
    };
    const Complex X1 = s.e11 * (1.0 + r.l11 * s.dg), X2 = s.e12 * (1.0 + r.l12 * s.dg);
    auto [a11, a21] = solve(X1, r.l11 * X1);
    auto [a12, a22] = solve(X2, r.l12 * X2);
    return {a11, a21, a12, a22};
}

GcondResiduals gcond_residuals(const Derivator& d, const HelmholtzSpec& spec, const AlphaCoefficients& a) {
    if (!spec.t1) return {};
    const SpliceData s = splice_data(d, spec);
    const auto& r = s.r;
    const Complex c1 = s.e21 * (1.0 + r.l21 * s.dg), c2 = s.e22 * (1.0 + r.l22 * s.dg);
    GcondResiduals out;
    auto check = [&](Complex l, Complex e, Complex x, Complex y) {
        const Complex lhs = (1.0 + l * s.dg) * e;
        out.value = std::max(out.value, std::abs(lhs - (x * c1 + y * c2)));
        out.derivative = std::max(out.derivative, std::abs(l * lhs - (x * r.l21 * c1 + y * r.l22 * c2)));
    };
    check(r.l11, s.e11, a.a11, a.a21);
    check(r.l12, s.e12, a.a12, a.a22);
    return out;
}

SolutionPair helmholtz_basis(const Derivator& d, const HelmholtzSpec& spec) {
    const AlphaCoefficients a = alpha_closed_form(d, spec);
    const HelmholtzRoots r = helmholtz_roots(spec);
    return {splice(d, r.l11, a.a11, a.a21, r, spec.t1), splice(d, r.l12, a.a12, a.a22, r, spec.t1)};
}

SolutionBundle helmholtz_homogeneous(const Derivator& d, const HelmholtzSpec& spec) {
    const SolutionPair pair = helmholtz_basis(d, spec);
    const HelmholtzRoots r = helmholtz_roots(spec);
    const Complex gap = r.l12 - r.l11;
    const Complex k1 = (r.l12 * spec.x0 - spec.v0) / gap;
    const Complex k2 = (spec.v0 - r.l11 * spec.x0) / gap;
    const auto& [y1, y2] = pair;
    ScalarFn v = [=](double t) { return k1 * y1.value(t) + k2 * y2.value(t); };
    ScalarFn v1 = [=](double t) { return k1 * y1.deriv1(t) + k2 * y2.deriv1(t); };
    ScalarFn v2 = [=](double t) { return k1 * y1.deriv2(t) + k2 * y2.deriv2(t); };
    return {GFunction{v, v1, v2, "helmholtz-homogeneous"}, Method::ClosedFormDistinct};
}

Complex helmholtz_wronskian(const Derivator& d, const HelmholtzSpec& spec, double t) {
    const HelmholtzRoots r = helmholtz_roots(spec);
    const ScalarFn w2 = helmholtz_w0_squared(spec).value;
    RegressiveFn p = RegressiveFn::make(d, GFunction{[d, w2](double s) { return w2(s) * d.jump(s); }});
    const double dg = d.jump(t);
    return (r.l12 - r.l11) * (1.0 + w2(t) * dg * dg) * g_exponential(d, p, t);
}

SolutionBundle helmholtz_particular(const Derivator& d, const HelmholtzSpec& spec, std::size_t n) {
    const SolutionPair pair = helmholtz_basis(d, spec);
    const AlphaCoefficients a = alpha_closed_form(d, spec);
    const HelmholtzRoots r = helmholtz_roots(spec);
    const ScalarFn fv = spec.f.value;
    const ScalarFn w2 = helmholtz_w0_squared(spec).value;
    const GFunction E =
        exp_g(d, RegressiveFn::make(d, GFunction{[d, w2](double s) { return w2(s) * d.jump(s); }}), n);
    const ScalarFn Ev = E.value;
    const Complex gap = r.l12 - r.l11;
    // W_g in closed form.
    auto W = [=](double s) {
        const double dg = d.jump(s);
        return gap * (1.0 + w2(s) * dg * dg) * Ev(s);
    };
    const SolutionPair pr = pair;
    auto C1 = std::make_shared<const PrefixIntegral>(
        d, [=](double s) { return -(pr.y2.value(s) + pr.y2.deriv1(s) * d.jump(s)) * fv(s) / W(s); }, n);
    auto C2 = std::make_shared<const PrefixIntegral>(
        d, [=](double s) { return (pr.y1.value(s) + pr.y1.deriv1(s) * d.jump(s)) * fv(s) / W(s); }, n);

    using Coeffs = std::pair<Complex, Complex>;
    std::function<Coeffs(double)> coeffs = [C1, C2](double t) -> Coeffs { return {(*C1)(t), (*C2)(t)}; };

    if (spec.t1) {
        const double t1 = *spec.t1;
        const double dg1 = d.jump(t1);
        const ScalarFn e11 = exp_g(d, r.l11).value, e12 = exp_g(d, r.l12).value;
        const ScalarFn e21 = exp_g(d, r.l21).value, e22 = exp_g(d, r.l22).value;
        auto left_integral = [&](const ScalarFn& e, Complex l) {
            PrefixIntegral tab(d, [=](double s) { return fv(s) / (e(s) * (1.0 + l * d.jump(s))); }, n);
            return tab(t1) + fv(t1) * dg1 / (e(t1) * (1.0 + l * dg1));
        };
        const Complex A1 = left_integral(e11, r.l11);
        const Complex A2 = left_integral(e12, r.l12);
        auto I1 = std::make_shared<const PrefixIntegral>(
            d,
            [=](double s) {
                if (s <= t1) return Complex{};
                return e21(s) * fv(s) / ((1.0 + r.l22 * d.jump(s)) * Ev(s));
            },
            n);
        auto I2 = std::make_shared<const PrefixIntegral>(
            d,
            [=](double s) {
                if (s <= t1) return Complex{};
                return e22(s) * fv(s) / ((1.0 + r.l21 * d.jump(s)) * Ev(s));
            },
            n);
        const Complex den = r.l11 - r.l12;
        coeffs = [=](double t) -> Coeffs {
            if (t <= t1) return {(*C1)(t), (*C2)(t)};
            const Complex i1 = (*I1)(t), i2 = (*I2)(t);
            return {(A1 + a.a12 * i1 + a.a22 * i2) / den, -(A2 + a.a11 * i1 + a.a21 * i2) / den};
        };
    }
    ScalarFn v = [=](double t) {
        auto [c1, c2] = coeffs(t);
        return c1 * pr.y1.value(t) + c2 * pr.y2.value(t);
    };
    ScalarFn v1 = [=](double t) {
        auto [c1, c2] = coeffs(t);
        return c1 * pr.y1.deriv1(t) + c2 * pr.y2.deriv1(t);
    };
    ScalarFn v2 = [=](double t) {
        auto [c1, c2] = coeffs(t);
        return c1 * pr.y1.deriv2(t) + c2 * pr.y2.deriv2(t) + fv(t);
    };
    return {GFunction{v, v1, v2, "helmholtz-particular"}, Method::VariationOfParameters};
}

SolutionBundle helmholtz_solution(const Derivator& d, const HelmholtzSpec& spec, std::size_t n) {
    const GFunction h = helmholtz_homogeneous(d, spec).v;
    const GFunction p = helmholtz_particular(d, spec, n).v;
    ScalarFn v = [=](double t) { return h.value(t) + p.value(t); };
    ScalarFn v1 = [=](double t) { return h.deriv1(t) + p.deriv1(t); };
    ScalarFn v2 = [=](double t) { return h.deriv2(t) + p.deriv2(t); };
    return {GFunction{v, v1, v2, "helmholtz"}, Method::VariationOfParameters};
}

Derivator helmholtz_derivator(double T, double t1, double delta) {
    if (delta == 0.0) return Derivator::identity(T);
    return Derivator::checked(T, {{0.0, T, Density::constant(1.0)}}, {{t1, delta}});
}

GFunction classical_helmholtz(double w1, double w2, double t1, Complex x0, Complex v0) {
    // State at t1 from the left; the right branch restarts from it with frequency w2.
    const Complex x1 = x0 * std::cos(w1 * t1) + v0 / w1 * std::sin(w1 * t1);
    const Complex v1 = -x0 * w1 * std::sin(w1 * t1) + v0 * std::cos(w1 * t1);
    auto eval = [=](double t, int k) -> Complex {
        const bool left = t <= t1;
        const double w = left ? w1 : w2;
        const double s = left ? t : t - t1;
        const Complex a = left ? x0 : x1;
        const Complex b = left ? v0 : v1;
        const double c = std::cos(w * s), sn = std::sin(w * s);
        switch (k) {
        case 0: return a * c + b / w * sn;
        case 1: return -a * w * sn + b * c;
        default: return -w * w * (a * c + b / w * sn);
        }
    };
    return {[eval](double t) { return eval(t, 0); }, [eval](double t) { return eval(t, 1); },
            [eval](double t) { return eval(t, 2); }, "classical"};
}

std::vector<LimitRow> classical_limit_study(double w1, double w2, double t1, double T, Complex x0, Complex v0,
                                            const std::vector<double>& deltas, std::size_t n) {
    const GFunction ref = classical_helmholtz(w1, w2, t1, x0, v0);
    std::vector<LimitRow> rows;
    for (double delta : deltas) {
        const Derivator d = helmholtz_derivator(T, t1, delta);
        HelmholtzSpec spec;
        spec.w1 = w1;
        spec.w2 = w2;
        if (delta != 0.0 || w1 != w2) spec.t1 = t1;
        spec.x0 = x0;
        spec.v0 = v0;
        double err = 0.0;
        if (delta == 0.0) {
            // The classical entry is measured against the independent RK4 reference.
            const double a = w1 * w1, b = w2 * w2;
            const auto traj = rk4_trajectory(
                0.0, [a, b, t1](double t) { return t <= t1 ? a : b; }, [](double) { return Complex{}; }, x0, v0, T,
                std::max<std::size_t>(16 * n, 65536), {t1});
            for (const auto& st : traj) err = std::max(err, std::abs(st.x - ref.value(st.t)));
            rows.push_back({delta, err});
            continue;
        }
        const GFunction v = helmholtz_homogeneous(d, spec).v;
        for (double t : d.grid(n)) err = std::max(err, std::abs(v.value(t) - ref.value(t)));
        rows.push_back({delta, err});
    }
    return rows;
}

}  // namespace stieltjes
