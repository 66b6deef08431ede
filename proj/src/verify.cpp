#include "stieltjes/verify.hpp"

#include "stieltjes/gcalculus.hpp"
#include "stieltjes/gmeasure.hpp"
#include "stieltjes/helmholtz.hpp"
#include "stieltjes/oracle.hpp"
#include "stieltjes/solver.hpp"
#include "stieltjes/wronskian.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>

namespace stieltjes {

bool VerifyReport::passed() const {
    return std::all_of(rows.begin(), rows.end(), [](const VerifyRow& r) { return r.pass; });
}

namespace {

constexpr Complex kI{0.0, 1.0};

struct Case {
    std::string name;
    Derivator d;
};

std::vector<Case> corpus() {
    return {
        {"unit-jump", Derivator::identity(3.0, {{1.0, 0.5}})},
        {"flat-middle", Derivator(3.0,
                                  {{0.0, 1.0, Density::constant(1.0)},
                                   {1.0, 2.0, Density::zero()},
                                   {2.0, 3.0, Density::constant(1.0)}},
                                  {})},
        {"poly-three-jumps",
         Derivator(2.0, {{0.0, 2.0, Density::polynomial({1.0, 1.0})}}, {{0.5, 0.3}, {1.2, 0.7}, {1.7, 0.2}})},
        {"jump-then-flat", Derivator(2.5,
                                     {{0.0, 1.0, Density::constant(2.0)},
                                      {1.0, 1.5, Density::zero()},
                                      {1.5, 2.5, Density::constant(0.5)}},
                                     {{1.0, 0.4}})},
    };
}

// Structural points, a few C_g interiors and generic interior points.
std::vector<double> probe_points(const Derivator& d) {
    std::vector<double> pts = d.structural_points();
    for (const auto& c : d.constancy()) pts.push_back(0.5 * (c.a + c.b));
    for (double x : {0.137, 0.421, 0.733, 0.912}) pts.push_back(x * d.T());
    std::sort(pts.begin(), pts.end());
    return pts;
}

GFunction g_itself(const Derivator& d) {
    return {[d](double t) { return Complex(d.eval_g(t)); }, [](double) { return Complex(1.0); },
            [](double) { return Complex{}; }, "g"};
}

struct ConstCase {
    Complex P, Q;
    bool forced;
};

const std::vector<ConstCase>& const_cases() {
    static const std::vector<ConstCase> cases = {
        {1.5, 0.5, false}, {1.5, 0.5, true},  {0.0, 1.0, true},   {2.0, 1.0, false},
        {2.0, 1.0, true},  {0.4, 1.04, true}, {-1.0, -2.0, true}, {0.4, 1.04, false},
    };
    return cases;
}

GFunction forcing() {
    return {[](double t) { return Complex(std::cos(2.0 * t), 0.3 * t); }, "forcing"};
}

double max_abs_diff(const Derivator& d, const ScalarFn& a, const ScalarFn& b, std::size_t n) {
    double worst = 0.0;
    for (double t : d.grid(n)) worst = std::max(worst, std::abs(a(t) - b(t)));
    return worst;
}

HelmholtzSpec helmholtz_example(double t1) {
    HelmholtzSpec s;
    s.w1 = 1.0;
    s.w2 = 2.0;
    s.t1 = t1;
    s.x0 = 1.0;
    s.v0 = 0.0;
    return s;
}

// Error ratios err(n)/err(2n) of a first-order scheme should approach 2.
double convergence_defect(const std::function<double(std::size_t)>& err, std::size_t n0, int doublings) {
    double worst = 0.0;
    double prev = err(n0);
    for (int k = 1; k <= doublings; ++k) {
        const double cur = err(n0 << k);
        worst = std::max(worst, std::abs(prev / cur - 2.0) / 2.0);
        prev = cur;
    }
    return worst;
}

}  // namespace

VerifyReport run_verify(VerifyLevel level) {
    const bool full = level == VerifyLevel::Full;
    const std::size_t n_fine = full ? 4096 : 512;
    const std::size_t n_solve = full ? 1024 : 256;
    VerifyReport report;

    auto run = [&](const std::string& name, double tol, const std::function<double()>& body) {
        VerifyRow row{name, 0.0, tol, false, {}};
        try {
            row.max_residual = body();
            row.pass = std::isfinite(row.max_residual) && row.max_residual <= tol;
        } catch (const std::exception& e) {
            row.max_residual = std::numeric_limits<double>::infinity();
            row.note = e.what();
        }
        report.rows.push_back(row);
    };

    const auto cases = corpus();

    run("ftc-roundtrip", 1e-8, [&] {
        double worst = 0.0;
        for (const auto& c : cases) {
            std::vector<GFunction> fs = {exp_g(c.d, 1.0), exp_g(c.d, -0.7), exp_g(c.d, kI),
                                         polynomial_exp(c.d, Complex(0.3, 2.0)), g_itself(c.d)};
            for (const auto& F : fs) {
                GFunction Phi = cumulative(c.d, F.deriv1, n_fine);
                const Complex F0 = F.value(0.0);
                worst = std::max(worst, max_abs_diff(
                                            c.d, Phi.value, [&](double t) { return F.value(t) - F0; }, n_fine));
            }
        }
        return worst;
    });

    run("integral-oracle-convergence", 0.25, [&] {
        const auto& d = cases[2].d;
        ScalarFn f = [](double s) { return Complex(std::sin(3.0 * s) + s); };
        const double t = d.T();
        const Complex exact = integrate(d, f, t);
        return convergence_defect([&](std::size_t n) { return std::abs(riemann_stieltjes_sum(d, f, t, n) - exact); },
                                  256, full ? 6 : 3);
    });

    run("exp-stepping-oracle", 0.25, [&] {
        const auto& d = cases[0].d;
        const Complex lambda(0.8, 0.5);
        const double t = d.T();
        const Complex exact = g_exponential(d, lambda, t);
        return convergence_defect(
            [&](std::size_t n) {
                return std::abs(step_first_order(d, [lambda](double) { return lambda; }, 1.0, t, n) - exact);
            },
            256, full ? 6 : 3);
    });

    run("exp-product-law", 1e-10, [&] {
        double worst = 0.0;
        const std::vector<std::pair<Complex, Complex>> pq = {{1.0, 2.0}, {Complex(0.3, -1.0), -0.4}, {kI, -kI}};
        for (const auto& c : cases)
            for (const auto& [p, q] : pq)
                for (double t : probe_points(c.d)) {
                    // Scaled by the size of the right side: e^{(p+q)g} reaches 1e6 on this corpus.
                    const Complex lambda = p + q;
                    const double scale = std::max(1.0, std::exp(std::real(lambda) * c.d.eval_g(t)));
                    worst = std::max(worst, g_exp_product_check(c.d, RegressiveFn::constant(c.d, p),
                                                                RegressiveFn::constant(c.d, q), t) /
                                                scale);
                }
        return worst;
    });

    run("exp-inverse-law", 1e-10, [&] {
        double worst = 0.0;
        for (const auto& c : cases) {
            RegressiveFn p = RegressiveFn::make(c.d, GFunction{[](double s) { return Complex(std::sin(s), 0.5); }});
            for (double t : probe_points(c.d)) worst = std::max(worst, g_exp_inverse_check(c.d, p, t));
        }
        return worst;
    });

    run("product-rule", 1e-6, [&] {
        double worst = 0.0;
        for (const auto& c : cases) {
            const std::vector<std::pair<GFunction, GFunction>> pairs = {
                {exp_g(c.d, 1.0), exp_g(c.d, -0.5 * kI)},
                {polynomial_exp(c.d, -1.0), exp_g(c.d, 0.7)},
                {g_itself(c.d), exp_g(c.d, Complex(0.2, 1.0))},
            };
            for (const auto& [a, b] : pairs)
                for (double t : probe_points(c.d)) worst = std::max(worst, product_rule_residual(c.d, a, b, t));
        }
        return worst;
    });

    run("quotient-rule", 1e-6, [&] {
        double worst = 0.0;
        for (const auto& c : cases) {
            GFunction a = exp_g(c.d, 1.0), b = exp_g(c.d, Complex(0.5, 0.5));
            for (double t : probe_points(c.d)) worst = std::max(worst, quotient_rule_residual(c.d, a, b, t));
        }
        return worst;
    });

    run("integration-by-parts", 1e-8, [&] {
        double worst = 0.0;
        for (const auto& c : cases) {
            GFunction a = exp_g(c.d, 1.0), b = exp_g(c.d, Complex(-0.3, 1.0));
            for (double t : c.d.structural_points()) worst = std::max(worst, integrate_by_parts_check(c.d, a, b, t));
        }
        return worst;
    });

    // Homogeneous bases with their coefficients: constant-coefficient cases and the Helmholtz splice.
    struct BasisCase {
        Derivator d;
        SolutionPair pair;
        GFunction P, Q;
    };
    std::vector<BasisCase> bases;
    for (std::size_t k : {std::size_t{0}, std::size_t{2}, std::size_t{3}})
        for (const auto& cc : const_cases())
            bases.push_back({cases[k].d, homogeneous_basis_const(cases[k].d, cc.P, cc.Q), GFunction::constant(cc.P),
                             GFunction::constant(cc.Q)});
    {
        const Derivator d = helmholtz_derivator(3.0, 1.0, 0.5);
        const HelmholtzSpec hs = helmholtz_example(1.0);
        bases.push_back({d, helmholtz_basis(d, hs), GFunction::constant(0.0), helmholtz_w0_squared(hs)});
    }

    run("wronskian-relation", 1e-8, [&] {
        double worst = 0.0;
        for (const auto& b : bases)
            for (double t : b.d.grid(n_solve))
                worst = std::max(worst, wronskian_relation_residual(b.d, b.pair, b.P, b.Q, t));
        return worst;
    });

    run("wronskian-exp-form", 1e-8, [&] {
        double worst = 0.0;
        for (const auto& b : bases) {
            const Complex w0 = wronskian_simplified(b.d, b.pair, 0.0);
            for (double t : probe_points(b.d))
                worst = std::max(worst, std::abs(wronskian_simplified(b.d, b.pair, t) -
                                                 wronskian_exp_form(b.d, b.P, b.Q, w0, t)));
        }
        return worst;
    });

    run("wronskian-inverse", 1e-10, [&] {
        double worst = 0.0;
        for (const auto& b : bases) {
            const Complex w0 = wronskian_simplified(b.d, b.pair, 0.0);
            for (double t : probe_points(b.d))
                worst = std::max(worst, std::abs(wronskian_g(b.d, b.pair, t) *
                                                     wronskian_inverse(b.d, b.P, b.Q, w0, t) -
                                                 1.0));
        }
        return worst;
    });

    run("wronskian-limit-form", 1e-6, [&] {
        double worst = 0.0;
        for (const auto& b : bases)
            for (double t : b.d.structural_points())
                worst = std::max(worst, std::abs(wronskian_g(b.d, b.pair, t) - wronskian_with_limits(b.d, b.pair, t)));
        return worst;
    });

    run("solver-cross-path", 1e-7, [&] {
        double worst = 0.0;
        const GFunction f0 = GFunction::constant(0.0), f1 = forcing();
        for (std::size_t k : {std::size_t{0}, std::size_t{2}}) {
            const auto& d = cases[k].d;
            for (const auto& cc : const_cases()) {
                const GFunction& f = cc.forced ? f1 : f0;
                const Complex x0(1.0, -0.5), v0(0.25, 1.0);
                auto a = solve_const_ivp(d, cc.P, cc.Q, f, x0, v0, n_solve);
                auto b = solve_const_factorization(d, cc.P, cc.Q, f, x0, v0, n_solve);
                ProblemSpec spec{GFunction::constant(cc.P), GFunction::constant(cc.Q), f, x0, v0};
                auto c = solve_ivp(d, spec, homogeneous_basis_const(d, cc.P, cc.Q), n_solve);
                worst = std::max({worst, max_abs_diff(d, a.v.value, b.v.value, n_solve),
                                  max_abs_diff(d, a.v.value, c.v.value, n_solve),
                                  max_abs_diff(d, b.v.value, c.v.value, n_solve)});
            }
        }
        return worst;
    });

    run("particular-solution-residual", 1e-6, [&] {
        double worst = 0.0;
        const GFunction f = forcing();
        for (std::size_t k : {std::size_t{0}, std::size_t{3}}) {
            const auto& d = cases[k].d;
            for (const auto& cc : const_cases()) {
                if (!cc.forced) continue;
                ProblemSpec spec{GFunction::constant(cc.P), GFunction::constant(cc.Q), f, 0.0, 0.0};
                auto vp = particular_solution(d, spec.P, spec.Q, f, homogeneous_basis_const(d, cc.P, cc.Q), n_solve);
                worst = std::max(worst, residual(d, vp, spec, n_solve, ResidualMode::NumericSecond));
            }
        }
        return worst;
    });

    run("solver-residual-analytic", 1e-9, [&] {
        double worst = 0.0;
        const GFunction f = forcing();
        const auto& d = cases[2].d;
        for (const auto& cc : const_cases()) {
            ProblemSpec spec{GFunction::constant(cc.P), GFunction::constant(cc.Q), cc.forced ? f : GFunction::constant(0.0),
                             1.0, -1.0};
            worst = std::max(worst, residual(d, solve_const_ivp(d, cc.P, cc.Q, spec.f, 1.0, -1.0, n_solve), spec,
                                             n_solve, ResidualMode::Analytic));
            worst = std::max(worst, residual(d, solve_const_factorization(d, cc.P, cc.Q, spec.f, 1.0, -1.0, n_solve),
                                             spec, n_solve, ResidualMode::Analytic));
        }
        return worst;
    });

    run("initial-conditions", 1e-9, [&] {
        double worst = 0.0;
        const auto& d = cases[0].d;
        const Complex x0(0.7, 0.1), v0(-0.2, 0.9);
        for (const auto& cc : const_cases()) {
            auto s = solve_const_ivp(d, cc.P, cc.Q, forcing(), x0, v0, n_solve);
            worst = std::max({worst, std::abs(s.v.value(0.0) - x0), std::abs(s.v.deriv1(0.0) - v0)});
        }
        return worst;
    });

    const Derivator hd = helmholtz_derivator(3.0, 1.0, 0.5);
    const HelmholtzSpec hs = helmholtz_example(1.0);

    run("helmholtz-alpha-crosscheck", 1e-12, [&] {
        const auto a = alpha_closed_form(hd, hs), b = alpha_linear_solve(hd, hs);
        double worst = 0.0;
        for (auto [x, y] : {std::pair{a.a11, b.a11}, {a.a21, b.a21}, {a.a12, b.a12}, {a.a22, b.a22}})
            worst = std::max(worst, std::abs(x - y) / std::max(std::abs(x), 1e-300));
        return worst;
    });

    run("helmholtz-splice-continuity", 1e-10, [&] {
        const auto r = gcond_residuals(hd, hs, alpha_closed_form(hd, hs));
        return std::max(r.value, r.derivative);
    });

    run("helmholtz-basis-residual", 1e-6, [&] {
        const ProblemSpec spec = helmholtz_problem(hs);
        const SolutionPair pair = helmholtz_basis(hd, hs);
        return std::max(residual(hd, {pair.y1, Method::ClosedFormDistinct}, spec, n_solve, ResidualMode::NumericSecond),
                        residual(hd, {pair.y2, Method::ClosedFormDistinct}, spec, n_solve, ResidualMode::NumericSecond));
    });

    run("helmholtz-particular-cross-path", 1e-7, [&] {
        HelmholtzSpec forced = hs;
        forced.f = GFunction::constant(1.0);
        const ProblemSpec spec = helmholtz_problem(forced);
        auto a = helmholtz_particular(hd, forced, n_solve);
        auto b = particular_solution(hd, spec.P, spec.Q, spec.f, helmholtz_basis(hd, forced), n_solve);
        return max_abs_diff(hd, a.v.value, b.v.value, n_solve);
    });

    run("variable-coefficient-reduction", 1e-7, [&] {
        const auto& d = cases[0].d;
        GFunction P{[](double t) { return Complex(t <= 1.0 ? 0.5 : -0.7); }, "P"};
        const GFunction Q = GFunction::constant(0.0);
        GFunction f{[](double t) { return Complex(std::cos(t)); }, "cos"};
        const Complex x0 = 0.8, v0 = -0.3;
        const GFunction one = GFunction::constant(1.0);
        const GFunction y2 = second_homogeneous_solution(d, P, Q, one, n_solve);
        auto sol = solve_ivp(d, {P, Q, f, x0, v0}, {one, y2}, n_solve);
        // Reference: double integral of the first-order solution for v'.
        const ScalarFn Pv = P.value, fv = f.value;
        GFunction E = exp_g(d, RegressiveFn::make(d, GFunction{[Pv](double s) { return -Pv(s); }}), n_solve);
        const ScalarFn Ev = E.value;
        PrefixIntegral A(d, Ev, n_solve);
        auto K = std::make_shared<const PrefixIntegral>(
            d, [d, Ev, Pv, fv](double s) { return fv(s) / (Ev(s) * (1.0 - Pv(s) * d.jump(s))); }, n_solve);
        PrefixIntegral B(d, [Ev, K](double s) { return Ev(s) * (*K)(s); }, n_solve);
        return max_abs_diff(d, sol.v.value, [&](double t) { return x0 + v0 * A(t) + B(t); }, n_solve);
    });

    run("delta-sweep", 1e-7, [&] {
        const std::vector<double> deltas = {0.0, 0.4, 0.2, 0.1, 0.05};
        const auto rows = classical_limit_study(1.0, 2.0, 1.0, 3.0, 1.0, 0.0, deltas, n_solve);
        for (std::size_t k = 2; k < rows.size(); ++k)
            if (!(rows[k].max_error < rows[k - 1].max_error)) return std::numeric_limits<double>::infinity();
        return rows[0].max_error;
    });

    return report;
}

}  // namespace stieltjes
