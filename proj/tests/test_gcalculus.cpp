#include "fixtures.hpp"
#include "stieltjes/errors.hpp"
#include "stieltjes/gcalculus.hpp"
#include "stieltjes/gmeasure.hpp"
#include "stieltjes/oracle.hpp"

#include <doctest.h>

using namespace stieltjes;
using namespace fixtures;

TEST_CASE("numeric g-derivative of g is one everywhere") {
    for (const Derivator& d : {e1(), e2(), poly3(), jump_then_flat()}) {
        const ScalarFn g = [d](double t) { return Complex(d.eval_g(t)); };
        for (double t : d.grid(40)) CHECK(std::abs(g_derivative_numeric(d, g, t) - 1.0) < 1e-7);
        for (const auto& c : d.constancy()) CHECK(std::abs(g_derivative_numeric(d, g, 0.5 * (c.a + c.b)) - 1.0) < 1e-7);
    }
}

TEST_CASE("jump quotient of a step function") {
    const Derivator d = e1();
    const ScalarFn step = [](double t) { return Complex(t > 1.0 ? 1.0 : 0.0); };
    CHECK(std::abs(g_derivative_numeric(d, step, 1.0) - 2.0) < 1e-12);
    CHECK(std::abs(g_derivative_numeric(d, step, 2.0)) < 1e-12);
}

TEST_CASE("derivatives inside a constancy stretch are taken at its right end") {
    const Derivator d = e2();
    const ScalarFn sq = [](double t) { return Complex(t * t); };
    const Complex inside = g_derivative_numeric(d, sq, 1.5);
    CHECK(inside == g_derivative_numeric(d, sq, 2.0));
    CHECK(std::abs(inside - 4.0) < 1e-7);
    // Left end of the flat stretch: left-sided quotient.
    CHECK(std::abs(g_derivative_numeric(d, sq, 1.0) - 2.0) < 1e-7);
}

TEST_CASE("g-derivative prefers analytic derivatives") {
    const Derivator d = e1();
    const GFunction f{[](double t) { return Complex(t); }, [](double) { return Complex(42.0); }, {}, "tagged"};
    CHECK(g_derivative(d, f, 2.0) == Complex(42.0));
    CHECK(std::abs(g_derivative(d, GFunction{[](double t) { return Complex(t); }}, 2.0) - 1.0) < 1e-8);
}

TEST_CASE("second g-derivatives") {
    const Derivator d = e1();
    const Complex lambda(0.5, -1.0);
    const GFunction e = exp_g(d, lambda);
    for (double t : {0.3, 1.0, 2.0, 3.0}) {
        CHECK(std::abs(g_derivative2(d, e, t) - lambda * lambda * e.value(t)) < 1e-12);
        const GFunction numeric{e.value, e.deriv1, {}, "no second"};
        CHECK(std::abs(g_derivative2(d, numeric, t) - lambda * lambda * e.value(t)) < 1e-6);
    }
    const GFunction g_only{[d](double t) { return Complex(d.eval_g(t)); }};
    for (double t : {0.4, 2.0, 2.9}) CHECK(std::abs(g_derivative2(d, g_only, t)) < 1e-4);
    CHECK(second_derivative_accuracy(g_only) == DerivativeAccuracy::NumericOnNumeric);
    CHECK(accuracy_tolerance(DerivativeAccuracy::NumericOnNumeric) == 1e-4);
    const GFunction one = GFunction::constant(1.0);
    for (double t : {0.0, 1.0, 3.0}) CHECK(g_derivative2(d, one, t) == Complex{});
}

TEST_CASE("product and quotient rules") {
    const Derivator id = Derivator::identity(2.0);
    CHECK(product_rule_residual(id, identity_fn(), identity_fn(), 1.3) <= 1e-6);
    const Derivator d = e1();
    const GFunction e = exp_g(d, 1.0);
    CHECK(product_rule_residual(d, e, e, 1.0) <= 1e-8);
    CHECK(product_rule_residual(d, GFunction::constant(2.5), e, 1.7) <= 1e-9);
    for (const Derivator& dd : {e2(), poly3(), jump_then_flat()}) {
        const GFunction a = exp_g(dd, Complex(0.2, 1.0)), b = polynomial_exp(dd, -0.6);
        std::vector<double> ts = dd.grid(32);
        for (const auto& c : dd.constancy()) ts.push_back(0.5 * (c.a + c.b));
        for (double t : ts) {
            CHECK(product_rule_residual(dd, a, b, t) <= 1e-6);
            CHECK(quotient_rule_residual(dd, a, exp_g(dd, -0.6), t) <= 1e-6);
        }
    }
    CHECK_THROWS_AS(product_rule_residual(d, GFunction{[](double) { return Complex(1.0); }}, e, 1.0), ContractError);
}

TEST_CASE("g-exponential closed forms") {
    const Derivator d = e1();
    CHECK(std::abs(g_exponential(d, 0.0, 2.4) - 1.0) < 1e-15);
    CHECK(std::abs(g_exponential(poly3(), 0.0, 1.9) - 1.0) < 1e-15);
    CHECK(std::abs(g_exponential(d, 1.0, 2.0) - 11.083584148395975341) < 1e-12);
    CHECK(std::abs(g_exponential(d, 1.0, 1.0) - std::exp(1.0)) < 1e-12);
    CHECK_THROWS_AS(g_exponential(d, -2.0, 2.0), RegressivityError);
    CHECK_THROWS_AS(RegressiveFn::constant(d, -2.0), RegressivityError);
    try {
        RegressiveFn::constant(d, -2.0);
    } catch (const RegressivityError& e) {
        REQUIRE(e.abscissa().has_value());
        CHECK(*e.abscissa() == 1.0);
    }
}

TEST_CASE("negative jump factors take the principal logarithm") {
    const Derivator d = e1();
    const Complex v = g_exponential(d, -4.0, 2.0);
    CHECK(std::abs(v - (-std::exp(-8.0))) < 1e-15);
}

TEST_CASE("general-coefficient exponential matches the closed form and the stepping oracle") {
    const Derivator d = poly3();
    const Complex lambda(0.7, -0.4);
    const RegressiveFn rc = RegressiveFn::make(d, GFunction{[lambda](double) { return lambda; }});
    for (double t : {0.0, 0.5, 0.9, 1.2, 2.0}) CHECK(std::abs(g_exponential(d, rc, t) - g_exponential(d, lambda, t)) < 1e-10);

    const ScalarFn p = [](double s) { return Complex(std::cos(s), 0.3); };
    const RegressiveFn rp = RegressiveFn::make(d, GFunction{p});
    const GFunction table = exp_g(d, rp, 512);
    for (double t : {0.25, 0.5, 1.2, 1.55, 2.0}) {
        const Complex exact = g_exponential(d, rp, t);
        CHECK(std::abs(table.value(t) - exact) < 1e-10);
        // Euler products converge at first order; one extrapolation step reaches 1e-6.
        const Complex u1 = step_first_order(d, p, 1.0, t, 1u << 14), u2 = step_first_order(d, p, 1.0, t, 1u << 15);
        CHECK(std::abs(2.0 * u2 - u1 - exact) < 1e-6);
    }
}

TEST_CASE("g-exponential is flat on constancy stretches and left-continuous") {
    const Derivator d = jump_then_flat();
    const GFunction e = exp_g(d, Complex(0.3, 2.0));
    CHECK(std::abs(e.value(1.1) - e.value(1.49)) < 1e-15);
    CHECK(std::abs(e.value(1.0) - e.value(1.0 - 1e-9)) < 1e-8);
    for (double t : d.grid(64)) CHECK(std::abs(e.value(t)) > 0.0);
}

TEST_CASE("exponential algebra") {
    const Derivator d = e1();
    const RegressiveFn zero = RegressiveFn::constant(d, 0.0);
    CHECK(g_exp_product_check(d, zero, zero, 2.0) == 0.0);
    CHECK(g_exp_product_check(d, RegressiveFn::constant(d, 1.0), RegressiveFn::constant(d, 2.0), 2.0) <= 1e-10);
    CHECK(g_exp_inverse_check(d, RegressiveFn::constant(d, 1.0), 2.0) <= 1e-10);
}

TEST_CASE("resolvent phi") {
    const Derivator d = e1();
    const ScalarFn one = [](double) { return Complex(1.0); };
    CHECK(std::abs(phi_resolvent(d, one, 1.0, 2.0) - 7.0 / 3.0) < 1e-12);
    CHECK(std::abs(phi_resolvent(d, one, 0.0, 2.0) - integrate(d, one, 2.0)) < 1e-12);
    CHECK(phi_resolvent(d, [](double) { return Complex{}; }, 0.5, 2.0) == Complex{});
    CHECK_THROWS_AS(phi_resolvent(d, one, -2.0, 2.0), RegressivityError);
    const GFunction unit = phi_resolvent_unit(d, 1.0);
    CHECK(std::abs(unit.value(2.0) - 7.0 / 3.0) < 1e-12);
    CHECK(std::abs(g_derivative_numeric(d, unit.value, 1.0) - 1.0 / 1.5) < 1e-9);
    CHECK(std::abs(g_derivative_numeric(d, unit.value, 2.0) - 1.0) < 1e-8);
}

TEST_CASE("derivatives of phi * exp_g follow the closed recursion") {
    const Derivator d = e1();
    CHECK(polynomial_exp_solution(d, 1.0, 0, 2.0) == polynomial_exp(d, 1.0).value(2.0));
    const Derivator id = Derivator::identity(2.0);
    CHECK(std::abs(polynomial_exp_solution(id, 0.0, 0, 1.3) - 1.3) < 1e-12);
    CHECK(std::abs(polynomial_exp_solution(id, 0.0, 1, 1.3) - 1.0) < 1e-12);
    const GFunction v = polynomial_exp(d, 1.0);
    const Complex closed = polynomial_exp_solution(d, 1.0, 1, 2.0);
    CHECK(std::abs(closed - (g_exponential(d, 1.0, 2.0) + v.value(2.0))) < 1e-12);
    CHECK(std::abs(g_derivative_numeric(d, v.value, 2.0) - closed) < 1e-6);
    for (double t : {0.5, 1.0, 2.5})
        CHECK(std::abs(g_derivative_numeric(d, v.deriv1, t) - polynomial_exp_solution(d, 1.0, 2, t)) < 1e-6);
}
