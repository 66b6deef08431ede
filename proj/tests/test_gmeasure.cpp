#include "fixtures.hpp"
#include "stieltjes/errors.hpp"
#include "stieltjes/gcalculus.hpp"
#include "stieltjes/gmeasure.hpp"
#include "stieltjes/oracle.hpp"

#include <doctest.h>

#include <limits>

using namespace stieltjes;
using namespace fixtures;

namespace {
const ScalarFn kOne = [](double) { return Complex(1.0); };
const ScalarFn kId = [](double s) { return Complex(s); };
}  // namespace

TEST_CASE("integrate uses half-open intervals") {
    const Derivator d = e1();
    CHECK(std::abs(integrate(d, kOne, 3.0) - 3.5) < 1e-12);
    CHECK(std::abs(integrate(d, kOne, 1.0) - 1.0) < 1e-12);
    CHECK(std::abs(integrate(d, kOne, std::nextafter(1.0, 2.0)) - 1.5) < 1e-12);
    CHECK(std::abs(integrate(d, kId, 2.0) - 2.5) < 1e-12);
    // Segment [1,2) includes the jump at its left end.
    CHECK(std::abs(integrate(d, kOne, 1.0, 2.0) - 1.5) < 1e-12);
}

TEST_CASE("integrate agrees with the Riemann-Stieltjes oracle") {
    const Derivator d = e1();
    const Complex exact = integrate(d, kId, 2.0);
    double prev = std::abs(riemann_stieltjes_sum(d, kId, 2.0, 256) - exact);
    for (std::size_t n : {512u, 1024u, 2048u}) {
        const double err = std::abs(riemann_stieltjes_sum(d, kId, 2.0, n) - exact);
        CHECK(err < prev);
        CHECK(err <= 3.0 / n);
        prev = err;
    }
}

TEST_CASE("constancy interiors carry no mass") {
    const Derivator d = e2();
    ScalarFn indicator = [](double s) { return Complex(s > 1.0 && s < 2.0 ? 1.0 : 0.0); };
    CHECK(integrate(d, indicator, 3.0) == Complex{});
    CHECK(riemann_stieltjes_sum(d, indicator, 3.0, 100) == Complex{});
}

TEST_CASE("integration is additive and linear") {
    for (const Derivator& d : {e1(), poly3(), jump_then_flat()}) {
        ScalarFn f = [](double s) { return Complex(std::cos(3.0 * s), s * s); };
        ScalarFn h = [](double s) { return Complex(std::exp(-s), 1.0); };
        const double T = d.T();
        for (double s : d.structural_points()) {
            if (s <= 0.0 || s >= T) continue;
            CHECK(std::abs(integrate(d, f, T) - integrate(d, f, s) - integrate(d, f, s, T)) < 1e-12);
        }
        const Complex a(0.3, -2.0), b(1.5, 0.25);
        ScalarFn combo = [&](double s) { return a * f(s) + b * h(s); };
        CHECK(std::abs(integrate(d, combo, T) - (a * integrate(d, f, T) + b * integrate(d, h, T))) < 1e-12);
    }
}

TEST_CASE("non-finite samples raise an integration error with the abscissa") {
    const Derivator d = e1();
    ScalarFn bad = [](double s) { return Complex(s > 1.5 ? std::numeric_limits<double>::quiet_NaN() : 1.0); };
    CHECK_THROWS_AS(integrate(d, bad, 3.0), IntegrationError);
    try {
        integrate(d, bad, 3.0);
    } catch (const IntegrationError& e) {
        REQUIRE(e.abscissa().has_value());
        CHECK(*e.abscissa() > 1.5);
    }
    ScalarFn bad_jump = [](double s) { return Complex(s == 1.0 ? std::numeric_limits<double>::infinity() : 0.0); };
    CHECK_THROWS_AS(integrate(d, bad_jump, 3.0), IntegrationError);
}

TEST_CASE("cumulative reproduces g and matches integrate") {
    const Derivator d = e1();
    const GFunction G = cumulative(d, kOne, 64);
    for (double t : d.grid(64)) CHECK(std::abs(G.value(t) - (d.eval_g(t) - d.g0())) < 1e-12);
    CHECK(std::abs(cumulative(e2(), kOne, 64).value(1.5) - 1.0) < 1e-12);
    const GFunction S = cumulative(d, kId, 64);
    CHECK(std::abs(S.value(2.0) - 2.5) < 1e-12);
    CHECK(S.value(0.0) == Complex{});
    for (double t : {0.01, 0.77, 1.0, 1.0000001, 2.345, 3.0}) CHECK(std::abs(S.value(t) - integrate(d, kId, t)) < 1e-12);
    CHECK(std::abs(S.deriv1(2.0) - 2.0) < 1e-15);
}

TEST_CASE("cumulative is left-continuous at jumps and flat on constancy stretches") {
    const Derivator d = jump_then_flat();
    ScalarFn f = [](double s) { return Complex(1.0 + s, -s); };
    const GFunction F = cumulative(d, f, 128);
    CHECK(std::abs(F.value(1.0) - F.value(1.0 - 1e-10)) < 1e-8);
    CHECK(std::abs(F.value(std::nextafter(1.0, 2.0)) - F.value(1.0) - f(1.0) * 0.4) < 1e-12);
    CHECK(std::abs(F.value(1.1) - F.value(1.4)) < 1e-15);
    CHECK(std::abs(F.value(1.5) - F.value(1.2)) < 1e-15);
}

TEST_CASE("prefix integrals with a custom jump term") {
    const Derivator d = e1();
    PrefixIntegral p(d, kOne, 32, [](double, double dj) { return Complex(std::log1p(dj)); });
    CHECK(std::abs(p(2.0) - (2.0 + std::log(1.5))) < 1e-12);
    CHECK(std::abs(p(1.0) - 1.0) < 1e-12);
}

TEST_CASE("integration by parts holds on the corpus") {
    const Derivator d0 = Derivator::identity(2.0);
    CHECK(integrate_by_parts_check(d0, identity_fn(), identity_fn(), 1.7) <= 1e-8);
    const Derivator d = e1();
    const GFunction e = exp_g(d, 1.0);
    CHECK(integrate_by_parts_check(d, e, e, 2.5) <= 1e-8);
    const GFunction w2{[](double t) { return Complex(std::sin(t)); }, [](double t) { return Complex(std::cos(t)); }, {},
                       "sin on identity"};
    CHECK(integrate_by_parts_check(d0, GFunction::constant(1.0), w2, 1.9) <= 1e-8);
    for (const Derivator& dd : {poly3(), jump_then_flat()}) {
        const GFunction a = exp_g(dd, Complex(0.4, -1.0)), b = exp_g(dd, -0.8);
        for (double t : dd.structural_points()) CHECK(integrate_by_parts_check(dd, a, b, t) <= 1e-8);
    }
    CHECK_THROWS_AS(integrate_by_parts_check(d, GFunction{kOne}, e, 1.0), ContractError);
}
