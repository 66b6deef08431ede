#include "fixtures.hpp"
#include "stieltjes/errors.hpp"
#include "stieltjes/helmholtz.hpp"
#include "stieltjes/oracle.hpp"

#include <doctest.h>

using namespace stieltjes;
using namespace fixtures;

namespace {

HelmholtzSpec spec_12(double t1 = 1.0) {
    HelmholtzSpec s;
    s.w1 = 1.0;
    s.w2 = 2.0;
    s.t1 = t1;
    return s;
}

bool close(Complex a, Complex b, double tol) { return std::abs(a - b) <= tol; }

}  // namespace

TEST_CASE("splice coefficients match high-precision values") {
    const Derivator d = helmholtz_derivator(3.0, 1.0, 0.5);
    const HelmholtzSpec hs = spec_12();
    const Complex a11(0.14614423739934799604, -0.574634111304717982);
    const Complex a21(-0.088334532548752945223, -0.17680359260884182186);
    for (const AlphaCoefficients& a : {alpha_closed_form(d, hs), alpha_linear_solve(d, hs)}) {
        CHECK(close(a.a11, a11, 1e-12));
        CHECK(close(a.a21, a21, 1e-12));
        CHECK(close(a.a12, std::conj(a21), 1e-12));
        CHECK(close(a.a22, std::conj(a11), 1e-12));
        const GcondResiduals r = gcond_residuals(d, hs, a);
        CHECK(r.value < 1e-13);
        CHECK(r.derivative < 1e-13);
    }
}

TEST_CASE("splice coefficients in degenerate settings") {
    SUBCASE("equal frequencies give the identity") {
        HelmholtzSpec hs = spec_12();
        hs.w2 = 1.0;
        const AlphaCoefficients a = alpha_closed_form(helmholtz_derivator(3.0, 1.0, 0.5), hs);
        CHECK(close(a.a11, 1.0, 1e-14));
        CHECK(close(a.a22, 1.0, 1e-14));
        CHECK(std::abs(a.a21) < 1e-14);
        CHECK(std::abs(a.a12) < 1e-14);
    }
    SUBCASE("without a jump the coefficients reduce to the classical splice") {
        // g has a vanishing jump at t1 in the limit; compare delta -> 0 with the classical values.
        const HelmholtzSpec hs = spec_12();
        const AlphaCoefficients a = alpha_closed_form(helmholtz_derivator(3.0, 1.0, 1e-9), hs);
        const Complex l = kI, l21 = 2.0 * kI, l22 = -2.0 * kI;
        const Complex ref11 = std::exp((l - l21) * 1.0) * (l22 - l) / (l22 - l21);
        const Complex ref21 = std::exp((l - l22) * 1.0) * (l - l21) / (l22 - l21);
        CHECK(close(a.a11, ref11, 1e-8));
        CHECK(close(a.a21, ref21, 1e-8));
    }
    SUBCASE("vanishing frequencies") {
        HelmholtzSpec hs = spec_12();
        const Derivator d = helmholtz_derivator(3.0, 1.0, 0.5);
        hs.w2 = 1e-300;
        CHECK_THROWS_AS(alpha_linear_solve(d, hs), SingularSystemError);
        hs.w2 = 0.0;
        CHECK_THROWS_AS(alpha_closed_form(d, hs), SingularSystemError);
        CHECK_THROWS_AS(validate_helmholtz(d, hs), SingularSystemError);
    }
    SUBCASE("switch time must be a jump") {
        CHECK_THROWS_AS(validate_helmholtz(helmholtz_derivator(3.0, 1.0, 0.5), spec_12(1.5)), PreconditionError);
        HelmholtzSpec hs = spec_12();
        hs.t1.reset();
        CHECK_THROWS_AS(validate_helmholtz(helmholtz_derivator(3.0, 1.0, 0.5), hs), PreconditionError);
    }
}

TEST_CASE("homogeneous Helmholtz solution") {
    const Derivator d = helmholtz_derivator(3.0, 1.0, 0.5);
    HelmholtzSpec hs = spec_12();
    hs.x0 = 1.0;
    hs.v0 = 0.3;
    const HelmholtzRoots r = helmholtz_roots(hs);
    CHECK(r.l11 == kI);
    CHECK(r.l12 == -kI);
    CHECK(r.l21 == 2.0 * kI);
    const SolutionBundle s = helmholtz_homogeneous(d, hs);
    const std::pair<double, double> samples[] = {{0.5, 1.0214102234716336162},
                                                  {1.0, 0.7927436013105086694},
                                                  {1.25, 0.13972029806105760118},
                                                  {2.0, -0.67762606734937929613},
                                                  {3.0, 0.11093043379186871558}};
    for (auto [t, v] : samples) {
        CHECK(std::abs(s.v(t).real() - v) < 1e-12);
        CHECK(std::abs(s.v(t).imag()) < 1e-12);
    }
    CHECK(residual(d, s, helmholtz_problem(hs)) < 1e-10);

    const SolutionPair pair = helmholtz_basis(d, hs);
    CHECK(close(wronskian_simplified(d, pair, 0.0), -2.0 * kI, 1e-14));
    for (double t : d.grid(64)) {
        CHECK(close(helmholtz_wronskian(d, hs, t), wronskian_g(d, pair, t), 1e-10));
    }
    // Across the jump the exponential factor picks up 1 + w1^2 dg^2 = 1.25.
    CHECK(close(helmholtz_wronskian(d, hs, 1.0), -2.0 * kI * 1.25, 1e-13));
}

TEST_CASE("forced Helmholtz problems") {
    SUBCASE("zero forcing") {
        const Derivator d = helmholtz_derivator(3.0, 1.0, 0.5);
        const SolutionBundle p = helmholtz_particular(d, spec_12());
        for (double t : d.grid(32)) CHECK(std::abs(p.v(t)) < 1e-15);
    }
    SUBCASE("classical constant forcing") {
        const Derivator id = Derivator::identity(3.0);
        HelmholtzSpec hs;
        hs.w1 = hs.w2 = 1.7;
        hs.f = GFunction::constant(1.0);
        const SolutionBundle p = helmholtz_particular(id, hs);
        for (double t : id.grid(32))
            CHECK(std::abs(p.v(t) - (1.0 - std::cos(1.7 * t)) / (1.7 * 1.7)) < 1e-12);
    }
    SUBCASE("closed-form splice agrees with generic variation of parameters") {
        const Derivator d = helmholtz_derivator(3.0, 1.2, 0.4);
        HelmholtzSpec hs = spec_12(1.2);
        hs.f = GFunction{[](double t) { return Complex(std::cos(3.0 * t), 0.5 * t); }};
        const ProblemSpec ps = helmholtz_problem(hs);
        const SolutionBundle a = helmholtz_particular(d, hs);
        const SolutionBundle b = particular_solution(d, ps.P, ps.Q, ps.f, helmholtz_basis(d, hs));
        double worst = 0.0;
        for (double t : d.grid(128)) worst = std::max(worst, std::abs(a.v(t) - b.v(t)));
        CHECK(worst < 1e-9);
        const SolutionBundle full = helmholtz_solution(d, hs);
        CHECK(residual(d, full, ps) < 1e-8);
        CHECK(close(full.v(0.0), hs.x0, 1e-14));
    }
}

TEST_CASE("classical limit") {
    const GFunction c = classical_helmholtz(1.0, 2.0, 1.0, 1.0, 0.0);
    const auto q = [](double t) { return t <= 1.0 ? 1.0 : 4.0; };
    const ScalarFn zero = [](double) { return Complex{}; };
    for (double t : {0.5, 1.0, 2.0, 3.0})
        CHECK(std::abs(c(t) - rk4_second_order(0.0, q, zero, 1.0, 0.0, t, 20000, {1.0})) < 1e-9);
    // Second derivative jumps by (w2^2 - w1^2) v(t1) and is left-continuous.
    CHECK(close(c.deriv2(1.0), -c(1.0), 1e-14));
    CHECK(close(c.deriv2(1.0 + 1e-12), -4.0 * c(1.0), 1e-9));

    const auto rows = classical_limit_study(1.0, 2.0, 1.0, 3.0, 1.0, 0.0, {0.4, 0.2, 0.1, 0.05}, 1024);
    REQUIRE(rows.size() == 4);
    for (std::size_t k = 1; k < rows.size(); ++k) {
        CHECK(rows[k].max_error < rows[k - 1].max_error);
        CHECK(rows[k].max_error / rows[k - 1].max_error == doctest::Approx(0.5).epsilon(0.1));
    }
    // Without a jump the g-solution is the classical one.
    for (double w2 : {1.5, 2.5}) {
        const auto exact = classical_limit_study(1.5, w2, 1.0, 3.0, 1.0, 0.2, {0.0}, 1024);
        CHECK(exact.front().max_error < 1e-9);
    }
}

TEST_CASE("helmholtz derivator") {
    const Derivator d = helmholtz_derivator(3.0, 1.0, 0.5);
    CHECK(d.eval_g(1.0) == doctest::Approx(1.0));
    CHECK(d.eval_g_right(1.0) == doctest::Approx(1.5));
    CHECK(d.jump(1.0) == 0.5);
    const Derivator flat = helmholtz_derivator(3.0, 1.0, 0.0);
    CHECK(flat.jump(1.0) == 0.0);
    CHECK(flat.eval_g(2.0) == doctest::Approx(2.0));
}
