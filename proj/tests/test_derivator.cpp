#include "fixtures.hpp"
#include "stieltjes/errors.hpp"
#include "stieltjes/oracle.hpp"

#include <doctest.h>

#include <algorithm>
#include <random>

using namespace stieltjes;
using namespace fixtures;

namespace {
bool has(const std::vector<std::string>& v, const std::string& s) { return std::find(v.begin(), v.end(), s) != v.end(); }
bool contains_point(const std::vector<double>& g, double x) { return std::find(g.begin(), g.end(), x) != g.end(); }
}  // namespace

TEST_CASE("eval_g is left-continuous at the jump") {
    const Derivator d = e1();
    CHECK(d.eval_g(0.5) == doctest::Approx(0.5));
    CHECK(d.eval_g(1.0) == doctest::Approx(1.0));
    CHECK(d.eval_g(2.0) == doctest::Approx(2.5));
    // Same value from the naive sum of g-increments.
    CHECK(std::abs(riemann_stieltjes_sum(d, [](double) { return Complex(1.0); }, 2.0, 64) - 2.5) < 1e-14);
}

TEST_CASE("eval_g_right adds the jump") {
    const Derivator d = e1();
    CHECK(d.eval_g_right(1.0) == doctest::Approx(1.5));
    CHECK(d.eval_g_right(0.5) == doctest::Approx(0.5));
    CHECK(d.eval_g_right(3.0) == doctest::Approx(3.5));
}

TEST_CASE("g0 shifts every value") {
    const Derivator d = Derivator::identity(2.0, {{1.0, 1.0}}, -1.0);
    CHECK(d.eval_g(0.0) == doctest::Approx(-1.0));
    CHECK(d.eval_g(1.0) == doctest::Approx(0.0));
    CHECK(d.eval_g(1.5) == doctest::Approx(1.5));
}

TEST_CASE("jump sizes are exact and vanish off the jump set") {
    CHECK(e1().jump(1.0) == 0.5);
    CHECK(e1().jump(0.7) == 0.0);
    CHECK(e2().jump(1.5) == 0.0);
    CHECK(e1().jump(std::nextafter(1.0, 2.0)) == 0.0);
}

TEST_CASE("star redirects constancy interiors to the right endpoint") {
    CHECK(e1().star(2.0) == 2.0);
    CHECK(e2().star(1.5) == 2.0);
    CHECK(e2().star(1.0) == 1.0);
    CHECK(e2().star(2.0) == 2.0);
    for (double t : {0.0, 0.3, 1.0, 1.2, 1.99, 2.0, 2.7, 3.0}) CHECK(e2().star(e2().star(t)) == e2().star(t));
}

TEST_CASE("classify tags structural points") {
    const PointClass j = e1().classify(1.0);
    CHECK(j.tag == PointClass::Tag::Jump);
    CHECK(j.jump_size == 0.5);
    CHECK(e2().classify(2.0).tag == PointClass::Tag::NgPlus);
    CHECK(e2().classify(1.0).tag == PointClass::Tag::NgMinus);
    const PointClass c = e2().classify(1.5);
    CHECK(c.tag == PointClass::Tag::Constancy);
    CHECK(c.a == 1.0);
    CHECK(c.b == 2.0);
    CHECK(e1().classify(2.0).tag == PointClass::Tag::Regular);
}

TEST_CASE("a jump at the start of a flat stretch is a jump, not an N_g point") {
    const Derivator d = jump_then_flat();
    CHECK(d.classify(1.0).tag == PointClass::Tag::Jump);
    CHECK(d.classify(1.5).tag == PointClass::Tag::NgPlus);
    CHECK(d.star(1.2) == 1.5);
}

TEST_CASE("validate reports standing-hypothesis violations") {
    CHECK(e1().validate().empty());
    CHECK(e2().validate().empty());
    CHECK(has(Derivator::identity(3.0, {{3.0, 0.5}}).validate(), "T ∈ D_g"));
    CHECK(has(Derivator::identity(3.0, {{0.0, 0.5}}).validate(), "0 ∈ D_g"));
    const Derivator flat_start(1.0, {{0.0, 0.5, Density::zero()}, {0.5, 1.0, Density::constant(1.0)}}, {});
    CHECK(has(flat_start.validate(), "0 ∈ N_g⁻"));
    const Derivator flat_end(1.0, {{0.0, 0.5, Density::constant(1.0)}, {0.5, 1.0, Density::zero()}}, {});
    CHECK(has(flat_end.validate(), "T ∈ N_g⁺ ∪ C_g"));
    const Derivator gap(1.0, {{0.0, 0.4, Density::constant(1.0)}, {0.5, 1.0, Density::constant(1.0)}}, {});
    CHECK_FALSE(gap.validate().empty());
    CHECK_FALSE(Derivator::identity(2.0, {{1.0, -0.1}}).validate().empty());
    CHECK_FALSE(Derivator::identity(2.0, {{1.0, 0.1}, {1.0, 0.2}}).validate().empty());
    CHECK_THROWS_AS(Derivator::checked(3.0, {{0.0, 3.0, Density::constant(1.0)}}, {{3.0, 1.0}}), PreconditionError);
    CHECK_THROWS_AS(Derivator(0.0, {{0.0, 1.0, Density::constant(1.0)}}, {}), std::invalid_argument);
}

TEST_CASE("flat runs split at interior jumps") {
    const Derivator d(3.0,
                      {{0.0, 1.0, Density::constant(1.0)}, {1.0, 2.0, Density::zero()}, {2.0, 3.0, Density::constant(1.0)}},
                      {{1.5, 0.2}});
    REQUIRE(d.constancy().size() == 2);
    CHECK(d.constancy()[0].a == 1.0);
    CHECK(d.constancy()[0].b == 1.5);
    CHECK(d.constancy()[1].a == 1.5);
    CHECK(d.constancy()[1].b == 2.0);
    CHECK(d.star(1.2) == 1.5);
    CHECK(d.star(1.7) == 2.0);
}

TEST_CASE("grid contains structural points and honours the cell bound") {
    const auto g4 = e1().grid(4);
    CHECK(contains_point(g4, 0.0));
    CHECK(contains_point(g4, 1.0));
    CHECK(contains_point(g4, 3.0));
    CHECK(g4.size() >= 5);
    const auto g10 = e2().grid(10);
    for (double x : {0.0, 1.0, 2.0, 3.0}) CHECK(contains_point(g10, x));
    const auto g = e1().grid(1000);
    CHECK(std::is_sorted(g.begin(), g.end()));
    double widest = 0.0;
    for (std::size_t i = 1; i < g.size(); ++i) widest = std::max(widest, g[i] - g[i - 1]);
    CHECK(widest <= 2.0 * 3.0 / 1000);
    const auto gp = poly3().grid(50);
    for (double x : {0.5, 1.2, 1.7}) CHECK(contains_point(gp, x));
}

TEST_CASE("eval_g is nondecreasing and left-continuous across the corpus") {
    std::mt19937 rng(7);
    for (const Derivator& d : {e1(), e2(), poly3(), jump_then_flat()}) {
        std::uniform_real_distribution<double> U(0.0, d.T());
        std::vector<double> ts(400);
        for (auto& t : ts) t = U(rng);
        std::sort(ts.begin(), ts.end());
        for (std::size_t i = 1; i < ts.size(); ++i) CHECK(d.eval_g(ts[i - 1]) <= d.eval_g(ts[i]));
        double rho_max = 0.0;
        for (double t : d.grid(64)) rho_max = std::max(rho_max, d.density(t));
        for (const auto& j : d.jumps())
            for (double h : {1e-3, 1e-5, 1e-7, 1e-9})
                CHECK(std::abs(d.eval_g(j.t) - d.eval_g(j.t - h)) <= rho_max * h * (1.0 + 1e-6) + 1e-15);
    }
}

TEST_CASE("queries outside [0,T] are domain errors") {
    CHECK_THROWS_AS(e1().eval_g(-0.1), DomainError);
    CHECK_THROWS_AS(e1().eval_g(3.1), DomainError);
    CHECK_THROWS_AS(e1().jump(4.0), DomainError);
}
