#pragma once

#include "stieltjes/derivator.hpp"
#include "stieltjes/gfunction.hpp"

#include <cmath>

namespace fixtures {

using stieltjes::Complex;
using stieltjes::Density;
using stieltjes::Derivator;
using stieltjes::GFunction;

inline constexpr Complex kI{0.0, 1.0};

// Unit density on [0,3] with a jump of 0.5 at t = 1.
inline Derivator e1() { return Derivator::identity(3.0, {{1.0, 0.5}}); }

// Unit density on [0,1) and [2,3), flat on [1,2), no jumps.
inline Derivator e2() {
    return Derivator(3.0,
                     {{0.0, 1.0, Density::constant(1.0)}, {1.0, 2.0, Density::zero()}, {2.0, 3.0, Density::constant(1.0)}},
                     {});
}

// Polynomial density 1 + t with three jumps.
inline Derivator poly3() {
    return Derivator(2.0, {{0.0, 2.0, Density::polynomial({1.0, 1.0})}}, {{0.5, 0.3}, {1.2, 0.7}, {1.7, 0.2}});
}

// Jump at 1 followed by a flat stretch [1, 1.5).
inline Derivator jump_then_flat() {
    return Derivator(2.5,
                     {{0.0, 1.0, Density::constant(2.0)}, {1.0, 1.5, Density::zero()}, {1.5, 2.5, Density::constant(0.5)}},
                     {{1.0, 0.4}});
}

inline GFunction identity_fn() {
    return {[](double t) { return Complex(t); }, [](double) { return Complex(1.0); }, [](double) { return Complex{}; },
            "t"};
}

inline GFunction g_itself(const Derivator& d) {
    return {[d](double t) { return Complex(d.eval_g(t)); }, [](double) { return Complex(1.0); },
            [](double) { return Complex{}; }, "g"};
}

}  // namespace fixtures
