#pragma once

#include <complex>
#include <functional>
#include <string>
#include <utility>

namespace stieltjes {

using Complex = std::complex<double>;
using ScalarFn = std::function<Complex(double)>;

/// Complex-valued function on [0,T] with optional analytic g-derivatives.
///
/// When deriv1 is present it must satisfy the jump quotient at every jump
/// abscissa: deriv1(t_j) * dg(t_j) == value(t_j+) - value(t_j).
struct GFunction {
    ScalarFn value;
    ScalarFn deriv1;
    ScalarFn deriv2;
    std::string label;

    GFunction() = default;
    GFunction(ScalarFn v, std::string name = {}) : value(std::move(v)), label(std::move(name)) {}
    GFunction(ScalarFn v, ScalarFn d1, ScalarFn d2, std::string name)
        : value(std::move(v)), deriv1(std::move(d1)), deriv2(std::move(d2)), label(std::move(name)) {}

    Complex operator()(double t) const { return value(t); }
    bool has_deriv1() const { return static_cast<bool>(deriv1); }
    bool has_deriv2() const { return static_cast<bool>(deriv2); }

    static GFunction constant(Complex c) {
        return {[c](double) { return c; }, [](double) { return Complex{}; },
                [](double) { return Complex{}; }, "const"};
    }
};

}  // namespace stieltjes
