#pragma once

// Brute-force references. These use only the Derivator type and never call
// into the quadrature or exponential code they are meant to check.

#include "stieltjes/derivator.hpp"
#include "stieltjes/gfunction.hpp"

#include <cstddef>
#include <functional>
#include <vector>

namespace stieltjes {

struct OracleReport {
    Complex computed;
    Complex reference;
    double abs_error = 0.0;
    std::size_t resolution = 0;
};

OracleReport make_report(Complex computed, Complex reference, std::size_t resolution);

/// Left-point sum of f against g-increments over grid(d,n) restricted to [0,t).
Complex riemann_stieltjes_sum(const Derivator& d, const ScalarFn& f, double t, std::size_t n);

/// Product integral u_{i+1} = u_i (1 + p(s_i) (g(s_{i+1}) - g(s_i))), with the
/// jump factor 1 + p(t_j) d_j applied separately.
Complex step_first_order(const Derivator& d, const ScalarFn& p, Complex u0, double t, std::size_t n);

using RealFn = std::function<double(double)>;

struct Rk4State {
    double t = 0.0;
    Complex x;
    Complex v;
};

/// Classical RK4 for x'' + P x' + Q(t) x = f(t). Steps are distributed over
/// the segments between breakpoints, and coefficients on a segment are taken
/// from its interior so a switch at a breakpoint acts on the right side.
std::vector<Rk4State> rk4_trajectory(double P, const RealFn& Q, const ScalarFn& f, Complex x0, Complex v0,
                                     double t_end, std::size_t n, const std::vector<double>& breakpoints = {});

Complex rk4_second_order(double P, const RealFn& Q, const ScalarFn& f, Complex x0, Complex v0, double t,
                         std::size_t n, const std::vector<double>& breakpoints = {});

}  // namespace stieltjes
