#pragma once

#include "stieltjes/derivator.hpp"
#include "stieltjes/gfunction.hpp"
#include "stieltjes/quadrature.hpp"

#include <array>
#include <cstddef>
#include <functional>
#include <memory>
#include <vector>

namespace stieltjes {

inline constexpr std::size_t kDefaultGridN = 4096;

/// int_{[0,t)} f dmu_g. The jump at t itself is excluded.
Complex integrate(const Derivator& d, const ScalarFn& f, double t);
Complex integrate(const Derivator& d, const GFunction& f, double t);

/// int_{[a,b)} f dmu_g: includes the jump at a, excludes the jump at b.
Complex integrate(const Derivator& d, const ScalarFn& f, double a, double b);

/// int_a^b f rho dt, the absolutely continuous part only.
Complex integrate_continuous(const Derivator& d, const ScalarFn& f, double a, double b,
                             const QuadratureOptions& opt = {});

/// Prefix table for t -> int_{[0,t)} f dmu_g on grid(d,n).
///
/// The contribution of a jump t_j is jump_term(t_j, d_j), by default f(t_j)*d_j.
/// Each smooth cell keeps its eight Gauss samples; between nodes the partial cell
/// is the exact integral of their interpolant, so evaluation never calls f.
/// Cells that needed refinement fall back to adaptive quadrature.
class PrefixIntegral {
public:
    using JumpTerm = std::function<Complex(double t, double dj)>;

    PrefixIntegral(const Derivator& d, ScalarFn f, std::size_t n, JumpTerm jump_term = {});

    Complex operator()(double t) const;
    const std::vector<double>& nodes() const { return nodes_; }
    const std::vector<Complex>& prefix() const { return prefix_; }

private:
    Complex jump_contribution(double t) const;
    Complex cell_integral(double a, double b) const;
    Complex partial_cell(std::size_t i, double t) const;

    Derivator d_;
    ScalarFn f_;
    JumpTerm jump_term_;
    std::vector<double> nodes_;
    std::vector<Complex> prefix_;
    std::vector<char> cell_active_;
    std::vector<char> cell_smooth_;
    std::vector<std::array<Complex, 8>> samples_;  // integrand at the cell's Gauss nodes
};

/// Phi(t) = int_{[0,t)} f dmu_g, with Phi'_g = f as analytic derivative.
GFunction cumulative(const Derivator& d, const GFunction& f, std::size_t n = kDefaultGridN);
GFunction cumulative(const Derivator& d, const ScalarFn& f, std::size_t n = kDefaultGridN);

/// |w1 w2 (t) - w1 w2 (0) - [int w1' w2 + int w1 w2' + int w1' w2' dg]|.
double integrate_by_parts_check(const Derivator& d, const GFunction& w1, const GFunction& w2, double t);

}  // namespace stieltjes
