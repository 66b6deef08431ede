#include "stieltjes/oracle.hpp"

#include <algorithm>
#include <cmath>

namespace stieltjes {

OracleReport make_report(Complex computed, Complex reference, std::size_t resolution) {
    return {computed, reference, std::abs(computed - reference), resolution};
}

Complex riemann_stieltjes_sum(const Derivator& d, const ScalarFn& f, double t, std::size_t n) {
    const auto s = d.grid(n);
    Complex acc{};
    for (std::size_t i = 0; i + 1 < s.size() && s[i] < t; ++i) {
        const double right = std::min(s[i + 1], t);
        const double dg = d.eval_g(right) - d.eval_g(s[i]);
        if (dg != 0.0) acc += f(s[i]) * dg;
    }
    return acc;
}

Complex step_first_order(const Derivator& d, const ScalarFn& p, Complex u0, double t, std::size_t n) {
    const auto s = d.grid(n);
    Complex u = u0;
    for (std::size_t i = 0; i + 1 < s.size() && s[i] < t; ++i) {
        const double right = std::min(s[i + 1], t);
        const double dj = d.jump(s[i]);
        const Complex pi = p(s[i]);
        if (dj != 0.0) u *= 1.0 + pi * dj;
        const double cont = d.eval_g(right) - d.eval_g(s[i]) - dj;
        u *= 1.0 + pi * cont;
    }
    return u;
}

std::vector<Rk4State> rk4_trajectory(double P, const RealFn& Q, const ScalarFn& f, Complex x0, Complex v0,
                                     double t_end, std::size_t n, const std::vector<double>& breakpoints) {
    std::vector<double> cuts{0.0};
    for (double b : breakpoints)
        if (b > 0.0 && b < t_end) cuts.push_back(b);
    cuts.push_back(t_end);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    std::vector<Rk4State> out{{0.0, x0, v0}};
    if (!(t_end > 0.0)) return out;
    Complex x = x0, v = v0;
    for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
        const double a = cuts[k], b = cuts[k + 1];
        const auto m = std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(n * (b - a) / t_end)));
        const double h = (b - a) / static_cast<double>(m);
        // Stage times are clamped into (a,b] so the left endpoint sees the right-side coefficient.
        auto at = [a, b](double s) { return std::clamp(s, std::nextafter(a, b), b); };
        auto accel = [&](double s, Complex xs, Complex vs) {
            const double ss = at(s);
            return f(ss) - P * vs - Q(ss) * xs;
        };
        for (std::size_t i = 0; i < m; ++i) {
            const double s = a + h * static_cast<double>(i);
            const Complex k1x = v, k1v = accel(s, x, v);
            const Complex k2x = v + 0.5 * h * k1v, k2v = accel(s + 0.5 * h, x + 0.5 * h * k1x, k2x);
            const Complex k3x = v + 0.5 * h * k2v, k3v = accel(s + 0.5 * h, x + 0.5 * h * k2x, k3x);
            const Complex k4x = v + h * k3v, k4v = accel(s + h, x + h * k3x, k4x);
            x += h / 6.0 * (k1x + 2.0 * k2x + 2.0 * k3x + k4x);
            v += h / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
            const double tn = (i + 1 == m) ? b : a + h * static_cast<double>(i + 1);
            out.push_back({tn, x, v});
        }
    }
    return out;
}

Complex rk4_second_order(double P, const RealFn& Q, const ScalarFn& f, Complex x0, Complex v0, double t,
                         std::size_t n, const std::vector<double>& breakpoints) {
    return rk4_trajectory(P, Q, f, x0, v0, t, n, breakpoints).back().x;
}

}  // namespace stieltjes
