#include "stieltjes/gmeasure.hpp"

#include "stieltjes/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace stieltjes {

namespace {

constexpr std::array<double, 4> kNodes = {0.1834346424956498, 0.5255324099163290, 0.7966664774136267,
                                          0.9602898564975363};
constexpr std::array<double, 4> kWeights = {0.3626837833783620, 0.3137066458778873, 0.2223810344533745,
                                            0.1012285362903763};

Complex checked_sample(const ScalarFn& f, double s) {
    Complex v = f(s);
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
        throw IntegrationError("non-finite integrand sample at t=" + format_abscissa(s), s);
    return v;
}

Complex gauss8(const ScalarFn& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    Complex acc{};
    for (std::size_t i = 0; i < kNodes.size(); ++i) {
        acc += kWeights[i] * (checked_sample(f, c - h * kNodes[i]) + checked_sample(f, c + h * kNodes[i]));
    }
    return acc * h;
}

Complex adapt(const ScalarFn& f, double a, double b, Complex whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    Complex left = gauss8(f, a, m);
    Complex right = gauss8(f, m, b);
    Complex both = left + right;
    if (depth <= 0 || std::abs(both - whole) <= tol) return both;
    return adapt(f, a, m, left, 0.5 * tol, depth - 1) + adapt(f, m, b, right, 0.5 * tol, depth - 1);
}

// The same rule as gauss8, nodes listed in increasing order.
constexpr std::array<double, 8> kInterpNodes = {-kNodes[3], -kNodes[2], -kNodes[1], -kNodes[0],
                                                kNodes[0],  kNodes[1],  kNodes[2],  kNodes[3]};
constexpr std::array<double, 8> kInterpWeights = {kWeights[3], kWeights[2], kWeights[1], kWeights[0],
                                                  kWeights[0], kWeights[1], kWeights[2], kWeights[3]};

const std::array<double, 8>& barycentric_weights() {
    static const std::array<double, 8> w = [] {
        std::array<double, 8> out{};
        for (std::size_t k = 0; k < 8; ++k) {
            double prod = 1.0;
            for (std::size_t m = 0; m < 8; ++m)
                if (m != k) prod *= kInterpNodes[k] - kInterpNodes[m];
            out[k] = 1.0 / prod;
        }
        return out;
    }();
    return w;
}

// Degree-7 interpolant through the samples, second barycentric form.
Complex interpolate(const std::array<Complex, 8>& samples, double y) {
    const auto& w = barycentric_weights();
    Complex num{};
    double den = 0.0;
    for (std::size_t k = 0; k < 8; ++k) {
        const double diff = y - kInterpNodes[k];
        if (diff == 0.0) return samples[k];
        const double c = w[k] / diff;
        num += c * samples[k];
        den += c;
    }
    return num / den;
}

}  // namespace

Complex gauss_adaptive(const ScalarFn& f, double a, double b, const QuadratureOptions& opt) {
    if (!(b > a)) return {};
    return adapt(f, a, b, gauss8(f, a, b), opt.abs_tol, opt.max_depth);
}

Complex integrate_continuous(const Derivator& d, const ScalarFn& f, double a, double b,
                             const QuadratureOptions& opt) {
    if (!(b > a)) return {};
    // Split at every structural point so each panel lies inside one smooth piece.
    std::vector<double> cuts{a};
    for (double s : d.structural_points())
        if (s > a && s < b) cuts.push_back(s);
    cuts.push_back(b);
    Complex total{};
    for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
        double lo = cuts[k], hi = cuts[k + 1];
        if (d.declared_zero_at(0.5 * (lo + hi))) continue;
        ScalarFn integrand = [&](double s) { return f(s) * d.density(s); };
        total += gauss_adaptive(integrand, lo, hi, opt);
    }
    return total;
}

Complex integrate(const Derivator& d, const ScalarFn& f, double a, double b) {
    if (!(a >= 0.0 && b <= d.T())) throw DomainError("integration bounds outside [0,T]");
    if (!(b > a)) return {};
    Complex total = integrate_continuous(d, f, a, b);
    for (const auto& j : d.jumps()) {
        if (j.t < a) continue;
        if (j.t >= b) break;
        total += checked_sample(f, j.t) * j.size;
    }
    return total;
}

Complex integrate(const Derivator& d, const ScalarFn& f, double t) { return integrate(d, f, 0.0, t); }

Complex integrate(const Derivator& d, const GFunction& f, double t) { return integrate(d, f.value, 0.0, t); }

PrefixIntegral::PrefixIntegral(const Derivator& d, ScalarFn f, std::size_t n, JumpTerm jump_term)
    : d_(d), f_(std::move(f)), jump_term_(std::move(jump_term)), nodes_(d_.grid(n)) {
    prefix_.assign(nodes_.size(), Complex{});
    cell_active_.assign(nodes_.size(), 0);
    cell_smooth_.assign(nodes_.size(), 0);
    samples_.assign(nodes_.size(), {});
    const QuadratureOptions opt;
    ScalarFn integrand = [this](double s) { return f_(s) * d_.density(s); };
    for (std::size_t i = 0; i + 1 < nodes_.size(); ++i) {
        const double a = nodes_[i], b = nodes_[i + 1];
        Complex cell{};
        cell_active_[i] = !d_.declared_zero_at(0.5 * (a + b));
        if (cell_active_[i]) {
            const double c = 0.5 * (a + b), h = 0.5 * (b - a);
            Complex whole{};
            for (std::size_t k = 0; k < 8; ++k) {
                samples_[i][k] = checked_sample(integrand, c + h * kInterpNodes[k]);
                whole += kInterpWeights[k] * samples_[i][k];
            }
            whole *= h;
            const Complex halves = gauss8(integrand, a, c) + gauss8(integrand, c, b);
            if (std::abs(halves - whole) <= opt.abs_tol) {
                cell_smooth_[i] = 1;
                cell = halves;
            } else {
                cell = gauss_adaptive(integrand, a, b, opt);
            }
        }
        prefix_[i + 1] = prefix_[i] + jump_contribution(a) + cell;
    }
}

Complex PrefixIntegral::jump_contribution(double t) const {
    double dj = d_.jump(t);
    if (dj == 0.0) return {};
    Complex v = jump_term_ ? jump_term_(t, dj) : checked_sample(f_, t) * dj;
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
        throw IntegrationError("non-finite jump contribution at t=" + format_abscissa(t), t);
    return v;
}

Complex PrefixIntegral::cell_integral(double a, double b) const {
    if (!(b > a)) return {};
    ScalarFn integrand = [this](double s) { return f_(s) * d_.density(s); };
    return gauss_adaptive(integrand, a, b);
}

Complex PrefixIntegral::partial_cell(std::size_t i, double t) const {
    const double a = nodes_[i], b = nodes_[i + 1];
    if (!cell_smooth_[i]) return cell_integral(a, t);
    // Local coordinate tau of t in [-1,1]; integrate the interpolant over [-1,tau] by Gauss.
    const double tau = -1.0 + 2.0 * (t - a) / (b - a);
    const double half = 0.5 * (tau + 1.0);
    Complex acc{};
    for (std::size_t j = 0; j < 8; ++j) {
        const double y = -1.0 + half * (1.0 + kInterpNodes[j]);
        acc += kInterpWeights[j] * interpolate(samples_[i], y);
    }
    return acc * half * 0.5 * (b - a);
}

Complex PrefixIntegral::operator()(double t) const {
    if (!(t >= 0.0 && t <= d_.T()))
        throw DomainError("t=" + format_abscissa(t) + " outside [0," + format_abscissa(d_.T()) + "]");
    auto it = std::lower_bound(nodes_.begin(), nodes_.end(), t);
    auto k = static_cast<std::size_t>(it - nodes_.begin());
    if (it != nodes_.end() && *it == t) return prefix_[k];
    std::size_t i = k - 1;  // nodes_[i] < t < nodes_[i+1]
    Complex partial = cell_active_[i] ? partial_cell(i, t) : Complex{};
    return prefix_[i] + jump_contribution(nodes_[i]) + partial;
}

GFunction cumulative(const Derivator& d, const ScalarFn& f, std::size_t n) {
    auto table = std::make_shared<const PrefixIntegral>(d, f, n);
    return {[table](double t) { return (*table)(t); }, f, {}, "cumulative"};
}

GFunction cumulative(const Derivator& d, const GFunction& f, std::size_t n) {
    GFunction out = cumulative(d, f.value, n);
    if (f.has_deriv1()) out.deriv2 = f.deriv1;
    return out;
}

double integrate_by_parts_check(const Derivator& d, const GFunction& w1, const GFunction& w2, double t) {
    if (!w1.has_deriv1() || !w2.has_deriv1())
        throw ContractError("integration by parts requires analytic first derivatives");
    ScalarFn integrand = [&](double s) {
        Complex a = w1.deriv1(s), b = w2.deriv1(s);
        return a * w2.value(s) + w1.value(s) * b + a * b * d.jump(s);
    };
    Complex lhs = w1.value(t) * w2.value(t) - w1.value(0.0) * w2.value(0.0);
    return std::abs(lhs - integrate(d, integrand, t));
}

}  // namespace stieltjes
