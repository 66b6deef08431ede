#include "stieltjes/derivator.hpp"

#include "stieltjes/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace stieltjes {

std::string format_abscissa(double t) {
    std::ostringstream os;
    os.precision(17);
    os << t;
    return os.str();
}

double Density::operator()(double t) const {
    switch (kind) {
    case Kind::Zero:
        return 0.0;
    case Kind::Const:
        return coeffs.empty() ? 0.0 : coeffs[0];
    case Kind::Poly: {
        double acc = 0.0;
        for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * t + *it;
        return acc;
    }
    }
    return 0.0;
}

double Density::mass(double a, double b) const {
    switch (kind) {
    case Kind::Zero:
        return 0.0;
    case Kind::Const:
        return (coeffs.empty() ? 0.0 : coeffs[0]) * (b - a);
    case Kind::Poly: {
        // Horner on the antiderivative sum_k c_k t^(k+1)/(k+1).
        auto prim = [this](double t) {
            double acc = 0.0;
            for (std::size_t k = coeffs.size(); k-- > 0;)
                acc = acc * t + coeffs[k] / static_cast<double>(k + 1);
            return acc * t;
        };
        return prim(b) - prim(a);
    }
    }
    return 0.0;
}

Derivator::Derivator(double T, std::vector<DensityPiece> pieces, std::vector<Jump> jumps, double g0)
    : T_(T), g0_(g0), pieces_(std::move(pieces)), jumps_(std::move(jumps)) {
    if (!(T_ > 0.0) || !std::isfinite(T_)) throw std::invalid_argument("derivator: T must be positive and finite");
    if (pieces_.empty()) throw std::invalid_argument("derivator: at least one density piece is required");
    std::sort(pieces_.begin(), pieces_.end(),
              [](const DensityPiece& x, const DensityPiece& y) { return x.from < y.from; });
    std::sort(jumps_.begin(), jumps_.end(), [](const Jump& x, const Jump& y) { return x.t < y.t; });

    piece_mass_prefix_.assign(pieces_.size() + 1, 0.0);
    for (std::size_t i = 0; i < pieces_.size(); ++i)
        piece_mass_prefix_[i + 1] =
            piece_mass_prefix_[i] + pieces_[i].density.mass(pieces_[i].from, pieces_[i].to);

    // Maximal runs of declared-zero pieces, split at interior jumps.
    std::size_t i = 0;
    while (i < pieces_.size()) {
        if (!pieces_[i].density.is_zero()) {
            ++i;
            continue;
        }
        double a = pieces_[i].from;
        double b = pieces_[i].to;
        std::size_t k = i + 1;
        while (k < pieces_.size() && pieces_[k].density.is_zero() && pieces_[k].from == b) {
            b = pieces_[k].to;
            ++k;
        }
        double lo = a;
        for (const auto& j : jumps_) {
            if (j.t > a && j.t < b) {
                if (j.t > lo) constancy_.push_back({lo, j.t});
                lo = j.t;
            }
        }
        if (b > lo) constancy_.push_back({lo, b});
        i = k;
    }

    structural_ = {0.0, T_};
    for (const auto& j : jumps_) structural_.push_back(j.t);
    for (const auto& p : pieces_) {
        structural_.push_back(p.from);
        structural_.push_back(p.to);
    }
    for (const auto& c : constancy_) {
        structural_.push_back(c.a);
        structural_.push_back(c.b);
    }
    structural_.erase(std::remove_if(structural_.begin(), structural_.end(),
                                     [this](double s) { return !(s >= 0.0 && s <= T_); }),
                      structural_.end());
    std::sort(structural_.begin(), structural_.end());
    structural_.erase(std::unique(structural_.begin(), structural_.end()), structural_.end());
}

Derivator Derivator::identity(double T, std::vector<Jump> jumps, double g0) {
    return Derivator(T, {{0.0, T, Density::constant(1.0)}}, std::move(jumps), g0);
}

Derivator Derivator::checked(double T, std::vector<DensityPiece> pieces, std::vector<Jump> jumps,
                             double g0) {
    Derivator d(T, std::move(pieces), std::move(jumps), g0);
    auto violations = d.validate();
    if (!violations.empty()) {
        std::string msg = "invalid derivator:";
        for (const auto& v : violations) msg += " [" + v + "]";
        throw PreconditionError(msg);
    }
    return d;
}

void Derivator::check_domain(double t) const {
    if (!(t >= 0.0 && t <= T_))
        throw DomainError("t=" + format_abscissa(t) + " outside [0," + format_abscissa(T_) + "]");
}

std::size_t Derivator::piece_index(double t) const {
    auto it = std::upper_bound(pieces_.begin(), pieces_.end(), t,
                               [](double x, const DensityPiece& p) { return x < p.from; });
    if (it == pieces_.begin()) return 0;
    return static_cast<std::size_t>(it - pieces_.begin()) - 1;
}

double Derivator::continuous_part(double t) const {
    check_domain(t);
    std::size_t i = piece_index(t);
    const auto& p = pieces_[i];
    double upper = std::min(t, p.to);
    double partial = upper > p.from ? p.density.mass(p.from, upper) : 0.0;
    return piece_mass_prefix_[i] + partial;
}

double Derivator::density(double t) const {
    check_domain(t);
    return pieces_[piece_index(t)].density(t);
}

bool Derivator::declared_zero_at(double t) const {
    check_domain(t);
    return pieces_[piece_index(t)].density.is_zero();
}

double Derivator::eval_g(double t) const {
    double value = g0_ + continuous_part(t);
    for (const auto& j : jumps_) {
        if (j.t >= t) break;
        value += j.size;
    }
    return value;
}

double Derivator::eval_g_right(double t) const { return eval_g(t) + jump(t); }

double Derivator::jump(double t) const {
    check_domain(t);
    auto it = std::lower_bound(jumps_.begin(), jumps_.end(), t,
                               [](const Jump& j, double x) { return j.t < x; });
    return (it != jumps_.end() && it->t == t) ? it->size : 0.0;
}

bool Derivator::is_jump(double t) const { return jump(t) != 0.0; }

double Derivator::star(double t) const {
    check_domain(t);
    for (const auto& c : constancy_)
        if (t > c.a && t < c.b) return c.b;
    return t;
}

PointClass Derivator::classify(double t) const {
    check_domain(t);
    PointClass pc;
    if (double dj = jump(t); dj != 0.0) {
        pc.tag = PointClass::Tag::Jump;
        pc.jump_size = dj;
        return pc;
    }
    for (const auto& c : constancy_) {
        if (t > c.a && t < c.b) {
            pc.tag = PointClass::Tag::Constancy;
            pc.a = c.a;
            pc.b = c.b;
            return pc;
        }
        if (t == c.a) pc.tag = PointClass::Tag::NgMinus;
        if (t == c.b) pc.tag = PointClass::Tag::NgPlus;
    }
    return pc;
}

std::vector<std::string> Derivator::validate() const {
    std::vector<std::string> out;
    if (pieces_.front().from != 0.0) out.push_back("density pieces must start at 0");
    if (pieces_.back().to != T_) out.push_back("density pieces must end at T");
    for (std::size_t i = 0; i < pieces_.size(); ++i) {
        const auto& p = pieces_[i];
        if (!(p.to > p.from)) out.push_back("empty density piece at " + format_abscissa(p.from));
        if (i + 1 < pieces_.size() && pieces_[i + 1].from != p.to)
            out.push_back("density pieces do not tile [0,T] at " + format_abscissa(p.to));
        if (p.density.kind == Density::Kind::Const && p.density.coeffs.empty())
            out.push_back("constant density without value on piece at " + format_abscissa(p.from));
        // Polynomial sign is checked by dense sampling including both endpoints.
        const int samples = p.density.kind == Density::Kind::Poly ? 256 : 1;
        for (int k = 0; k <= samples; ++k) {
            double s = p.from + (p.to - p.from) * k / samples;
            double r = p.density(s);
            if (!(r >= 0.0) || !std::isfinite(r)) {
                out.push_back("negative or non-finite density on piece at " + format_abscissa(p.from));
                break;
            }
        }
    }
    for (std::size_t i = 0; i < jumps_.size(); ++i) {
        const auto& j = jumps_[i];
        if (i > 0 && jumps_[i - 1].t == j.t) out.push_back("duplicate jump at " + format_abscissa(j.t));
        if (!(j.size > 0.0) || !std::isfinite(j.size))
            out.push_back("jump size must be positive at " + format_abscissa(j.t));
        if (j.t == 0.0) out.push_back("0 ∈ D_g");
        else if (j.t == T_) out.push_back("T ∈ D_g");
        else if (!(j.t > 0.0 && j.t < T_)) out.push_back("jump outside (0,T) at " + format_abscissa(j.t));
    }
    for (const auto& c : constancy_) {
        if (c.a == 0.0) out.push_back("0 ∈ N_g⁻");
        if (c.b == T_) out.push_back("T ∈ N_g⁺ ∪ C_g");
    }
    return out;
}

std::vector<double> Derivator::grid(std::size_t n) const {
    if (n < 1) n = 1;
    std::vector<double> pts;
    pts.reserve(n + structural_.size() + 1);
    pts.push_back(structural_.front());
    const double width = T_ / static_cast<double>(n);
    for (std::size_t k = 0; k + 1 < structural_.size(); ++k) {
        double a = structural_[k];
        double b = structural_[k + 1];
        auto m = static_cast<std::size_t>(std::ceil((b - a) / width - 1e-9));
        m = std::max<std::size_t>(m, 1);
        for (std::size_t i = 1; i < m; ++i) pts.push_back(a + (b - a) * static_cast<double>(i) / static_cast<double>(m));
        pts.push_back(b);
    }
    return pts;
}

double Derivator::structural_before(double t) const {
    auto it = std::lower_bound(structural_.begin(), structural_.end(), t);
    if (it == structural_.begin()) return 0.0;
    return *(it - 1);
}

double Derivator::structural_after(double t) const {
    auto it = std::upper_bound(structural_.begin(), structural_.end(), t);
    if (it == structural_.end()) return T_;
    return *it;
}

bool Derivator::is_structural(double t) const {
    return std::binary_search(structural_.begin(), structural_.end(), t);
}

bool Derivator::density_breaks_at(double t) const {
    if (!(t > 0.0 && t < T_)) return false;
    for (std::size_t i = 0; i + 1 < pieces_.size(); ++i) {
        if (pieces_[i].to == t) return pieces_[i].density(t) != pieces_[i + 1].density(t);
    }
    return false;
}

}  // namespace stieltjes
