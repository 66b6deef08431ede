#include "stieltjes/config.hpp"

#include "stieltjes/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace stieltjes {

namespace {

const Json& require(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw ConfigError(std::string("missing field \"") + key + "\"");
    return j.at(key);
}

}  // namespace

double parse_real(const Json& j) {
    if (j.is_number()) return j.get<double>();
    if (j.is_string()) {
        const auto s = j.get<std::string>();
        if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
        if (s == "inf") return std::numeric_limits<double>::infinity();
        if (s == "-inf") return -std::numeric_limits<double>::infinity();
    }
    throw ConfigError("expected a real number, got " + j.dump());
}

Complex parse_complex(const Json& j) {
    if (j.is_array()) {
        if (j.size() != 2) throw ConfigError("complex values are [re, im] pairs, got " + j.dump());
        return {parse_real(j[0]), parse_real(j[1])};
    }
    return {parse_real(j), 0.0};
}

Derivator parse_derivator(const Json& j) {
    const double T = parse_real(require(j, "T"));
    const double g0 = j.contains("g0") ? parse_real(j.at("g0")) : 0.0;
    std::vector<DensityPiece> pieces;
    if (j.contains("pieces")) {
        for (const auto& p : j.at("pieces")) {
            DensityPiece piece;
            piece.from = parse_real(require(p, "from"));
            piece.to = parse_real(require(p, "to"));
            const auto& dens = require(p, "density");
            const auto kind = require(dens, "kind").get<std::string>();
            if (kind == "zero") {
                piece.density = Density::zero();
            } else if (kind == "const") {
                piece.density = Density::constant(parse_real(require(dens, "value")));
            } else if (kind == "poly") {
                std::vector<double> c;
                for (const auto& x : require(dens, "coeffs")) c.push_back(parse_real(x));
                piece.density = Density::polynomial(std::move(c));
            } else {
                throw ConfigError("unknown density kind \"" + kind + "\"");
            }
            pieces.push_back(std::move(piece));
        }
    } else {
        pieces.push_back({0.0, T, Density::constant(1.0)});
    }
    std::vector<Jump> jumps;
    if (j.contains("jumps"))
        for (const auto& x : j.at("jumps")) jumps.push_back({parse_real(require(x, "t")), parse_real(require(x, "d"))});
    try {
        Derivator d(T, std::move(pieces), std::move(jumps), g0);
        auto violations = d.validate();
        if (!violations.empty()) {
            std::string msg = "derivator violates its invariants:";
            for (const auto& v : violations) msg += " [" + v + "]";
            throw ConfigError(msg);
        }
        return d;
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
}

ParsedFunction parse_function(const Json& j, const Derivator& d) {
    const auto kind = require(j, "kind").get<std::string>();
    ParsedFunction out;
    if (kind == "const") {
        const Complex c = parse_complex(require(j, "value"));
        out.fn = GFunction::constant(c);
        out.constant = c;
        return out;
    }
    if (kind == "piecewise-const") {
        std::vector<double> until;
        std::vector<Complex> vals;
        const auto& segs = require(j, "value");
        if (!segs.is_array() || segs.empty()) throw ConfigError("piecewise-const needs a non-empty segment list");
        for (std::size_t k = 0; k < segs.size(); ++k) {
            vals.push_back(parse_complex(require(segs[k], "value")));
            if (k + 1 < segs.size()) {
                const double b = parse_real(require(segs[k], "until"));
                if (!d.is_jump(b))
                    throw ConfigError("piecewise-const breakpoint " + format_abscissa(b) + " is not a jump abscissa");
                if (!until.empty() && !(b > until.back())) throw ConfigError("piecewise-const breakpoints must increase");
                until.push_back(b);
            }
        }
        auto index = [until](double t) {
            return static_cast<std::size_t>(std::lower_bound(until.begin(), until.end(), t) - until.begin());
        };
        ScalarFn v = [index, vals](double t) { return vals[index(t)]; };
        // Constant between switches; the jump quotient carries the step.
        ScalarFn d1 = [d, until, vals](double t) -> Complex {
            auto it = std::find(until.begin(), until.end(), t);
            if (it == until.end()) return {};
            auto k = static_cast<std::size_t>(it - until.begin());
            return (vals[k + 1] - vals[k]) / d.jump(t);
        };
        out.fn = GFunction{v, d1, {}, "piecewise-const"};
        out.breaks = until;
        return out;
    }
    if (kind == "poly") {
        std::vector<Complex> c;
        for (const auto& x : require(j, "coeffs")) c.push_back(parse_complex(x));
        out.fn = GFunction{[c](double t) {
                               Complex acc{};
                               for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * t + *it;
                               return acc;
                           },
                           "poly"};
        return out;
    }
    if (kind == "exp") {
        const Complex rate = parse_complex(require(j, "rate"));
        out.fn = GFunction{[rate](double t) { return std::exp(rate * t); }, "exp"};
        return out;
    }
    if (kind == "sin" || kind == "cos") {
        const double w = parse_real(require(j, "omega"));
        const bool s = kind == "sin";
        out.fn = GFunction{[w, s](double t) { return Complex(s ? std::sin(w * t) : std::cos(w * t)); }, kind};
        return out;
    }
    throw ConfigError("unknown function kind \"" + kind + "\"");
}

ParsedProblem parse_problem(const Json& j, const Derivator& d) {
    ParsedProblem p;
    p.P = j.contains("P") ? parse_function(j.at("P"), d) : ParsedFunction{GFunction::constant(0.0), Complex{}, {}};
    p.Q = j.contains("Q") ? parse_function(j.at("Q"), d) : ParsedFunction{GFunction::constant(0.0), Complex{}, {}};
    p.f = j.contains("f") ? parse_function(j.at("f"), d) : ParsedFunction{GFunction::constant(0.0), Complex{}, {}};
    const Complex x0 = j.contains("x0") ? parse_complex(j.at("x0")) : Complex{};
    const Complex v0 = j.contains("v0") ? parse_complex(j.at("v0")) : Complex{};
    p.spec = {p.P.fn, p.Q.fn, p.f.fn, x0, v0};
    return p;
}

HelmholtzConfig parse_helmholtz(const Json& j) {
    HelmholtzConfig h;
    if (!j.is_object()) throw ConfigError("helmholtz section must be an object");
    if (j.contains("w1")) h.w1 = parse_real(j.at("w1"));
    if (j.contains("w2")) h.w2 = parse_real(j.at("w2"));
    if (j.contains("t1")) h.t1 = parse_real(j.at("t1"));
    if (j.contains("T")) h.T = parse_real(j.at("T"));
    if (j.contains("x0")) h.x0 = parse_complex(j.at("x0"));
    if (j.contains("v0")) h.v0 = parse_complex(j.at("v0"));
    if (j.contains("f")) h.f = j.at("f");
    if (j.contains("deltas")) {
        h.deltas.clear();
        for (const auto& x : j.at("deltas")) h.deltas.push_back(parse_real(x));
    }
    if (!(h.T > 0.0) || !(h.t1 > 0.0 && h.t1 < h.T)) throw ConfigError("helmholtz needs 0 < t1 < T");
    for (double delta : h.deltas)
        if (!(delta >= 0.0) || !std::isfinite(delta)) throw ConfigError("deltas must be finite and nonnegative");
    return h;
}

}  // namespace stieltjes
