#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace stieltjes {

/// Density of the absolutely continuous part of dg on one piece.
///
/// Polynomial coefficients are in absolute t: rho(t) = sum_k c_k t^k.
/// Only a density declared Zero contributes to the constancy set.
struct Density {
    enum class Kind { Zero, Const, Poly };

    Kind kind = Kind::Zero;
    std::vector<double> coeffs;

    static Density zero() { return {Kind::Zero, {}}; }
    static Density constant(double c) { return {Kind::Const, {c}}; }
    static Density polynomial(std::vector<double> c) { return {Kind::Poly, std::move(c)}; }

    double operator()(double t) const;
    /// Exact integral of rho over [a,b].
    double mass(double a, double b) const;
    bool is_zero() const { return kind == Kind::Zero; }
};

struct DensityPiece {
    double from = 0.0;
    double to = 0.0;
    Density density;
};

struct Jump {
    double t = 0.0;
    double size = 0.0;
};

/// Open constancy component (a,b).
struct ConstancyInterval {
    double a = 0.0;
    double b = 0.0;
};

struct PointClass {
    enum class Tag { Regular, Jump, Constancy, NgMinus, NgPlus };

    Tag tag = Tag::Regular;
    double jump_size = 0.0;   // Jump only
    double a = 0.0, b = 0.0;  // Constancy only
};

/// Nondecreasing left-continuous g on [0,T] with finitely many jumps.
///
/// g(t) = g0 + int_0^t rho + sum_{t_j < t} d_j. Immutable after construction.
class Derivator {
public:
    Derivator(double T, std::vector<DensityPiece> pieces, std::vector<Jump> jumps, double g0 = 0.0);

    /// Constant unit density on [0,T] plus the given jumps.
    static Derivator identity(double T, std::vector<Jump> jumps = {}, double g0 = 0.0);
    /// Constructs and throws PreconditionError unless validate() is empty.
    static Derivator checked(double T, std::vector<DensityPiece> pieces, std::vector<Jump> jumps,
                             double g0 = 0.0);

    double T() const { return T_; }
    double g0() const { return g0_; }
    const std::vector<DensityPiece>& pieces() const { return pieces_; }
    const std::vector<Jump>& jumps() const { return jumps_; }
    const std::vector<ConstancyInterval>& constancy() const { return constancy_; }

    double eval_g(double t) const;
    double eval_g_right(double t) const;
    double jump(double t) const;
    bool is_jump(double t) const;
    double star(double t) const;
    PointClass classify(double t) const;
    std::vector<std::string> validate() const;
    std::vector<double> grid(std::size_t n) const;

    /// int_0^t rho, the continuous part of g - g0.
    double continuous_part(double t) const;
    /// rho at t, taken from the piece containing t in [from,to).
    double density(double t) const;
    /// True when the piece containing t has a declared-zero density.
    bool declared_zero_at(double t) const;
    /// Sorted distinct points at which g or rho may fail to be smooth.
    const std::vector<double>& structural_points() const { return structural_; }
    /// Closest structural points strictly below and strictly above t (clamped to 0 and T).
    double structural_before(double t) const;
    double structural_after(double t) const;
    bool is_structural(double t) const;
    /// True at piece boundaries where the one-sided densities differ.
    bool density_breaks_at(double t) const;

private:
    void check_domain(double t) const;
    std::size_t piece_index(double t) const;

    double T_;
    double g0_;
    std::vector<DensityPiece> pieces_;
    std::vector<Jump> jumps_;
    std::vector<ConstancyInterval> constancy_;
    std::vector<double> structural_;
    std::vector<double> piece_mass_prefix_;
};

}  // namespace stieltjes
