#ifndef DIRACRED_CORE_GEOMETRY_HPP
#define DIRACRED_CORE_GEOMETRY_HPP

#include "expr_parse.hpp"
#include "ratfn.hpp"

namespace diracred {

/// Vector field sum X^i d/dx_i with rational-function components.
struct VectorField {
    ChartPtr chart;
    std::vector<RatFn> components;

    VectorField() = default;
    VectorField(ChartPtr c, std::vector<RatFn> comps);
    static VectorField zero(const ChartPtr& c);
    static VectorField parse(const ChartPtr& c, const std::vector<std::string>& exprs);

    bool is_zero() const;
    bool operator==(const VectorField& o) const;

    /// X(f) = sum X^i df/dx_i.
    RatFn apply(const RatFn& f) const;
    RatFn apply(const Poly& f) const { return apply(RatFn(f)); }

    VectorField operator-() const;
    friend VectorField operator+(const VectorField& a, const VectorField& b);
    friend VectorField operator-(const VectorField& a, const VectorField& b);
    friend VectorField operator*(const RatFn& f, const VectorField& x);

    std::string to_string() const;
};

/// One-form sum a_i dx_i.
struct OneForm {
    ChartPtr chart;
    std::vector<RatFn> components;

    OneForm() = default;
    OneForm(ChartPtr c, std::vector<RatFn> comps);
    static OneForm zero(const ChartPtr& c);
    static OneForm parse(const ChartPtr& c, const std::vector<std::string>& exprs);

    bool is_zero() const;
    bool operator==(const OneForm& o) const;

    /// alpha(X).
    RatFn apply(const VectorField& x) const;

    OneForm operator-() const;
    friend OneForm operator+(const OneForm& a, const OneForm& b);
    friend OneForm operator-(const OneForm& a, const OneForm& b);
    friend OneForm operator*(const RatFn& f, const OneForm& a);

    std::string to_string() const;
};

/// Two-form, stored as the full antisymmetric coefficient matrix of
/// dx_i ∧ dx_j. Only needed transiently for i_Y d(alpha).
struct TwoForm {
    ChartPtr chart;
    std::vector<std::vector<RatFn>> coeff; // coeff[i][j] = -coeff[j][i]

    explicit TwoForm(const ChartPtr& c);
    bool is_zero() const;
};

/// Section of the Pontryagin bundle TM (+) T*M.
struct Section {
    VectorField x;
    OneForm alpha;

    Section() = default;
    Section(VectorField f, OneForm a);
    static Section zero(const ChartPtr& c);

    const ChartPtr& chart() const { return x.chart; }
    bool is_zero() const { return x.is_zero() && alpha.is_zero(); }
    bool operator==(const Section& o) const { return x == o.x && alpha == o.alpha; }

    Section operator-() const { return Section(-x, -alpha); }
    friend Section operator+(const Section& a, const Section& b) {
        return Section(a.x + b.x, a.alpha + b.alpha);
    }
    friend Section operator-(const Section& a, const Section& b) {
        return Section(a.x - b.x, a.alpha - b.alpha);
    }
    friend Section operator*(const RatFn& f, const Section& s) {
        return Section(f * s.x, f * s.alpha);
    }

    /// Fiber coordinates (X^1..X^n, a_1..a_n) of the section as functions.
    std::vector<RatFn> fiber_components() const;
    /// Exact fiber value at a point; throws DenominatorVanishes.
    std::vector<Rat> fiber_at(const std::vector<Rat>& point) const;

    std::string to_string() const;
};

/// <(X,a),(Y,b)> = b(X) + a(Y). Symmetric, bilinear over functions.
RatFn pairing(const Section& s1, const Section& s2);

/// Jacobi-Lie bracket [X,Y]^j = X(Y^j) - Y(X^j).
VectorField lie_bracket(const VectorField& x, const VectorField& y);

OneForm exterior_derivative(const RatFn& f, const ChartPtr& chart);
TwoForm exterior_derivative(const OneForm& a);

/// (i_Y w)_j = sum_i Y^i w_ij.
OneForm interior_product(const VectorField& y, const TwoForm& w);

/// Cartan formula: L_X b = i_X db + d(b(X)).
OneForm lie_derivative(const VectorField& x, const OneForm& b);
/// L_X Y = [X, Y].
VectorField lie_derivative(const VectorField& x, const VectorField& y);
RatFn lie_derivative(const VectorField& x, const RatFn& f);

/// Courant bracket ([X,Y], L_X b - i_Y da). Not skew, satisfies Jacobi.
Section courant_bracket(const Section& s1, const Section& s2);

/// Skew bracket: Courant with -(1/2) d<s1,s2> added to the one-form part.
Section skew_bracket(const Section& s1, const Section& s2);

} // namespace diracred

#endif
