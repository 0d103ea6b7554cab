#ifndef DIRACRED_CORE_TRIG_HPP
#define DIRACRED_CORE_TRIG_HPP

#include <map>
#include <vector>

#include "poly.hpp"

namespace diracred {

/// One group parameter. FullTurn integrates over [0,2*pi), HalfTurn over
/// [0,pi] (the Euler beta angle).
struct AngleSpec {
    std::string name;
    enum Domain { FullTurn, HalfTurn } domain = FullTurn;

    bool operator==(const AngleSpec& o) const { return name == o.name && domain == o.domain; }
};

/// Fourier basis element in one angle: 1 (k=0), cos(k*t), or sin(k*t).
struct Harmonic {
    std::int32_t k = 0;
    bool sine = false; // k == 0 forces sine = false

    auto operator<=>(const Harmonic&) const = default;
};

/// Term key: one harmonic per angle plus a power of pi. Folding pi into the
/// key keeps Haar weights like sin(beta)/(8*pi^2) exact.
struct TrigKey {
    std::vector<Harmonic> harmonics;
    std::int32_t pi_power = 0;

    auto operator<=>(const TrigKey&) const = default;
};

/// Trigonometric polynomial in the multi-angle Fourier normal form
///   sum of  c * pi^e * prod_i {1 | cos(k_i t_i) | sin(k_i t_i)}
/// with Poly coefficients c over a coordinate chart. The normal form is
/// unique, so products of cos/sin powers always land in a canonical shape
/// and integration is coefficient extraction.
class TrigPoly {
public:
    TrigPoly() = default;
    TrigPoly(ChartPtr chart, std::vector<AngleSpec> angles)
        : chart_(std::move(chart)), angles_(std::move(angles)) {}

    static TrigPoly constant(ChartPtr chart, std::vector<AngleSpec> angles, const Rat& c);
    static TrigPoly from_poly(std::vector<AngleSpec> angles, const Poly& p);
    static TrigPoly cos_of(ChartPtr chart, std::vector<AngleSpec> angles, std::size_t angle, int k = 1);
    static TrigPoly sin_of(ChartPtr chart, std::vector<AngleSpec> angles, std::size_t angle, int k = 1);
    /// c * pi^e as a trig polynomial.
    static TrigPoly pi_power(ChartPtr chart, std::vector<AngleSpec> angles, int e, const Rat& c);

    const ChartPtr& chart() const { return chart_; }
    const std::vector<AngleSpec>& angles() const { return angles_; }
    const std::map<TrigKey, Poly>& terms() const { return terms_; }

    bool is_zero() const { return terms_.empty(); }
    void add_term(const TrigKey& key, const Poly& coeff);

    TrigPoly operator-() const;
    TrigPoly& operator+=(const TrigPoly& o);
    TrigPoly& operator-=(const TrigPoly& o);
    friend TrigPoly operator+(TrigPoly a, const TrigPoly& b) { a += b; return a; }
    friend TrigPoly operator-(TrigPoly a, const TrigPoly& b) { a -= b; return a; }
    friend TrigPoly operator*(const TrigPoly& a, const TrigPoly& b);
    TrigPoly operator*(const Rat& c) const;

    bool operator==(const TrigPoly& o) const { return terms_ == o.terms_; }

    TrigPoly derivative_angle(std::size_t angle) const;

    /// Sets all angles to zero: cos(k*0) = 1, sin(k*0) = 0. Pi powers must
    /// cancel out for the result to be a Poly; otherwise throws.
    Poly at_zero_angles() const;

    /// Numeric evaluation with the chart point already substituted.
    double eval_double(const std::vector<double>& angle_values,
                       const std::vector<Rat>& point) const;

    std::string to_string() const;

private:
    ChartPtr chart_;
    std::vector<AngleSpec> angles_;
    std::map<TrigKey, Poly> terms_;
};

/// Exact integral of f over the full angle domain, as a map
/// pi_exponent -> Poly. Fourier orthogonality makes this coefficient
/// extraction; the HalfTurn domain contributes the closed forms
/// int_0^pi sin(k t) dt = 2/k (k odd) and int_0^pi 1 dt = pi.
std::map<int, Poly> trig_integrate_raw(const TrigPoly& f);

/// Checks that `weight` integrates exactly to 1 (NonNormalizedWeight
/// otherwise), then returns the exact value of the integral of f*weight.
/// The result must be pi-free (it always is for Haar averages of
/// polynomial data); otherwise throws NonRationalIntegral.
Poly trig_integrate(const TrigPoly& f, const TrigPoly& weight);

/// Substitutes chart coordinates by trig-linear forms: p(b_0, ..., b_{n-1}).
TrigPoly poly_substitute_trig(const Poly& p, const std::vector<TrigPoly>& bindings);

} // namespace diracred

#endif
