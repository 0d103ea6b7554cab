#ifndef DIRACRED_CORE_RATFN_HPP
#define DIRACRED_CORE_RATFN_HPP

#include "poly.hpp"

namespace diracred {

/// Reduced rational function num/den on a chart.
/// Canonical form: gcd(num, den) is a unit, den has leading coefficient 1
/// in the graded-lex order, and the zero function is 0/1. Reduction is
/// eager on every operation, so equality is plain representation equality.
class RatFn {
public:
    RatFn() = default;
    explicit RatFn(ChartPtr chart) : num_(chart), den_(Poly::constant(chart, Rat(1))) {}
    explicit RatFn(const Poly& p) : num_(p), den_(Poly::constant(p.chart(), Rat(1))) {}
    RatFn(const Poly& num, const Poly& den);

    static RatFn constant(const ChartPtr& chart, const Rat& c) {
        return RatFn(Poly::constant(chart, c));
    }
    static RatFn coordinate(const ChartPtr& chart, std::size_t i) {
        return RatFn(Poly::coordinate(chart, i));
    }

    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }
    const ChartPtr& chart() const { return num_.chart(); }

    bool is_zero() const { return num_.is_zero(); }
    bool is_polynomial() const { return den_.is_constant(); }
    /// Valid only when is_polynomial(); clears the constant denominator.
    Poly as_polynomial() const;

    RatFn operator-() const;
    friend RatFn operator+(const RatFn& a, const RatFn& b);
    friend RatFn operator-(const RatFn& a, const RatFn& b);
    friend RatFn operator*(const RatFn& a, const RatFn& b);
    friend RatFn operator/(const RatFn& a, const RatFn& b);
    RatFn& operator+=(const RatFn& o) { *this = *this + o; return *this; }
    RatFn& operator-=(const RatFn& o) { *this = *this - o; return *this; }
    RatFn& operator*=(const RatFn& o) { *this = *this * o; return *this; }

    bool operator==(const RatFn& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const RatFn& o) const { return !(*this == o); }

    RatFn derivative(std::size_t var) const;
    /// By coordinate name; UnknownCoordinate when absent from the chart.
    RatFn derivative(const std::string& coord) const;

    /// Exact evaluation; throws DenominatorVanishes when den(point) = 0.
    Rat eval(const std::vector<Rat>& point) const;
    bool denominator_vanishes_at(const std::vector<Rat>& point) const;

    RatFn substitute(const ChartPtr& target, const std::vector<RatFn>& values) const;

    std::string to_string() const;

private:
    void normalize();

    Poly num_;
    Poly den_;
};

inline RatFn operator*(const Rat& c, const RatFn& f) {
    return RatFn(f.num() * c, f.den());
}

} // namespace diracred

#endif
