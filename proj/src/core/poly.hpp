#ifndef DIRACRED_CORE_POLY_HPP
#define DIRACRED_CORE_POLY_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "chart.hpp"
#include "rational.hpp"

namespace diracred {

/// Exponent vector; length always equals the chart dimension.
using Mono = std::vector<std::int32_t>;

inline int mono_degree(const Mono& m) {
    int d = 0;
    for (int e : m) d += e;
    return d;
}

/// Graded lexicographic order, descending, so that map iteration starts at
/// the leading term. Ties in total degree break lexicographically on the
/// chart's declared coordinate order.
struct MonoGradedLexGreater {
    bool operator()(const Mono& a, const Mono& b) const {
        int da = mono_degree(a), db = mono_degree(b);
        if (da != db) return da > db;
        return a > b;
    }
};

/// Sparse multivariate polynomial over Q on a fixed chart.
/// Invariant: no zero coefficients stored; all exponent vectors have
/// length = chart dimension.
class Poly {
public:
    using TermMap = std::map<Mono, Rat, MonoGradedLexGreater>;

    Poly() = default;
    explicit Poly(ChartPtr chart) : chart_(std::move(chart)) {}
    Poly(ChartPtr chart, const Rat& c);

    static Poly constant(ChartPtr chart, const Rat& c) { return Poly(std::move(chart), c); }
    static Poly coordinate(ChartPtr chart, std::size_t i);

    const ChartPtr& chart() const { return chart_; }
    const TermMap& terms() const { return terms_; }

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    /// Constant term (zero if absent).
    Rat constant_value() const;

    int total_degree() const; // -1 for the zero polynomial
    int degree_in(std::size_t var) const;
    bool depends_on(std::size_t var) const { return degree_in(var) > 0; }

    const Mono& leading_mono() const;
    const Rat& leading_coeff() const;

    void add_term(const Mono& m, const Rat& c);

    Poly operator-() const;
    Poly& operator+=(const Poly& o);
    Poly& operator-=(const Poly& o);
    friend Poly operator+(Poly a, const Poly& b) { a += b; return a; }
    friend Poly operator-(Poly a, const Poly& b) { a -= b; return a; }
    friend Poly operator*(const Poly& a, const Poly& b);
    Poly& operator*=(const Poly& o) { *this = *this * o; return *this; }
    Poly operator*(const Rat& c) const;
    Poly pow(unsigned e) const;

    bool operator==(const Poly& o) const { return same_chart(chart_, o.chart_) && terms_ == o.terms_; }
    bool operator!=(const Poly& o) const { return !(*this == o); }

    Poly derivative(std::size_t var) const;
    Rat eval(const std::vector<Rat>& point) const;

    /// Substitutes coordinate i -> values[i]; the values live on a common
    /// target chart. Plain polynomial composition.
    Poly substitute(const ChartPtr& target, const std::vector<Poly>& values) const;

    std::string to_string() const;

private:
    ChartPtr chart_;
    TermMap terms_;
};

inline Poly operator*(const Rat& c, const Poly& p) { return p * c; }

/// Exact multivariate division; nullopt when b does not divide a.
std::optional<Poly> poly_divide_exact(const Poly& a, const Poly& b);

/// GCD over Q[x1..xn], normalized with leading coefficient 1.
/// gcd(0,0) = 0.
Poly poly_gcd(const Poly& a, const Poly& b);

Poly poly_lcm(const Poly& a, const Poly& b);

} // namespace diracred

#endif
