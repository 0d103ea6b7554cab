#include "ratfn.hpp"

namespace diracred {

RatFn::RatFn(const Poly& num, const Poly& den) : num_(num), den_(den) {
    require_same_chart(num.chart(), den.chart(), "rational function");
    if (den_.is_zero())
        throw Error(ErrorKind::DivisionByZeroPolynomial, "zero denominator");
    normalize();
}

void RatFn::normalize() {
    if (num_.is_zero()) {
        den_ = Poly::constant(num_.chart(), Rat(1));
        return;
    }
    if (!den_.is_constant()) {
        Poly g = poly_gcd(num_, den_);
        if (!g.is_constant()) {
            num_ = *poly_divide_exact(num_, g);
            den_ = *poly_divide_exact(den_, g);
        }
    }
    Rat lc = den_.leading_coeff();
    if (lc != 1) {
        Rat inv = Rat(1) / lc;
        num_ = num_ * inv;
        den_ = den_ * inv;
    }
}

Poly RatFn::as_polynomial() const {
    if (!is_polynomial())
        throw Error(ErrorKind::InvalidArgument, "rational function is not polynomial: " + to_string());
    Rat c = den_.constant_value();
    return num_ * (Rat(1) / c);
}

RatFn RatFn::operator-() const {
    RatFn r = *this;
    r.num_ = -r.num_;
    return r;
}

RatFn operator+(const RatFn& a, const RatFn& b) {
    return RatFn(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RatFn operator-(const RatFn& a, const RatFn& b) {
    return RatFn(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
}

RatFn operator*(const RatFn& a, const RatFn& b) {
    return RatFn(a.num_ * b.num_, a.den_ * b.den_);
}

RatFn operator/(const RatFn& a, const RatFn& b) {
    if (b.is_zero())
        throw Error(ErrorKind::DivisionByZeroPolynomial, "division by zero rational function");
    return RatFn(a.num_ * b.den_, a.den_ * b.num_);
}

RatFn RatFn::derivative(std::size_t var) const {
    // quotient rule, reduced on construction
    Poly dn = num_.derivative(var);
    Poly dd = den_.derivative(var);
    return RatFn(dn * den_ - num_ * dd, den_ * den_);
}

RatFn RatFn::derivative(const std::string& coord) const {
    auto idx = chart()->index_of(coord);
    if (!idx)
        throw Error(ErrorKind::UnknownCoordinate,
                    "'" + coord + "' is not a coordinate of chart '" + chart()->name + "'");
    return derivative(*idx);
}

bool RatFn::denominator_vanishes_at(const std::vector<Rat>& point) const {
    return den_.eval(point) == 0;
}

Rat RatFn::eval(const std::vector<Rat>& point) const {
    Rat d = den_.eval(point);
    if (d == 0)
        throw Error(ErrorKind::DenominatorVanishes, "denominator " + den_.to_string() + " vanishes at sample point");
    return num_.eval(point) / d;
}

RatFn RatFn::substitute(const ChartPtr& target, const std::vector<RatFn>& values) const {
    if (values.size() != chart()->dim())
        throw Error(ErrorKind::InvalidArgument, "substitution binding count does not match chart");
    // compose termwise over the fraction field
    auto eval_poly = [&](const Poly& p) {
        RatFn acc(target);
        for (const auto& [m, c] : p.terms()) {
            RatFn t = RatFn::constant(target, c);
            for (std::size_t i = 0; i < m.size(); ++i)
                for (int e = 0; e < m[i]; ++e) t = t * values[i];
            acc += t;
        }
        return acc;
    };
    RatFn n = eval_poly(num_);
    RatFn d = eval_poly(den_);
    if (d.is_zero())
        throw Error(ErrorKind::ZeroDenominatorAfterSubstitution,
                    "denominator " + den_.to_string() + " becomes identically zero under substitution");
    return n / d;
}

std::string RatFn::to_string() const {
    if (is_polynomial()) return as_polynomial().to_string();
    std::string n = num_.terms().size() > 1 ? "(" + num_.to_string() + ")" : num_.to_string();
    // The denominator needs parentheses unless it prints as one grammar factor.
    bool den_is_factor = false;
    if (den_.terms().size() == 1) {
        const auto& [m, c] = *den_.terms().begin();
        int vars_used = 0;
        for (int e : m) vars_used += (e > 0);
        den_is_factor = (c == 1 && vars_used == 1) || (c > 0 && vars_used == 0);
    }
    std::string d = den_is_factor ? den_.to_string() : "(" + den_.to_string() + ")";
    return n + "/" + d;
}

} // namespace diracred
