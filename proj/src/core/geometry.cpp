#include "geometry.hpp"

#include <sstream>

namespace diracred {

namespace {

std::vector<RatFn> parse_components(const ChartPtr& c, const std::vector<std::string>& exprs) {
    if (exprs.size() != c->dim())
        throw Error(ErrorKind::InvalidArgument, "component count does not match chart dimension");
    std::vector<RatFn> out;
    out.reserve(exprs.size());
    for (const auto& e : exprs) out.push_back(parse_expr(e, c));
    return out;
}

std::string components_to_string(const std::vector<RatFn>& comps, const ChartPtr& chart,
                                 const char* prefix) {
    std::ostringstream out;
    bool first = true;
    for (std::size_t i = 0; i < comps.size(); ++i) {
        if (comps[i].is_zero()) continue;
        if (!first) out << " + ";
        first = false;
        out << "(" << comps[i].to_string() << ")*" << prefix << chart->coords[i];
    }
    if (first) return "0";
    return out.str();
}

} // namespace

VectorField::VectorField(ChartPtr c, std::vector<RatFn> comps)
    : chart(std::move(c)), components(std::move(comps)) {
    if (components.size() != chart->dim())
        throw Error(ErrorKind::InvalidArgument, "vector field component count != chart dimension");
}

VectorField VectorField::zero(const ChartPtr& c) {
    return VectorField(c, std::vector<RatFn>(c->dim(), RatFn(c)));
}

VectorField VectorField::parse(const ChartPtr& c, const std::vector<std::string>& exprs) {
    return VectorField(c, parse_components(c, exprs));
}

bool VectorField::is_zero() const {
    for (const auto& f : components)
        if (!f.is_zero()) return false;
    return true;
}

bool VectorField::operator==(const VectorField& o) const {
    return same_chart(chart, o.chart) && components == o.components;
}

RatFn VectorField::apply(const RatFn& f) const {
    require_same_chart(chart, f.chart(), "X(f)");
    RatFn acc(chart);
    for (std::size_t i = 0; i < components.size(); ++i) {
        if (components[i].is_zero()) continue;
        acc += components[i] * f.derivative(i);
    }
    return acc;
}

VectorField VectorField::operator-() const {
    VectorField r = *this;
    for (auto& f : r.components) f = -f;
    return r;
}

VectorField operator+(const VectorField& a, const VectorField& b) {
    require_same_chart(a.chart, b.chart, "vector field add");
    VectorField r = a;
    for (std::size_t i = 0; i < r.components.size(); ++i) r.components[i] += b.components[i];
    return r;
}

VectorField operator-(const VectorField& a, const VectorField& b) {
    return a + (-b);
}

VectorField operator*(const RatFn& f, const VectorField& x) {
    VectorField r = x;
    for (auto& c : r.components) c = f * c;
    return r;
}

std::string VectorField::to_string() const {
    return components_to_string(components, chart, "d/d");
}

OneForm::OneForm(ChartPtr c, std::vector<RatFn> comps)
    : chart(std::move(c)), components(std::move(comps)) {
    if (components.size() != chart->dim())
        throw Error(ErrorKind::InvalidArgument, "one-form component count != chart dimension");
}

OneForm OneForm::zero(const ChartPtr& c) {
    return OneForm(c, std::vector<RatFn>(c->dim(), RatFn(c)));
}

OneForm OneForm::parse(const ChartPtr& c, const std::vector<std::string>& exprs) {
    return OneForm(c, parse_components(c, exprs));
}

bool OneForm::is_zero() const {
    for (const auto& f : components)
        if (!f.is_zero()) return false;
    return true;
}

bool OneForm::operator==(const OneForm& o) const {
    return same_chart(chart, o.chart) && components == o.components;
}

RatFn OneForm::apply(const VectorField& x) const {
    require_same_chart(chart, x.chart, "alpha(X)");
    RatFn acc(chart);
    for (std::size_t i = 0; i < components.size(); ++i) {
        if (components[i].is_zero() || x.components[i].is_zero()) continue;
        acc += components[i] * x.components[i];
    }
    return acc;
}

OneForm OneForm::operator-() const {
    OneForm r = *this;
    for (auto& f : r.components) f = -f;
    return r;
}

OneForm operator+(const OneForm& a, const OneForm& b) {
    require_same_chart(a.chart, b.chart, "one-form add");
    OneForm r = a;
    for (std::size_t i = 0; i < r.components.size(); ++i) r.components[i] += b.components[i];
    return r;
}

OneForm operator-(const OneForm& a, const OneForm& b) {
    return a + (-b);
}

OneForm operator*(const RatFn& f, const OneForm& a) {
    OneForm r = a;
    for (auto& c : r.components) c = f * c;
    return r;
}

std::string OneForm::to_string() const {
    return components_to_string(components, chart, "d");
}

TwoForm::TwoForm(const ChartPtr& c)
    : chart(c), coeff(c->dim(), std::vector<RatFn>(c->dim(), RatFn(c))) {}

bool TwoForm::is_zero() const {
    for (const auto& row : coeff)
        for (const auto& f : row)
            if (!f.is_zero()) return false;
    return true;
}

Section::Section(VectorField f, OneForm a) : x(std::move(f)), alpha(std::move(a)) {
    require_same_chart(x.chart, alpha.chart, "section");
}

Section Section::zero(const ChartPtr& c) {
    return Section(VectorField::zero(c), OneForm::zero(c));
}

std::vector<RatFn> Section::fiber_components() const {
    std::vector<RatFn> out = x.components;
    out.insert(out.end(), alpha.components.begin(), alpha.components.end());
    return out;
}

std::vector<Rat> Section::fiber_at(const std::vector<Rat>& point) const {
    auto comps = fiber_components();
    std::vector<Rat> out;
    out.reserve(comps.size());
    for (const auto& f : comps) out.push_back(f.eval(point));
    return out;
}

std::string Section::to_string() const {
    return "(" + x.to_string() + ", " + alpha.to_string() + ")";
}

RatFn pairing(const Section& s1, const Section& s2) {
    require_same_chart(s1.chart(), s2.chart(), "pairing");
    return s2.alpha.apply(s1.x) + s1.alpha.apply(s2.x);
}

VectorField lie_bracket(const VectorField& x, const VectorField& y) {
    require_same_chart(x.chart, y.chart, "lie bracket");
    std::vector<RatFn> comps;
    comps.reserve(x.chart->dim());
    for (std::size_t j = 0; j < x.chart->dim(); ++j)
        comps.push_back(x.apply(y.components[j]) - y.apply(x.components[j]));
    return VectorField(x.chart, std::move(comps));
}

OneForm exterior_derivative(const RatFn& f, const ChartPtr& chart) {
    require_same_chart(f.chart(), chart, "df");
    std::vector<RatFn> comps;
    comps.reserve(chart->dim());
    for (std::size_t i = 0; i < chart->dim(); ++i) comps.push_back(f.derivative(i));
    return OneForm(chart, std::move(comps));
}

TwoForm exterior_derivative(const OneForm& a) {
    TwoForm w(a.chart);
    for (std::size_t i = 0; i < a.chart->dim(); ++i)
        for (std::size_t j = 0; j < a.chart->dim(); ++j) {
            if (i == j) continue;
            w.coeff[i][j] = a.components[j].derivative(i) - a.components[i].derivative(j);
        }
    return w;
}

OneForm interior_product(const VectorField& y, const TwoForm& w) {
    require_same_chart(y.chart, w.chart, "interior product");
    std::vector<RatFn> comps;
    comps.reserve(y.chart->dim());
    for (std::size_t j = 0; j < y.chart->dim(); ++j) {
        RatFn acc(y.chart);
        for (std::size_t i = 0; i < y.chart->dim(); ++i) {
            if (y.components[i].is_zero() || w.coeff[i][j].is_zero()) continue;
            acc += y.components[i] * w.coeff[i][j];
        }
        comps.push_back(acc);
    }
    return OneForm(y.chart, std::move(comps));
}

OneForm lie_derivative(const VectorField& x, const OneForm& b) {
    require_same_chart(x.chart, b.chart, "lie derivative");
    return interior_product(x, exterior_derivative(b)) +
           exterior_derivative(b.apply(x), x.chart);
}

VectorField lie_derivative(const VectorField& x, const VectorField& y) {
    return lie_bracket(x, y);
}

RatFn lie_derivative(const VectorField& x, const RatFn& f) {
    return x.apply(f);
}

Section courant_bracket(const Section& s1, const Section& s2) {
    require_same_chart(s1.chart(), s2.chart(), "courant bracket");
    VectorField xb = lie_bracket(s1.x, s2.x);
    OneForm ab = lie_derivative(s1.x, s2.alpha) -
                 interior_product(s2.x, exterior_derivative(s1.alpha));
    return Section(std::move(xb), std::move(ab));
}

Section skew_bracket(const Section& s1, const Section& s2) {
    Section c = courant_bracket(s1, s2);
    RatFn p = pairing(s1, s2);
    RatFn half = RatFn::constant(s1.chart(), Rat(1, 2));
    c.alpha = c.alpha - half * exterior_derivative(p, s1.chart());
    return c;
}

} // namespace diracred
