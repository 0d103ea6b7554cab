#include "poly.hpp"

#include <algorithm>
#include <sstream>

namespace diracred {

Poly::Poly(ChartPtr chart, const Rat& c) : chart_(std::move(chart)) {
    if (c != 0) terms_.emplace(Mono(chart_->dim(), 0), c);
}

Poly Poly::coordinate(ChartPtr chart, std::size_t i) {
    Poly p(chart);
    Mono m(p.chart_->dim(), 0);
    m.at(i) = 1;
    p.terms_.emplace(std::move(m), Rat(1));
    return p;
}

bool Poly::is_constant() const {
    if (terms_.empty()) return true;
    return terms_.size() == 1 && mono_degree(terms_.begin()->first) == 0;
}

Rat Poly::constant_value() const {
    Mono zero(chart_->dim(), 0);
    auto it = terms_.find(zero);
    return it == terms_.end() ? Rat(0) : it->second;
}

int Poly::total_degree() const {
    if (terms_.empty()) return -1;
    return mono_degree(terms_.begin()->first);
}

int Poly::degree_in(std::size_t var) const {
    int d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, (int)m[var]);
    return d;
}

const Mono& Poly::leading_mono() const {
    if (terms_.empty()) throw Error(ErrorKind::Internal, "leading term of zero polynomial");
    return terms_.begin()->first;
}

const Rat& Poly::leading_coeff() const {
    if (terms_.empty()) throw Error(ErrorKind::Internal, "leading term of zero polynomial");
    return terms_.begin()->second;
}

void Poly::add_term(const Mono& m, const Rat& c) {
    if (c == 0) return;
    auto [it, fresh] = terms_.emplace(m, c);
    if (!fresh) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

Poly Poly::operator-() const {
    Poly r(chart_);
    for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
    return r;
}

Poly& Poly::operator+=(const Poly& o) {
    require_same_chart(chart_, o.chart_, "poly add");
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
}

Poly& Poly::operator-=(const Poly& o) {
    require_same_chart(chart_, o.chart_, "poly sub");
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
    require_same_chart(a.chart_, b.chart_, "poly mul");
    Poly r(a.chart_);
    Mono m(a.chart_->dim(), 0);
    for (const auto& [ma, ca] : a.terms_) {
        for (const auto& [mb, cb] : b.terms_) {
            for (std::size_t i = 0; i < m.size(); ++i) m[i] = ma[i] + mb[i];
            r.add_term(m, ca * cb);
        }
    }
    return r;
}

Poly Poly::operator*(const Rat& c) const {
    Poly r(chart_);
    if (c == 0) return r;
    for (const auto& [m, k] : terms_) r.terms_.emplace(m, k * c);
    return r;
}

Poly Poly::pow(unsigned e) const {
    Poly r = Poly::constant(chart_, Rat(1));
    Poly base = *this;
    while (e) {
        if (e & 1) r = r * base;
        base = base * base;
        e >>= 1;
    }
    return r;
}

Poly Poly::derivative(std::size_t var) const {
    Poly r(chart_);
    for (const auto& [m, c] : terms_) {
        if (m[var] == 0) continue;
        Mono d = m;
        d[var] -= 1;
        r.add_term(d, c * Rat(m[var]));
    }
    return r;
}

Rat Poly::eval(const std::vector<Rat>& point) const {
    if (point.size() != chart_->dim())
        throw Error(ErrorKind::InvalidArgument, "point dimension does not match chart");
    Rat acc(0);
    for (const auto& [m, c] : terms_) {
        Rat t = c;
        for (std::size_t i = 0; i < m.size(); ++i) {
            for (int e = 0; e < m[i]; ++e) t *= point[i];
        }
        acc += t;
    }
    return acc;
}

Poly Poly::substitute(const ChartPtr& target, const std::vector<Poly>& values) const {
    if (values.size() != chart_->dim())
        throw Error(ErrorKind::InvalidArgument, "substitution binding count does not match chart");
    Poly acc(target);
    for (const auto& [m, c] : terms_) {
        Poly t = Poly::constant(target, c);
        for (std::size_t i = 0; i < m.size(); ++i)
            if (m[i] > 0) t = t * values[i].pow((unsigned)m[i]);
        acc += t;
    }
    return acc;
}

std::string Poly::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        Rat a = c;
        if (first) {
            if (a < 0) { out << "-"; a = -a; }
        } else {
            out << (a < 0 ? " - " : " + ");
            if (a < 0) a = -a;
        }
        first = false;
        bool has_vars = mono_degree(m) > 0;
        bool coeff_shown = !has_vars || a != 1;
        if (coeff_shown) out << rat_to_string(a);
        bool need_star = coeff_shown;
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (m[i] == 0) continue;
            if (need_star) out << "*";
            out << chart_->coords[i];
            if (m[i] > 1) out << "^" << m[i];
            need_star = true;
        }
    }
    return out.str();
}

std::optional<Poly> poly_divide_exact(const Poly& a, const Poly& b) {
    require_same_chart(a.chart(), b.chart(), "poly divide");
    if (b.is_zero()) return std::nullopt;
    Poly rem = a;
    Poly quot(a.chart());
    const Mono& lb = b.leading_mono();
    const Rat& cb = b.leading_coeff();
    while (!rem.is_zero()) {
        const Mono& lr = rem.leading_mono();
        Mono q(lr.size());
        for (std::size_t i = 0; i < lr.size(); ++i) {
            q[i] = lr[i] - lb[i];
            if (q[i] < 0) return std::nullopt;
        }
        Rat qc = rem.leading_coeff() / cb;
        Poly t(a.chart());
        t.add_term(q, qc);
        quot += t;
        rem -= t * b;
    }
    return quot;
}

namespace {

// Univariate view of a poly in its highest-index effective variable, with
// Poly coefficients (each independent of that variable).
std::vector<Poly> coeffs_in_var(const Poly& p, std::size_t var) {
    std::vector<Poly> cs((std::size_t)p.degree_in(var) + 1, Poly(p.chart()));
    for (const auto& [m, c] : p.terms()) {
        Mono rest = m;
        int e = rest[var];
        rest[var] = 0;
        cs[(std::size_t)e].add_term(rest, c);
    }
    return cs;
}

Poly from_coeffs(const std::vector<Poly>& cs, std::size_t var, const ChartPtr& chart) {
    Poly p(chart);
    for (std::size_t e = 0; e < cs.size(); ++e) {
        for (const auto& [m, c] : cs[e].terms()) {
            Mono full = m;
            full[var] += (int)e;
            p.add_term(full, c);
        }
    }
    return p;
}

int deg(const std::vector<Poly>& cs) {
    for (int i = (int)cs.size() - 1; i >= 0; --i)
        if (!cs[i].is_zero()) return i;
    return -1;
}

// Content of the univariate view: gcd of the Poly coefficients.
Poly content_of(const std::vector<Poly>& cs, const ChartPtr& chart) {
    Poly g(chart);
    for (const auto& c : cs) g = poly_gcd(g, c);
    return g;
}

std::vector<Poly> divide_coeffs(const std::vector<Poly>& cs, const Poly& d) {
    std::vector<Poly> out;
    out.reserve(cs.size());
    for (const auto& c : cs) {
        if (c.is_zero()) { out.push_back(c); continue; }
        auto q = poly_divide_exact(c, d);
        if (!q) throw Error(ErrorKind::Internal, "content division failed in gcd");
        out.push_back(*q);
    }
    return out;
}

// Pseudo-remainder of A by B in the main variable: lc(B)^(degA-degB+1) * A mod B.
std::vector<Poly> pseudo_rem(std::vector<Poly> A, const std::vector<Poly>& B, const ChartPtr& chart) {
    int da = deg(A), db = deg(B);
    const Poly& lb = B[(std::size_t)db];
    while (da >= db) {
        Poly la = A[(std::size_t)da];
        for (auto& c : A) c = c * lb;
        for (int i = 0; i <= db; ++i)
            A[(std::size_t)(da - db + i)] -= la * B[(std::size_t)i];
        A[(std::size_t)da] = Poly(chart); // exact cancellation
        int nda = -1;
        for (int i = da - 1; i >= 0; --i)
            if (!A[(std::size_t)i].is_zero()) { nda = i; break; }
        da = nda;
        if (da < 0) break;
    }
    A.resize((std::size_t)std::max(da + 1, 0), Poly(chart));
    return A;
}

Poly make_leading_monic(Poly p) {
    if (p.is_zero()) return p;
    return p * (Rat(1) / p.leading_coeff());
}

} // namespace

// Primitive pseudo-remainder sequence. Inputs here stay small (the artifact's
// denominators and pivots), so we trade asymptotics for simplicity.
Poly poly_gcd(const Poly& a, const Poly& b) {
    if (a.is_zero()) return make_leading_monic(b);
    if (b.is_zero()) return make_leading_monic(a);
    require_same_chart(a.chart(), b.chart(), "poly gcd");
    if (a.is_constant() || b.is_constant())
        return Poly::constant(a.chart(), Rat(1));

    std::size_t var = 0;
    bool found = false;
    for (std::size_t i = a.chart()->dim(); i-- > 0;) {
        if (a.depends_on(i) || b.depends_on(i)) { var = i; found = true; break; }
    }
    if (!found) return Poly::constant(a.chart(), Rat(1));

    auto ca = coeffs_in_var(a, var);
    auto cb = coeffs_in_var(b, var);
    const ChartPtr& chart = a.chart();

    Poly cont_a = content_of(ca, chart);
    Poly cont_b = content_of(cb, chart);
    Poly cont_gcd = poly_gcd(cont_a, cont_b);

    auto A = divide_coeffs(ca, cont_a);
    auto B = divide_coeffs(cb, cont_b);
    if (deg(A) < deg(B)) std::swap(A, B);

    while (true) {
        auto R = pseudo_rem(A, B, chart);
        int dr = deg(R);
        if (dr < 0) break;
        if (dr == 0) {
            // Nontrivial remainder constant in the main variable: the
            // primitive parts are coprime in it.
            return make_leading_monic(cont_gcd);
        }
        Poly cont_r = content_of(R, chart);
        A = std::move(B);
        B = divide_coeffs(R, cont_r);
    }
    Poly cont_B = content_of(B, chart);
    Poly pp = from_coeffs(divide_coeffs(B, cont_B), var, chart);
    return make_leading_monic(cont_gcd * pp);
}

Poly poly_lcm(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly(a.chart());
    auto q = poly_divide_exact(a * b, poly_gcd(a, b));
    if (!q) throw Error(ErrorKind::Internal, "lcm division failed");
    return make_leading_monic(*q);
}

} // namespace diracred
