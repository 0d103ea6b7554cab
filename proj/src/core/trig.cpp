#include "trig.hpp"

#include <cmath>
#include <sstream>

namespace diracred {

namespace {

TrigKey unit_key(std::size_t n_angles) {
    TrigKey k;
    k.harmonics.assign(n_angles, Harmonic{});
    return k;
}

} // namespace

TrigPoly TrigPoly::constant(ChartPtr chart, std::vector<AngleSpec> angles, const Rat& c) {
    TrigPoly t(chart, std::move(angles));
    t.add_term(unit_key(t.angles_.size()), Poly::constant(chart, c));
    return t;
}

TrigPoly TrigPoly::from_poly(std::vector<AngleSpec> angles, const Poly& p) {
    TrigPoly t(p.chart(), std::move(angles));
    t.add_term(unit_key(t.angles_.size()), p);
    return t;
}

TrigPoly TrigPoly::cos_of(ChartPtr chart, std::vector<AngleSpec> angles, std::size_t angle, int k) {
    TrigPoly t(chart, std::move(angles));
    TrigKey key = unit_key(t.angles_.size());
    key.harmonics.at(angle) = Harmonic{k, false};
    t.add_term(key, Poly::constant(chart, Rat(1)));
    return t;
}

TrigPoly TrigPoly::sin_of(ChartPtr chart, std::vector<AngleSpec> angles, std::size_t angle, int k) {
    TrigPoly t(chart, std::move(angles));
    TrigKey key = unit_key(t.angles_.size());
    key.harmonics.at(angle) = Harmonic{k, true};
    t.add_term(key, Poly::constant(chart, Rat(1)));
    return t;
}

TrigPoly TrigPoly::pi_power(ChartPtr chart, std::vector<AngleSpec> angles, int e, const Rat& c) {
    TrigPoly t(chart, std::move(angles));
    TrigKey key = unit_key(t.angles_.size());
    key.pi_power = e;
    t.add_term(key, Poly::constant(chart, c));
    return t;
}

void TrigPoly::add_term(const TrigKey& key, const Poly& coeff) {
    if (coeff.is_zero()) return;
    auto [it, fresh] = terms_.emplace(key, coeff);
    if (!fresh) {
        it->second += coeff;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

TrigPoly TrigPoly::operator-() const {
    TrigPoly r(chart_, angles_);
    for (const auto& [k, c] : terms_) r.terms_.emplace(k, -c);
    return r;
}

TrigPoly& TrigPoly::operator+=(const TrigPoly& o) {
    if (angles_ != o.angles_)
        throw Error(ErrorKind::InvalidArgument, "trig polynomials have different angle lists");
    for (const auto& [k, c] : o.terms_) add_term(k, c);
    return *this;
}

TrigPoly& TrigPoly::operator-=(const TrigPoly& o) {
    if (angles_ != o.angles_)
        throw Error(ErrorKind::InvalidArgument, "trig polynomials have different angle lists");
    for (const auto& [k, c] : o.terms_) add_term(k, -c);
    return *this;
}

namespace {

struct WeightedHarmonic {
    Harmonic h;
    Rat w;
};

// Product-to-sum in one angle. sin(0) terms are dropped; cos(0) = 1.
std::vector<WeightedHarmonic> combine(const Harmonic& a, const Harmonic& b) {
    auto norm = [](int k, bool sine, Rat w) -> std::vector<WeightedHarmonic> {
        if (sine) {
            if (k == 0) return {};
            if (k < 0) return {{Harmonic{-k, true}, -w}};
            return {{Harmonic{k, true}, w}};
        }
        if (k < 0) k = -k;
        return {{Harmonic{k, false}, w}};
    };
    if (a.k == 0) return {{b, Rat(1)}};
    if (b.k == 0) return {{a, Rat(1)}};
    std::vector<WeightedHarmonic> out;
    Rat half(1, 2);
    auto push = [&](std::vector<WeightedHarmonic> v) {
        for (auto& x : v) out.push_back(x);
    };
    if (!a.sine && !b.sine) {
        // cos a cos b = 1/2 cos(a-b) + 1/2 cos(a+b)
        push(norm(a.k - b.k, false, half));
        push(norm(a.k + b.k, false, half));
    } else if (a.sine && b.sine) {
        // sin a sin b = 1/2 cos(a-b) - 1/2 cos(a+b)
        push(norm(a.k - b.k, false, half));
        push(norm(a.k + b.k, false, -half));
    } else if (a.sine && !b.sine) {
        // sin a cos b = 1/2 sin(a+b) + 1/2 sin(a-b)
        push(norm(a.k + b.k, true, half));
        push(norm(a.k - b.k, true, half));
    } else {
        // cos a sin b = 1/2 sin(a+b) - 1/2 sin(a-b)
        push(norm(a.k + b.k, true, half));
        push(norm(a.k - b.k, true, -half));
    }
    return out;
}

} // namespace

TrigPoly operator*(const TrigPoly& a, const TrigPoly& b) {
    if (a.angles_ != b.angles_)
        throw Error(ErrorKind::InvalidArgument, "trig polynomials have different angle lists");
    TrigPoly r(a.chart_, a.angles_);
    const std::size_t n = a.angles_.size();
    for (const auto& [ka, ca] : a.terms_) {
        for (const auto& [kb, cb] : b.terms_) {
            Poly coeff = ca * cb;
            // expand the per-angle products as a small tensor product
            std::vector<std::pair<TrigKey, Rat>> acc;
            TrigKey base;
            base.pi_power = ka.pi_power + kb.pi_power;
            acc.emplace_back(base, Rat(1));
            for (std::size_t i = 0; i < n; ++i) {
                auto parts = combine(ka.harmonics[i], kb.harmonics[i]);
                std::vector<std::pair<TrigKey, Rat>> next;
                for (const auto& [key, w] : acc) {
                    for (const auto& p : parts) {
                        TrigKey k2 = key;
                        k2.harmonics.push_back(p.h);
                        next.emplace_back(std::move(k2), w * p.w);
                    }
                }
                acc = std::move(next);
            }
            for (const auto& [key, w] : acc) r.add_term(key, coeff * w);
        }
    }
    return r;
}

TrigPoly TrigPoly::operator*(const Rat& c) const {
    TrigPoly r(chart_, angles_);
    if (c == 0) return r;
    for (const auto& [k, p] : terms_) r.terms_.emplace(k, p * c);
    return r;
}

TrigPoly TrigPoly::derivative_angle(std::size_t angle) const {
    TrigPoly r(chart_, angles_);
    for (const auto& [k, c] : terms_) {
        const Harmonic& h = k.harmonics[angle];
        if (h.k == 0) continue;
        TrigKey dk = k;
        if (h.sine) {
            dk.harmonics[angle] = Harmonic{h.k, false};
            r.add_term(dk, c * Rat(h.k));
        } else {
            dk.harmonics[angle] = Harmonic{h.k, true};
            r.add_term(dk, c * Rat(-h.k));
        }
    }
    return r;
}

Poly TrigPoly::at_zero_angles() const {
    Poly out(chart_);
    for (const auto& [k, c] : terms_) {
        bool vanishes = false;
        for (const auto& h : k.harmonics)
            if (h.sine) { vanishes = true; break; }
        if (vanishes) continue;
        if (k.pi_power != 0)
            throw Error(ErrorKind::NonRationalIntegral, "pi power survives at zero angles");
        out += c;
    }
    return out;
}

double TrigPoly::eval_double(const std::vector<double>& angle_values,
                             const std::vector<Rat>& point) const {
    double acc = 0.0;
    for (const auto& [k, c] : terms_) {
        double t = rat_to_double(c.eval(point));
        if (k.pi_power != 0) t *= std::pow(M_PI, (double)k.pi_power);
        for (std::size_t i = 0; i < k.harmonics.size(); ++i) {
            const Harmonic& h = k.harmonics[i];
            if (h.k == 0) continue;
            double arg = h.k * angle_values[i];
            t *= h.sine ? std::sin(arg) : std::cos(arg);
        }
        acc += t;
    }
    return acc;
}

std::string TrigPoly::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& [k, c] : terms_) {
        if (!first) out << " + ";
        first = false;
        out << "(" << c.to_string() << ")";
        if (k.pi_power != 0) out << "*pi^" << k.pi_power;
        for (std::size_t i = 0; i < k.harmonics.size(); ++i) {
            const Harmonic& h = k.harmonics[i];
            if (h.k == 0) continue;
            out << "*" << (h.sine ? "sin" : "cos") << "(";
            if (h.k != 1) out << h.k << "*";
            out << angles_[i].name << ")";
        }
    }
    return out.str();
}

std::map<int, Poly> trig_integrate_raw(const TrigPoly& f) {
    std::map<int, Poly> out;
    const auto& angles = f.angles();
    for (const auto& [key, coeff] : f.terms()) {
        Rat factor(1);
        int pi_exp = key.pi_power;
        bool zero = false;
        for (std::size_t i = 0; i < angles.size(); ++i) {
            const Harmonic& h = key.harmonics[i];
            if (angles[i].domain == AngleSpec::FullTurn) {
                if (h.k == 0) {
                    factor *= 2;
                    pi_exp += 1;
                } else {
                    zero = true;
                    break;
                }
            } else { // HalfTurn, [0, pi]
                if (h.k == 0) {
                    pi_exp += 1;
                } else if (!h.sine) {
                    zero = true; // int_0^pi cos(k t) dt = 0 for k >= 1
                    break;
                } else if (h.k % 2 == 0) {
                    zero = true; // int_0^pi sin(k t) dt = 0 for even k
                    break;
                } else {
                    factor *= Rat(2, h.k);
                }
            }
        }
        if (zero) continue;
        Poly contrib = coeff * factor;
        auto [it, fresh] = out.emplace(pi_exp, contrib);
        if (!fresh) it->second += contrib;
    }
    for (auto it = out.begin(); it != out.end();) {
        if (it->second.is_zero()) it = out.erase(it);
        else ++it;
    }
    return out;
}

Poly trig_integrate(const TrigPoly& f, const TrigPoly& weight) {
    auto wint = trig_integrate_raw(weight);
    bool normalized = wint.size() == 1 && wint.begin()->first == 0 &&
                      wint.begin()->second.is_constant() &&
                      wint.begin()->second.constant_value() == 1;
    if (!normalized)
        throw Error(ErrorKind::NonNormalizedWeight,
                    "weight does not integrate to 1 over the angle domain");
    auto rint = trig_integrate_raw(f * weight);
    Poly value(f.chart());
    for (const auto& [pi_exp, p] : rint) {
        if (pi_exp == 0) {
            value = p;
        } else {
            throw Error(ErrorKind::NonRationalIntegral,
                        "integral has a residual pi^" + std::to_string(pi_exp) + " part " + p.to_string());
        }
    }
    return value;
}

TrigPoly poly_substitute_trig(const Poly& p, const std::vector<TrigPoly>& bindings) {
    if (bindings.size() != p.chart()->dim())
        throw Error(ErrorKind::InvalidArgument, "trig substitution binding count does not match chart");
    if (bindings.empty())
        throw Error(ErrorKind::InvalidArgument, "empty binding list");
    const ChartPtr& tchart = bindings.front().chart();
    const auto& angles = bindings.front().angles();
    TrigPoly acc(tchart, angles);

    // cache small powers of each binding
    std::vector<std::vector<TrigPoly>> powers(bindings.size());
    auto power_of = [&](std::size_t i, int e) -> const TrigPoly& {
        auto& cache = powers[i];
        if (cache.empty()) cache.push_back(TrigPoly::constant(tchart, angles, Rat(1)));
        while ((int)cache.size() <= e) cache.push_back(cache.back() * bindings[i]);
        return cache[(std::size_t)e];
    };

    for (const auto& [m, c] : p.terms()) {
        TrigPoly t = TrigPoly::constant(tchart, angles, c);
        for (std::size_t i = 0; i < m.size(); ++i)
            if (m[i] > 0) t = t * power_of(i, m[i]);
        acc += t;
    }
    return acc;
}

} // namespace diracred
