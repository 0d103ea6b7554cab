#include "action.hpp"

namespace diracred {

namespace {

// Extracts the matrix M of a linear vector field (components homogeneous of
// degree one), or fails.
std::vector<std::vector<Rat>> linear_field_matrix(const VectorField& x, const char* what) {
    const std::size_t n = x.chart->dim();
    std::vector<std::vector<Rat>> m(n, std::vector<Rat>(n, Rat(0)));
    for (std::size_t i = 0; i < n; ++i) {
        const RatFn& f = x.components[i];
        if (!f.is_polynomial())
            throw Error(ErrorKind::GeneratorMismatch, std::string(what) + ": component is not polynomial");
        Poly p = f.as_polynomial();
        for (const auto& [mono, c] : p.terms()) {
            if (mono_degree(mono) != 1)
                throw Error(ErrorKind::GeneratorMismatch,
                            std::string(what) + ": component " + p.to_string() + " is not linear");
            for (std::size_t j = 0; j < n; ++j)
                if (mono[j] == 1) m[i][j] = c;
        }
    }
    return m;
}

std::vector<std::vector<Rat>> mat_mul(const std::vector<std::vector<Rat>>& a,
                                      const std::vector<std::vector<Rat>>& b) {
    const std::size_t n = a.size();
    std::vector<std::vector<Rat>> r(n, std::vector<Rat>(n, Rat(0)));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) {
            if (a[i][k] == 0) continue;
            for (std::size_t j = 0; j < n; ++j) r[i][j] += a[i][k] * b[k][j];
        }
    return r;
}

std::vector<Rat> mat_flatten(const std::vector<std::vector<Rat>>& a) {
    std::vector<Rat> v;
    for (const auto& row : a) v.insert(v.end(), row.begin(), row.end());
    return v;
}

bool mat_is_zero(const std::vector<std::vector<Rat>>& a) {
    for (const auto& row : a)
        for (const auto& x : row)
            if (x != 0) return false;
    return true;
}

std::vector<std::vector<Rat>> mat_sub(std::vector<std::vector<Rat>> a,
                                      const std::vector<std::vector<Rat>>& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a.size(); ++j) a[i][j] -= b[i][j];
    return a;
}

VectorField matrix_field(const ChartPtr& chart, const std::vector<std::vector<Rat>>& m) {
    const std::size_t n = chart->dim();
    std::vector<RatFn> comps;
    comps.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        Poly p(chart);
        for (std::size_t j = 0; j < n; ++j) {
            if (m[i][j] == 0) continue;
            Mono mono(n, 0);
            mono[j] = 1;
            p.add_term(mono, m[i][j]);
        }
        comps.emplace_back(p);
    }
    return VectorField(chart, std::move(comps));
}

// exp(theta M) = I + sin(theta) M + (1 - cos(theta)) M^2 for M^3 = -M.
std::vector<std::vector<TrigPoly>> rotation_exp(const ChartPtr& chart,
                                                const std::vector<AngleSpec>& angles,
                                                std::size_t angle,
                                                const std::vector<std::vector<Rat>>& m) {
    const std::size_t n = chart->dim();
    auto m2 = mat_mul(m, m);
    TrigPoly s = TrigPoly::sin_of(chart, angles, angle);
    TrigPoly one = TrigPoly::constant(chart, angles, Rat(1));
    TrigPoly omc = one - TrigPoly::cos_of(chart, angles, angle);
    std::vector<std::vector<TrigPoly>> a(n, std::vector<TrigPoly>(n, TrigPoly(chart, angles)));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            TrigPoly e(chart, angles);
            if (i == j) e += one;
            if (m[i][j] != 0) e += s * m[i][j];
            if (m2[i][j] != 0) e += omc * m2[i][j];
            a[i][j] = e;
        }
    return a;
}

std::vector<std::vector<TrigPoly>> trig_mat_mul(const std::vector<std::vector<TrigPoly>>& a,
                                                const std::vector<std::vector<TrigPoly>>& b) {
    const std::size_t n = a.size();
    std::vector<std::vector<TrigPoly>> r(n,
        std::vector<TrigPoly>(n, TrigPoly(a[0][0].chart(), a[0][0].angles())));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            TrigPoly acc(a[0][0].chart(), a[0][0].angles());
            for (std::size_t k = 0; k < n; ++k) {
                if (a[i][k].is_zero() || b[k][j].is_zero()) continue;
                acc += a[i][k] * b[k][j];
            }
            r[i][j] = std::move(acc);
        }
    return r;
}

} // namespace

GroupAction GroupAction::trivial(const ChartPtr& chart) {
    GroupAction a;
    a.chart_ = chart;
    a.kind_ = GroupKind::Trivial;
    const std::size_t n = chart->dim();
    a.matrix_.assign(n, std::vector<TrigPoly>(n, TrigPoly(chart, {})));
    for (std::size_t i = 0; i < n; ++i)
        a.matrix_[i][i] = TrigPoly::constant(chart, {}, Rat(1));
    a.haar_ = TrigPoly::constant(chart, {}, Rat(1));
    return a;
}

GroupAction GroupAction::circle(const ChartPtr& chart, const VectorField& generator) {
    return torus(chart, {generator});
}

GroupAction GroupAction::torus(const ChartPtr& chart, const std::vector<VectorField>& generators) {
    if (generators.empty()) return trivial(chart);
    GroupAction a;
    a.chart_ = chart;
    a.kind_ = generators.size() == 1 ? GroupKind::Circle : GroupKind::Torus;
    a.liegen_ = generators;
    for (std::size_t i = 0; i < generators.size(); ++i)
        a.angles_.push_back(AngleSpec{"t" + std::to_string(i + 1), AngleSpec::FullTurn});

    std::vector<std::vector<std::vector<Rat>>> mats;
    for (const auto& g : generators) {
        require_same_chart(chart, g.chart, "torus generator");
        auto m = linear_field_matrix(g, "circle generator");
        auto m3 = mat_mul(mat_mul(m, m), m);
        for (std::size_t i = 0; i < m.size(); ++i)
            for (std::size_t j = 0; j < m.size(); ++j)
                if (m3[i][j] != -m[i][j])
                    throw Error(ErrorKind::GeneratorMismatch,
                                "circle generator is not a unit-speed rotation (M^3 != -M)");
        mats.push_back(std::move(m));
    }
    for (std::size_t i = 0; i < mats.size(); ++i)
        for (std::size_t j = i + 1; j < mats.size(); ++j)
            if (!mat_is_zero(mat_sub(mat_mul(mats[i], mats[j]), mat_mul(mats[j], mats[i]))))
                throw Error(ErrorKind::GeneratorMismatch, "torus generators do not commute");

    a.matrix_ = rotation_exp(chart, a.angles_, 0, mats[0]);
    for (std::size_t g = 1; g < mats.size(); ++g)
        a.matrix_ = trig_mat_mul(a.matrix_, rotation_exp(chart, a.angles_, g, mats[g]));

    // weight (1/(2 pi))^k = (1/2^k) pi^-k
    Rat c(1);
    for (std::size_t i = 0; i < a.angles_.size(); ++i) c /= 2;
    a.haar_ = TrigPoly::pi_power(chart, a.angles_, -(int)a.angles_.size(), c);
    a.validate_against_map();
    return a;
}

GroupAction GroupAction::so3_diagonal(const ChartPtr& chart,
                                      const std::vector<VectorField>& generators) {
    const std::size_t n = chart->dim();
    if (n % 3 != 0)
        throw Error(ErrorKind::GeneratorMismatch, "SO(3) diagonal action needs a chart of dimension 3k");
    if (generators.size() != 3)
        throw Error(ErrorKind::GeneratorMismatch, "SO(3) action needs exactly three generators");
    GroupAction a;
    a.chart_ = chart;
    a.kind_ = GroupKind::SO3;
    a.liegen_ = generators;
    a.angles_ = {AngleSpec{"alpha", AngleSpec::FullTurn},
                 AngleSpec{"beta", AngleSpec::HalfTurn},
                 AngleSpec{"gamma", AngleSpec::FullTurn}};

    // z-x-z Euler angles: A = Rz(alpha) Rx(beta) Rz(gamma), acting diagonally
    // on each R^3 block.
    auto rz = [&](std::size_t angle) {
        std::vector<std::vector<Rat>> lz(3, std::vector<Rat>(3, Rat(0)));
        lz[0][1] = -1;
        lz[1][0] = 1;
        // exp(t Lz) via the rotation formula on the 3x3 block
        std::vector<std::vector<TrigPoly>> r(3, std::vector<TrigPoly>(3, TrigPoly(chart, a.angles_)));
        TrigPoly c = TrigPoly::cos_of(chart, a.angles_, angle);
        TrigPoly s = TrigPoly::sin_of(chart, a.angles_, angle);
        TrigPoly one = TrigPoly::constant(chart, a.angles_, Rat(1));
        r[0][0] = c; r[0][1] = -s;
        r[1][0] = s; r[1][1] = c;
        r[2][2] = one;
        return r;
    };
    auto rx = [&](std::size_t angle) {
        std::vector<std::vector<TrigPoly>> r(3, std::vector<TrigPoly>(3, TrigPoly(chart, a.angles_)));
        TrigPoly c = TrigPoly::cos_of(chart, a.angles_, angle);
        TrigPoly s = TrigPoly::sin_of(chart, a.angles_, angle);
        TrigPoly one = TrigPoly::constant(chart, a.angles_, Rat(1));
        r[0][0] = one;
        r[1][1] = c; r[1][2] = -s;
        r[2][1] = s; r[2][2] = c;
        return r;
    };
    auto euler3 = trig_mat_mul(trig_mat_mul(rz(0), rx(1)), rz(2));

    a.matrix_.assign(n, std::vector<TrigPoly>(n, TrigPoly(chart, a.angles_)));
    for (std::size_t blk = 0; blk < n / 3; ++blk)
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 3; ++j)
                a.matrix_[3 * blk + i][3 * blk + j] = euler3[i][j];

    // Haar weight sin(beta) / (8 pi^2) on [0,2pi) x [0,pi] x [0,2pi)
    TrigPoly w = TrigPoly::sin_of(chart, a.angles_, 1);
    a.haar_ = w * TrigPoly::pi_power(chart, a.angles_, -2, Rat(1, 8));
    a.validate_against_map();
    return a;
}

void GroupAction::validate_against_map() {
    const std::size_t n = chart_->dim();

    // action map at zero angles is the identity substitution
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            Poly v = matrix_[i][j].at_zero_angles();
            Rat expect = (i == j) ? Rat(1) : Rat(0);
            if (!v.is_constant() || v.constant_value() != expect)
                throw Error(ErrorKind::GeneratorMismatch, "action map at zero angles is not the identity");
        }

    // orthogonality: A A^T = I exactly (this is what justifies using A^T as
    // the inverse Jacobian in pullbacks)
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            TrigPoly acc(chart_, angles_);
            for (std::size_t k = 0; k < n; ++k) acc += matrix_[i][k] * matrix_[j][k];
            TrigPoly expect = TrigPoly::constant(chart_, angles_, i == j ? Rat(1) : Rat(0));
            if (!(acc == expect))
                throw Error(ErrorKind::GeneratorMismatch, "action map is not orthogonal");
        }

    // Haar weight integrates to 1
    auto w = trig_integrate_raw(haar_);
    bool ok = w.size() == 1 && w.begin()->first == 0 && w.begin()->second.is_constant() &&
              w.begin()->second.constant_value() == 1;
    if (!ok) throw Error(ErrorKind::NonNormalizedWeight, "Haar weight does not integrate to 1");

    // The angle derivatives of the action map at zero must recover the
    // declared fundamental fields: equal spans after closing the derivative
    // fields under the matrix bracket (for Euler angles, d/d gamma at zero
    // duplicates d/d alpha, and the missing rotation appears as a bracket).
    std::vector<std::vector<std::vector<Rat>>> derived;
    for (std::size_t g = 0; g < angles_.size(); ++g) {
        std::vector<std::vector<Rat>> d(n, std::vector<Rat>(n, Rat(0)));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                Poly v = matrix_[i][j].derivative_angle(g).at_zero_angles();
                if (!v.is_constant())
                    throw Error(ErrorKind::Internal, "non-constant angle derivative at zero");
                d[i][j] = v.constant_value();
            }
        derived.push_back(std::move(d));
    }
    // bracket closure
    bool grew = true;
    while (grew) {
        grew = false;
        std::vector<std::vector<Rat>> flat;
        for (const auto& m : derived) flat.push_back(mat_flatten(m));
        for (std::size_t i = 0; i < derived.size() && !grew; ++i)
            for (std::size_t j = i + 1; j < derived.size() && !grew; ++j) {
                auto br = mat_sub(mat_mul(derived[j], derived[i]), mat_mul(derived[i], derived[j]));
                if (mat_is_zero(br)) continue;
                if (!spans_contain(flat, {mat_flatten(br)})) {
                    derived.push_back(br);
                    grew = true;
                }
            }
    }
    std::vector<std::vector<Rat>> derived_flat, given_flat;
    for (const auto& m : derived) derived_flat.push_back(mat_flatten(m));
    for (const auto& g : liegen_) {
        require_same_chart(chart_, g.chart, "fundamental field");
        given_flat.push_back(mat_flatten(linear_field_matrix(g, "fundamental field")));
    }
    if (!liegen_.empty() || !derived.empty()) {
        if (!spans_equal(derived_flat, given_flat))
            throw Error(ErrorKind::GeneratorMismatch,
                        "fundamental fields do not match the action map derivatives at the identity");
    }
}

Distribution GroupAction::vertical_distribution() const {
    return Distribution::tangent(chart_, liegen_);
}

namespace {

template <typename ResidualFn>
InvarianceCertificate check_all(const std::vector<VectorField>& gens, ResidualFn&& residual) {
    InvarianceCertificate cert;
    for (std::size_t i = 0; i < gens.size(); ++i) {
        std::string r = residual(gens[i]);
        if (!r.empty()) {
            cert.invariant = false;
            cert.residuals.emplace_back(i, std::move(r));
        }
    }
    return cert;
}

} // namespace

InvarianceCertificate GroupAction::invariance(const RatFn& f) const {
    return check_all(liegen_, [&](const VectorField& xi) {
        RatFn r = xi.apply(f);
        return r.is_zero() ? std::string() : r.to_string();
    });
}

InvarianceCertificate GroupAction::invariance(const VectorField& x) const {
    return check_all(liegen_, [&](const VectorField& xi) {
        VectorField r = lie_bracket(xi, x);
        return r.is_zero() ? std::string() : r.to_string();
    });
}

InvarianceCertificate GroupAction::invariance(const OneForm& a) const {
    return check_all(liegen_, [&](const VectorField& xi) {
        OneForm r = lie_derivative(xi, a);
        return r.is_zero() ? std::string() : r.to_string();
    });
}

DescendingCertificate GroupAction::descending(const VectorField& x,
                                              const std::vector<std::vector<Rat>>& samples) const {
    DescendingCertificate cert;
    Distribution v = vertical_distribution();
    for (std::size_t i = 0; i < liegen_.size(); ++i) {
        VectorField br = lie_bracket(x, liegen_[i]);
        Section s(br, OneForm::zero(chart_));
        bool gok = br.is_zero() || is_member_generic(s, v);
        bool pok = true;
        if (!br.is_zero()) {
            for (const auto& p : samples)
                if (!is_member_at(s, v, p)) { pok = false; break; }
        }
        cert.generic_ok.push_back(gok);
        cert.pointwise_ok.push_back(pok);
        if (!gok || !pok) {
            cert.descending = false;
            cert.detail += "[X, xi_" + std::to_string(i + 1) + "] = " + br.to_string() +
                           " is not a section of the vertical distribution; ";
        }
    }
    return cert;
}

TrigPoly GroupAction::pullback_trig(const Poly& f) const {
    const std::size_t n = chart_->dim();
    std::vector<TrigPoly> bindings;
    bindings.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        TrigPoly b(chart_, angles_);
        for (std::size_t j = 0; j < n; ++j) {
            if (matrix_[i][j].is_zero()) continue;
            b += matrix_[i][j] * TrigPoly::from_poly(angles_, Poly::coordinate(chart_, j));
        }
        bindings.push_back(std::move(b));
    }
    return poly_substitute_trig(f, bindings);
}

RatFn GroupAction::average(const RatFn& f) const {
    if (is_invariant(f)) return f;
    auto den_cert = invariance(RatFn(f.den()));
    if (!den_cert.invariant)
        throw Error(ErrorKind::InvalidArgument,
                    "average needs an invariant denominator, got " + f.den().to_string());
    Poly avg = trig_integrate(pullback_trig(f.num()), haar_);
    RatFn out = RatFn(avg, f.den());
    if (!is_invariant(out))
        throw Error(ErrorKind::Internal, "average failed to produce an invariant function");
    return out;
}

namespace {

// Common invariant denominator of a component list, or failure text.
Poly common_invariant_denominator(const GroupAction& a, const std::vector<RatFn>& comps) {
    Poly l = Poly::constant(a.chart(), Rat(1));
    for (const auto& f : comps) l = poly_lcm(l, f.den());
    if (!a.is_invariant(RatFn(l)))
        throw Error(ErrorKind::InvalidArgument,
                    "average needs invariant component denominators, got " + l.to_string());
    return l;
}

} // namespace

VectorField GroupAction::average(const VectorField& x) const {
    require_same_chart(chart_, x.chart, "average");
    if (is_invariant(x)) return x;
    const std::size_t n = chart_->dim();
    Poly den = common_invariant_denominator(*this, x.components);
    // (Phi_theta^* X)^i = sum_j A_ji(theta) X^j(A(theta) m); A^T = A^-1.
    std::vector<TrigPoly> pulled(n, TrigPoly(chart_, angles_));
    for (std::size_t j = 0; j < n; ++j) {
        if (x.components[j].is_zero()) continue;
        Poly numj = x.components[j].num() * *poly_divide_exact(den, x.components[j].den());
        TrigPoly xj = pullback_trig(numj);
        for (std::size_t i = 0; i < n; ++i) {
            if (matrix_[j][i].is_zero()) continue;
            pulled[i] += matrix_[j][i] * xj;
        }
    }
    std::vector<RatFn> comps;
    comps.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
        comps.emplace_back(trig_integrate(pulled[i], haar_), den);
    VectorField out(chart_, std::move(comps));
    if (!is_invariant(out))
        throw Error(ErrorKind::Internal, "average failed to produce an invariant field");
    return out;
}

OneForm GroupAction::average(const OneForm& a) const {
    require_same_chart(chart_, a.chart, "average");
    if (is_invariant(a)) return a;
    const std::size_t n = chart_->dim();
    Poly den = common_invariant_denominator(*this, a.components);
    // (Phi_theta^* alpha)_i = sum_j A_ji(theta) alpha_j(A(theta) m)
    std::vector<TrigPoly> pulled(n, TrigPoly(chart_, angles_));
    for (std::size_t j = 0; j < n; ++j) {
        if (a.components[j].is_zero()) continue;
        Poly numj = a.components[j].num() * *poly_divide_exact(den, a.components[j].den());
        TrigPoly aj = pullback_trig(numj);
        for (std::size_t i = 0; i < n; ++i) {
            if (matrix_[j][i].is_zero()) continue;
            pulled[i] += matrix_[j][i] * aj;
        }
    }
    std::vector<RatFn> comps;
    comps.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
        comps.emplace_back(trig_integrate(pulled[i], haar_), den);
    OneForm out(chart_, std::move(comps));
    if (!is_invariant(out))
        throw Error(ErrorKind::Internal, "average failed to produce an invariant form");
    return out;
}

InvariantBasis::InvariantBasis(const GroupAction& action, std::vector<Poly> fs) : fns(std::move(fs)) {
    for (const auto& f : fns) {
        auto cert = action.invariance(RatFn(f));
        if (!cert.invariant)
            throw Error(ErrorKind::NotInvariant,
                        "basis element " + f.to_string() + " is not invariant (residual " +
                            cert.residuals.front().second + ")");
    }
}

Distribution invariant_codistribution(const GroupAction& a, const InvariantBasis& b) {
    std::vector<OneForm> forms;
    forms.reserve(b.fns.size());
    for (const auto& f : b.fns) {
        OneForm df = exterior_derivative(RatFn(f), a.chart());
        for (std::size_t i = 0; i < a.fundamental_fields().size(); ++i) {
            RatFn v = df.apply(a.fundamental_fields()[i]);
            if (!v.is_zero())
                throw Error(ErrorKind::NotInvariant,
                            "d(" + f.to_string() + ") does not annihilate fundamental field " +
                                std::to_string(i + 1));
        }
        forms.push_back(std::move(df));
    }
    return Distribution::cotangent(a.chart(), forms);
}

std::pair<Distribution, Distribution> descending_tangent(
    const GroupAction& a, const std::vector<VectorField>& declared_invariant_fields) {
    for (const auto& f : declared_invariant_fields) {
        auto cert = a.invariance(f);
        if (!cert.invariant)
            throw Error(ErrorKind::NotInvariant,
                        "declared field " + f.to_string() + " is not invariant (residual " +
                            cert.residuals.front().second + ")");
    }
    Distribution tg = Distribution::tangent(a.chart(), declared_invariant_fields);
    std::vector<VectorField> all = declared_invariant_fields;
    for (const auto& xi : a.fundamental_fields()) all.push_back(xi);
    Distribution t = Distribution::tangent(a.chart(), all);
    return {std::move(t), std::move(tg)};
}

} // namespace diracred
