#include "reduction.hpp"

namespace diracred {

QuotientMap::QuotientMap(ChartPtr src, ChartPtr tgt, InvariantBasis b)
    : source(std::move(src)), target(std::move(tgt)), basis(std::move(b)) {
    if (target->dim() != basis.fns.size())
        throw Error(ErrorKind::ValidationError,
                    "quotient chart dimension != number of invariant basis elements");
    for (const auto& f : basis.fns)
        require_same_chart(source, f.chart(), "quotient map basis");
}

std::vector<Rat> QuotientMap::project(const std::vector<Rat>& p) const {
    std::vector<Rat> out;
    out.reserve(basis.fns.size());
    for (const auto& f : basis.fns) out.push_back(f.eval(p));
    return out;
}

Poly QuotientMap::pullback(const Poly& q) const {
    return q.substitute(source, basis.fns);
}

RatFn QuotientMap::pullback(const RatFn& q) const {
    return RatFn(pullback(q.num()), pullback(q.den()));
}

bool StratumConstraint::satisfied(const std::vector<Rat>& p) const {
    Rat v = lhs.eval(p);
    switch (rel) {
        case ConstraintRel::Greater: return v > 0;
        case ConstraintRel::GreaterEq: return v >= 0;
        case ConstraintRel::Equal: return v == 0;
        case ConstraintRel::NotEqual: return v != 0;
    }
    return false;
}

std::vector<Rat> StratumChart::params_of_upstairs(const QuotientMap& q,
                                                  const std::vector<Rat>& up) const {
    auto tgt = q.project(up);
    std::vector<Rat> out(params->dim(), Rat(0));
    for (std::size_t pi = 0; pi < params->dim(); ++pi) {
        bool found = false;
        for (std::size_t ti = 0; ti < embedding.size(); ++ti) {
            if (embedding[ti] == RatFn::coordinate(params, pi)) {
                out[pi] = tgt[ti];
                found = true;
                break;
            }
        }
        if (!found)
            throw Error(ErrorKind::ValidationError,
                        "stratum '" + name + "': parameter '" + params->coords[pi] +
                            "' does not appear as a plain embedding entry");
    }
    return out;
}

std::vector<std::vector<Rat>> StratumChart::downstairs_samples(const QuotientMap& q) const {
    std::vector<std::vector<Rat>> out;
    out.reserve(upstairs_samples.size());
    for (const auto& up : upstairs_samples) out.push_back(params_of_upstairs(q, up));
    return out;
}

void StratumChart::validate(const QuotientMap& q) const {
    if (embedding.size() != q.target->dim())
        throw Error(ErrorKind::ValidationError,
                    "stratum '" + name + "': embedding entry count != quotient dimension");
    for (const auto& e : embedding) require_same_chart(params, e.chart(), "stratum embedding");
    for (const auto& up : upstairs_samples) {
        auto ps = params_of_upstairs(q, up);
        // the upstairs sample must project onto the embedded image
        auto tgt = q.project(up);
        for (std::size_t ti = 0; ti < embedding.size(); ++ti) {
            if (embedding[ti].denominator_vanishes_at(ps))
                throw Error(ErrorKind::ValidationError,
                            "stratum '" + name + "': embedding undefined at an upstairs sample");
            if (embedding[ti].eval(ps) != tgt[ti])
                throw Error(ErrorKind::ValidationError,
                            "stratum '" + name + "': upstairs sample does not project into the stratum");
        }
        for (const auto& con : constraints)
            if (!con.satisfied(ps))
                throw Error(ErrorKind::ValidationError,
                            "stratum '" + name + "': upstairs sample violates a constraint");
        for (const auto& memb : upstairs_membership)
            if (memb.eval(up) != 0)
                throw Error(ErrorKind::ValidationError,
                            "stratum '" + name + "': upstairs sample violates the membership polynomial " +
                                memb.to_string());
    }
}

std::optional<Poly> reexpress(const Poly& p, const QuotientMap& q, int degree_bound) {
    const std::size_t k = q.basis.fns.size();
    // enumerate monomials in the invariant symbols up to total degree `bound`,
    // lowest degree first, and match coefficients over Q
    for (int bound = 0; bound <= degree_bound; ++bound) {
        std::vector<Mono> monos;
        std::vector<Mono> stack;
        // all exponent vectors of total degree <= bound, deterministic order
        std::function<void(Mono&, std::size_t, int)> gen = [&](Mono& m, std::size_t i, int left) {
            if (i == k) {
                monos.push_back(m);
                return;
            }
            for (int e = 0; e <= left; ++e) {
                m[i] = e;
                gen(m, i + 1, left - e);
            }
            m[i] = 0;
        };
        Mono m(k, 0);
        gen(m, 0, bound);

        // source-side expansion of each candidate monomial
        std::vector<Poly> expanded;
        expanded.reserve(monos.size());
        for (const auto& mo : monos) {
            Poly t = Poly::constant(q.source, Rat(1));
            for (std::size_t i = 0; i < k; ++i)
                if (mo[i] > 0) t = t * q.basis.fns[i].pow((unsigned)mo[i]);
            expanded.push_back(std::move(t));
        }

        // linear system over Q indexed by source monomials
        std::map<Mono, std::size_t, MonoGradedLexGreater> row_of;
        auto row_index = [&](const Mono& mo) {
            auto [it, fresh] = row_of.emplace(mo, row_of.size());
            return it->second;
        };
        for (const auto& e : expanded)
            for (const auto& [mo, c] : e.terms()) row_index(mo);
        for (const auto& [mo, c] : p.terms()) row_index(mo);

        QMat sys(row_of.size(), monos.size());
        std::vector<Rat> rhs(row_of.size(), Rat(0));
        for (std::size_t j = 0; j < expanded.size(); ++j)
            for (const auto& [mo, c] : expanded[j].terms()) sys.at(row_index(mo), j) = c;
        for (const auto& [mo, c] : p.terms()) rhs[row_index(mo)] = c;

        auto sol = sys.solve(rhs);
        if (!sol) continue;
        Poly out(q.target);
        for (std::size_t j = 0; j < monos.size(); ++j) out.add_term(monos[j], (*sol)[j]);
        return out;
    }
    return std::nullopt;
}

Poly pushforward_function(const Poly& f, const QuotientMap& q, int bound) {
    auto r = reexpress(f, q, bound);
    if (!r)
        throw Error(ErrorKind::NotExpressibleAtBound,
                    f.to_string() + " is not a polynomial in the invariants up to degree " +
                        std::to_string(bound) + " (raise the bound if it should be)");
    // defining identity f_bar o pi = f
    if (q.pullback(*r) != f)
        throw Error(ErrorKind::Internal, "pushforward verification failed");
    return *r;
}

RatFn pushforward_function(const RatFn& f, const QuotientMap& q, int bound) {
    if (f.is_polynomial()) return RatFn(pushforward_function(f.as_polynomial(), q, bound));
    Poly num = pushforward_function(f.num(), q, bound);
    Poly den = pushforward_function(f.den(), q, bound);
    return RatFn(num, den);
}

VectorField pushforward_vf(const VectorField& x, const GroupAction& a, const QuotientMap& q,
                           int bound, const std::vector<std::vector<Rat>>& samples) {
    require_same_chart(x.chart, q.source, "pushforward");
    if (!a.is_descending(x, samples))
        throw Error(ErrorKind::NotDescending,
                    "field " + x.to_string() + " does not descend to the orbit space");
    std::vector<RatFn> comps;
    comps.reserve(q.target->dim());
    for (const auto& f : q.basis.fns) {
        RatFn xf = x.apply(RatFn(f));
        if (!xf.is_polynomial())
            throw Error(ErrorKind::NotExpressibleAtBound,
                        "X(f) has a denominator; only polynomial data pushes forward here");
        auto r = reexpress(xf.is_zero() ? Poly(q.source) : xf.as_polynomial(), q, bound);
        if (!r)
            throw Error(ErrorKind::NotExpressibleAtBound,
                        "X(" + f.to_string() + ") is not expressible in the invariants up to degree " +
                            std::to_string(bound));
        comps.emplace_back(*r);
    }
    VectorField out(q.target, std::move(comps));
    // defining identity, coordinate by coordinate:
    // pi^*(X_bar(f_bar_i)) = X(pi^*(f_bar_i))
    for (std::size_t i = 0; i < q.target->dim(); ++i) {
        RatFn lhs = q.pullback(out.components[i]);
        RatFn rhs = x.apply(RatFn(q.basis.fns[i]));
        if (lhs != rhs)
            throw Error(ErrorKind::Internal, "pushforward defining identity failed");
    }
    return out;
}

OneForm pushforward_oneform(const OneForm& alpha, const OneFormPresentation& pres,
                            const GroupAction& a, const QuotientMap& q, int bound) {
    require_same_chart(alpha.chart, q.source, "pushforward");
    OneForm assembled = OneForm::zero(q.source);
    for (const auto& [g, f] : pres.pairs)
        assembled = assembled + g * exterior_derivative(RatFn(f), q.source);
    if (!(assembled == alpha))
        throw Error(ErrorKind::PresentationMismatch,
                    "presentation assembles to " + assembled.to_string() + ", expected " +
                        alpha.to_string());
    OneForm out = OneForm::zero(q.target);
    for (const auto& [g, f] : pres.pairs) {
        if (!a.is_invariant(g))
            throw Error(ErrorKind::NotInvariant, "presentation coefficient " + g.to_string() +
                                                     " is not invariant");
        if (!a.is_invariant(RatFn(f)))
            throw Error(ErrorKind::NotInvariant,
                        "presentation function " + f.to_string() + " is not invariant");
        RatFn g_bar = pushforward_function(g, q, bound);
        Poly f_bar = pushforward_function(f, q, bound);
        out = out + g_bar * exterior_derivative(RatFn(f_bar), q.target);
    }
    return out;
}

Section restrict_to_stratum(const Section& s, const StratumChart& st, const QuotientMap& q) {
    require_same_chart(s.chart(), q.target, "restriction");
    const std::size_t nt = q.target->dim();
    const std::size_t k = st.params->dim();

    // Jacobian of the embedding: J[i][j] = d embedding_i / d params_j
    std::vector<std::vector<RatFn>> jac(nt, std::vector<RatFn>(k, RatFn(st.params)));
    for (std::size_t i = 0; i < nt; ++i)
        for (std::size_t j = 0; j < k; ++j) jac[i][j] = st.embedding[i].derivative(j);

    // field part: solve J y = X o E over Q(params)
    std::vector<RatFn> rhs;
    rhs.reserve(nt);
    for (std::size_t i = 0; i < nt; ++i)
        rhs.push_back(s.x.components[i].substitute(st.params, st.embedding));
    FMat jm = FMat::from_rows(jac);
    if (jm.rank() != k)
        throw Error(ErrorKind::ValidationError,
                    "stratum '" + st.name + "': embedding is not an immersion");
    auto sol = jm.solve(rhs);
    if (!sol) {
        std::string detail;
        for (std::size_t i = 0; i < nt; ++i) detail += rhs[i].to_string() + " ";
        throw Error(ErrorKind::NotTangentToStratum,
                    "field part is not tangent to stratum '" + st.name + "' (X o E = " + detail + ")");
    }
    VectorField xr(st.params, std::move(*sol));

    // one-form part: pullback (alpha_P)_j = sum_i (alpha_i o E) J[i][j]
    std::vector<RatFn> ar(k, RatFn(st.params));
    for (std::size_t j = 0; j < k; ++j) {
        RatFn acc(st.params);
        for (std::size_t i = 0; i < nt; ++i) {
            if (s.alpha.components[i].is_zero() || jac[i][j].is_zero()) continue;
            acc += s.alpha.components[i].substitute(st.params, st.embedding) * jac[i][j];
        }
        ar[j] = acc;
    }
    return Section(std::move(xr), OneForm(st.params, std::move(ar)));
}

ReducedDirac reduced_dirac(const DescendingSet& ds, const GroupAction& a, const QuotientMap& q,
                           const StratumChart& st, int bound, bool upstairs_integrable) {
    if (ds.sections.empty())
        throw Error(ErrorKind::InvalidArgument, "reduction needs at least one descending section");
    st.validate(q);

    ReducedDirac out;
    out.stratum = st;
    for (std::size_t i = 0; i < ds.sections.size(); ++i) {
        const auto& dsec = ds.sections[i];
        VectorField xb = pushforward_vf(dsec.section.x, a, q, bound, st.upstairs_samples);
        OneForm ab = pushforward_oneform(dsec.section.alpha, dsec.presentation, a, q, bound);
        Section reduced = restrict_to_stratum(Section(xb, ab), st, q);
        out.generators.push_back(std::move(reduced));
        out.provenance.push_back(i);
    }

    // Lagrangian validation on the params chart
    out.isotropic = true;
    for (std::size_t i = 0; i < out.generators.size() && out.isotropic; ++i)
        for (std::size_t j = i; j < out.generators.size(); ++j) {
            if (!pairing(out.generators[i], out.generators[j]).is_zero()) {
                out.isotropic = false;
                break;
            }
        }
    if (!out.isotropic)
        throw Error(ErrorKind::ValidationError,
                    "reduced generators on stratum '" + st.name + "' are not isotropic");

    Distribution dist = out.as_distribution();
    out.generic_rank_value = generic_rank(dist);
    if (out.generic_rank_value != st.params->dim())
        throw Error(ErrorKind::RankDeficientOnStratum,
                    "reduced structure on stratum '" + st.name + "' has generic rank " +
                        std::to_string(out.generic_rank_value) + ", expected " +
                        std::to_string(st.params->dim()));

    out.rank_certified = true;
    for (const auto& p : st.downstairs_samples(q)) {
        bool interior = true;
        for (const auto& con : st.constraints)
            if (!con.satisfied(p)) interior = false;
        if (!interior) continue;
        if (eval_at(dist, p).rank() != st.params->dim()) {
            out.rank_certified = false;
            throw Error(ErrorKind::RankDeficientOnStratum,
                        "reduced structure rank drops at a downstairs sample of stratum '" + st.name +
                            "'");
        }
    }

    if (upstairs_integrable) {
        // an integrable structure reduces to an integrable one; verify closure
        IntegrabilityReport rep;
        rep.integrable = true;
        for (std::size_t i = 0; i < out.generators.size(); ++i)
            for (std::size_t j = i + 1; j < out.generators.size(); ++j) {
                BracketCheck chk;
                chk.i = i;
                chk.j = j;
                chk.bracket = courant_bracket(out.generators[i], out.generators[j]);
                auto r = membership_generic(chk.bracket, dist);
                if (auto* w = std::get_if<MembershipWitness>(&r)) {
                    chk.member = true;
                    chk.witness = w->coefficients;
                } else {
                    chk.member = false;
                    chk.residual = std::get<NotMember>(r).residual.to_string();
                    rep.integrable = false;
                }
                rep.checks.push_back(std::move(chk));
            }
        if (!rep.integrable)
            throw Error(ErrorKind::ValidationError,
                        "reduced structure on stratum '" + st.name +
                            "' fails bracket closure although the upstairs structure is integrable");
        out.integrability = std::move(rep);
    }
    return out;
}

bool module_equal(const std::vector<Section>& a, const std::vector<Section>& b,
                  const ChartPtr& chart) {
    Distribution da = Distribution::pontryagin(chart, a);
    Distribution db = Distribution::pontryagin(chart, b);
    for (const auto& s : a)
        if (!is_member_generic(s, db)) return false;
    for (const auto& s : b)
        if (!is_member_generic(s, da)) return false;
    return true;
}

} // namespace diracred
