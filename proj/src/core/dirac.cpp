#include "dirac.hpp"

namespace diracred {

DiracStructure::DiracStructure(const ChartPtr& chart, std::vector<Section> generators,
                               const std::vector<std::vector<Rat>>& samples)
    : chart_(chart) {
    const std::size_t n = chart->dim();
    for (const auto& g : generators) require_same_chart(chart, g.chart(), "dirac generator");

    if (generators.size() > n) {
        // normalize an over-complete spanning set by fraction-field row
        // reduction: keep a maximal independent subset
        std::vector<std::vector<RatFn>> rows;
        for (const auto& g : generators) rows.push_back(g.fiber_components());
        auto keep = FMat::from_rows(rows).independent_rows();
        std::vector<Section> kept;
        for (auto i : keep) kept.push_back(generators[i]);
        generators = std::move(kept);
    }
    if (generators.size() != n)
        throw Error(ErrorKind::RankDeficient,
                    "need exactly " + std::to_string(n) + " independent generators, got " +
                        std::to_string(generators.size()));

    // isotropy: all pairwise pairings vanish identically
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            RatFn p = pairing(generators[i], generators[j]);
            if (!p.is_zero())
                throw Error(ErrorKind::NotIsotropic,
                            "<sigma_" + std::to_string(i + 1) + ", sigma_" + std::to_string(j + 1) +
                                "> = " + p.to_string());
        }

    // generic rank n over the fraction field
    std::vector<std::vector<RatFn>> rows;
    for (const auto& g : generators) rows.push_back(g.fiber_components());
    FMat m = FMat::from_rows(rows);
    if (m.rank() != n)
        throw Error(ErrorKind::RankDeficient, "generators have generic rank < dim M");
    Poly minor = m.pivot_minor();
    if (!minor.is_constant()) degeneracy_ = minor;

    gens_ = std::move(generators);

    // pointwise rank n at every declared sample
    Distribution dist = Distribution::pontryagin(chart_, gens_);
    for (const auto& p : samples) {
        if (eval_at(dist, p).rank() != n) {
            std::string pt;
            for (const auto& x : p) pt += rat_to_string(x) + " ";
            throw Error(ErrorKind::RankDeficient, "generator frame degenerates at sample (" + pt + ")");
        }
    }
}

IntegrabilityReport check_integrable(const DiracStructure& d) {
    IntegrabilityReport rep;
    rep.integrable = true;
    Distribution dist = d.as_distribution();
    const auto& gens = d.generators();
    for (std::size_t i = 0; i < gens.size(); ++i) {
        for (std::size_t j = i + 1; j < gens.size(); ++j) {
            BracketCheck chk;
            chk.i = i;
            chk.j = j;
            chk.bracket = courant_bracket(gens[i], gens[j]);
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
    }
    return rep;
}

DiracActionReport check_dirac_action(const DiracStructure& d, const GroupAction& a) {
    DiracActionReport rep;
    rep.invariant = true;
    Distribution dist = d.as_distribution();
    const auto& gens = d.generators();
    const auto& xis = a.fundamental_fields();
    for (std::size_t i = 0; i < gens.size(); ++i) {
        for (std::size_t k = 0; k < xis.size(); ++k) {
            DiracActionReport::Entry e;
            e.generator = i;
            e.xi = k;
            Section lie(lie_bracket(xis[k], gens[i].x), lie_derivative(xis[k], gens[i].alpha));
            auto r = membership_generic(lie, dist);
            if (std::holds_alternative<MembershipWitness>(r)) {
                e.member = true;
            } else {
                e.member = false;
                e.residual = std::get<NotMember>(r).residual.to_string();
                rep.invariant = false;
            }
            rep.entries.push_back(std::move(e));
        }
    }
    return rep;
}

DescendingSet verify_descending(const std::vector<DescendingSection>& candidates,
                                const DiracStructure& d, const GroupAction& a,
                                const std::vector<std::vector<Rat>>& samples) {
    DescendingSet out;
    Distribution dist = d.as_distribution();
    for (const auto& cand : candidates) {
        DescendingCheck chk;
        const Section& s = cand.section;

        chk.in_dirac = is_member_generic(s, dist);
        if (!chk.in_dirac) chk.detail += "not a section of D; ";

        chk.annihilates_vertical = true;
        for (const auto& xi : a.fundamental_fields()) {
            if (!s.alpha.apply(xi).is_zero()) {
                chk.annihilates_vertical = false;
                chk.detail += "cotangent part does not annihilate the vertical space; ";
                break;
            }
        }
        chk.form_invariant = a.is_invariant(s.alpha);
        if (!chk.form_invariant) chk.detail += "cotangent part is not invariant; ";

        chk.field_descends = a.is_descending(s.x, samples);
        if (!chk.field_descends) chk.detail += "[X, V] leaves the vertical distribution; ";

        OneForm assembled = OneForm::zero(d.chart());
        for (const auto& [g, f] : cand.presentation.pairs) {
            assembled = assembled + g * exterior_derivative(RatFn(f), d.chart());
        }
        chk.presentation_ok = cand.presentation.pairs.empty() ? s.alpha.is_zero()
                                                              : assembled == s.alpha;
        if (!chk.presentation_ok) chk.detail += "presentation does not assemble to alpha; ";

        if (chk.pass()) out.sections.push_back(cand);
        else out.all_passed = false;
        out.checks.push_back(std::move(chk));
    }
    return out;
}

ProbeReport spanning_hypothesis_probe(const DiracStructure& d, const Distribution& t,
                                      const Distribution& vg, const DescendingSet& ds,
                                      const std::vector<std::vector<Rat>>& samples) {
    require_same_chart(d.chart(), t.chart, "probe");
    require_same_chart(d.chart(), vg.chart, "probe");
    const std::size_t n = d.chart()->dim();
    ProbeReport rep;
    rep.spanned = true;
    Distribution dd = d.as_distribution();

    for (const auto& p : samples) {
        ProbeSample ps;
        ps.point = p;

        std::vector<std::vector<Rat>> dsvals;
        for (const auto& s : ds.sections) dsvals.push_back(s.section.fiber_at(p));
        ps.descending_dim = span_rank(dsvals);

        // T (+) V°_G fiber at p
        std::vector<std::vector<Rat>> tv;
        for (const auto& g : t.generators) tv.push_back(g.fiber_at(p));
        for (const auto& g : vg.generators) tv.push_back(g.fiber_at(p));
        auto dvals = eval_at(dd, p);
        auto tvspan = tv.empty() ? tv : QMat::from_rows(tv).row_basis();
        auto inter = span_intersect(dvals.basis, tvspan, 2 * n);
        ps.intersection_dim = inter.size();

        ps.equal = ps.descending_dim == ps.intersection_dim;
        if (!ps.equal) rep.spanned = false;
        rep.samples.push_back(std::move(ps));
    }
    return rep;
}

namespace {

// Solutions with a prescribed zero part: solve sum c_i sigma_i = target
// where target constrains only half of the fiber. `zero_alpha` selects
// whether the constrained-to-zero half is the form part (for G0) or the
// field part (for P0).
Distribution zero_part_distribution(const DiracStructure& d, bool zero_alpha) {
    const std::size_t n = d.chart()->dim();
    const auto& gens = d.generators();
    // kernel of the half we require to vanish
    std::vector<std::vector<RatFn>> rows(n, std::vector<RatFn>(gens.size(), RatFn(d.chart())));
    for (std::size_t j = 0; j < gens.size(); ++j) {
        auto comps = gens[j].fiber_components();
        for (std::size_t i = 0; i < n; ++i) rows[i][j] = comps[(zero_alpha ? n : 0) + i];
    }
    auto ker = FMat::from_rows(rows).kernel();
    std::vector<Section> out;
    for (const auto& c : ker) {
        Section s = Section::zero(d.chart());
        for (std::size_t j = 0; j < gens.size(); ++j) {
            if (c[j].is_zero()) continue;
            s = s + c[j] * gens[j];
        }
        if (!s.is_zero()) out.push_back(std::move(s));
    }
    Distribution dist = Distribution::pontryagin(d.chart(), out);
    dist.kind = zero_alpha ? DistKind::Tangent : DistKind::Cotangent;
    dist.generic_only = true;
    return dist;
}

} // namespace

Distribution gauge_distribution(const DiracStructure& d) {
    return zero_part_distribution(d, /*zero_alpha=*/true);
}

Distribution p0_distribution(const DiracStructure& d) {
    return zero_part_distribution(d, /*zero_alpha=*/false);
}

Distribution g1_distribution(const DiracStructure& d) {
    std::vector<VectorField> fields;
    for (const auto& g : d.generators())
        if (!g.x.is_zero()) fields.push_back(g.x);
    Distribution dist = Distribution::tangent(d.chart(), fields);
    dist.generic_only = true;
    return dist;
}

Distribution p1_distribution(const DiracStructure& d) {
    std::vector<OneForm> forms;
    for (const auto& g : d.generators())
        if (!g.alpha.is_zero()) forms.push_back(g.alpha);
    Distribution dist = Distribution::cotangent(d.chart(), forms);
    dist.generic_only = true;
    return dist;
}

} // namespace diracred
