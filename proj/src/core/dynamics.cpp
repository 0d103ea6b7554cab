#include "dynamics.hpp"

namespace diracred {

namespace {

// Solve sum_j c_j alpha_j = target over Q(x); returns (coefficients, ok).
std::pair<std::vector<RatFn>, bool> solve_form_rows(const std::vector<Section>& gens,
                                                    const OneForm& target,
                                                    const ChartPtr& chart) {
    const std::size_t n = chart->dim();
    FMat m(n, gens.size(), chart);
    for (std::size_t j = 0; j < gens.size(); ++j)
        for (std::size_t i = 0; i < n; ++i) m.at(i, j) = gens[j].alpha.components[i];
    return m.solve_detailed(target.components);
}

VectorField combine_fields(const std::vector<Section>& gens, const std::vector<RatFn>& c,
                           const ChartPtr& chart) {
    VectorField x = VectorField::zero(chart);
    for (std::size_t j = 0; j < gens.size(); ++j) {
        if (c[j].is_zero()) continue;
        x = x + c[j] * gens[j].x;
    }
    return x;
}

} // namespace

AdmissibleResult solve_admissible(const Poly& f, const DiracStructure& d) {
    require_same_chart(f.chart(), d.chart(), "admissible function");
    OneForm df = exterior_derivative(RatFn(f), d.chart());
    auto [c, ok] = solve_form_rows(d.generators(), df, d.chart());
    if (!ok) {
        OneForm best = OneForm::zero(d.chart());
        for (std::size_t j = 0; j < d.generators().size(); ++j) {
            if (c[j].is_zero()) continue;
            best = best + c[j] * d.generators()[j].alpha;
        }
        return NotAdmissible{f, df - best};
    }
    HamiltonianSolution sol;
    sol.f = f;
    sol.xf = combine_fields(d.generators(), c, d.chart());
    sol.witness = std::move(c);
    sol.gauge = gauge_distribution(d);
    return sol;
}

FrameAdmissibleResult solve_admissible_frame(const Poly& f, const std::vector<Section>& frame,
                                             const ChartPtr& chart) {
    FrameAdmissibleResult out;
    OneForm df = exterior_derivative(RatFn(f), chart);
    if (frame.empty()) {
        out.admissible = df.is_zero();
        out.xf = VectorField::zero(chart);
        if (!out.admissible) out.residual = df.to_string();
        return out;
    }
    auto [c, ok] = solve_form_rows(frame, df, chart);
    out.admissible = ok;
    if (ok) {
        out.xf = combine_fields(frame, c, chart);
        out.witness = std::move(c);
    } else {
        OneForm best = OneForm::zero(chart);
        for (std::size_t j = 0; j < frame.size(); ++j) {
            if (c[j].is_zero()) continue;
            best = best + c[j] * frame[j].alpha;
        }
        out.residual = (df - best).to_string();
    }
    return out;
}

HamiltonianSolution invariant_hamiltonian(const Poly& f, const DiracStructure& d,
                                          const GroupAction& a) {
    auto cert = a.invariance(RatFn(f));
    if (!cert.invariant)
        throw Error(ErrorKind::NotInvariant,
                    "hamiltonian " + f.to_string() + " is not invariant (residual " +
                        cert.residuals.front().second + ")");
    auto r = solve_admissible(f, d);
    auto* sol = std::get_if<HamiltonianSolution>(&r);
    if (!sol) {
        throw Error(ErrorKind::InvalidArgument,
                    "function " + f.to_string() + " is not admissible (residual " +
                        std::get<NotAdmissible>(r).residual.to_string() + ")");
    }
    sol->xf = a.average(sol->xf);
    // D is G-invariant, so the averaged pair stays a section of D
    Section pair(sol->xf, exterior_derivative(RatFn(f), d.chart()));
    auto member = membership_generic(pair, d.as_distribution());
    auto* w = std::get_if<MembershipWitness>(&member);
    if (!w)
        throw Error(ErrorKind::MembershipFailure,
                    "averaged hamiltonian field left Gamma(D); the structure is not invariant");
    sol->witness = w->coefficients;
    return *sol;
}

ReducedHamiltonian reduce_hamiltonian(const HamiltonianSolution& sol, const GroupAction& a,
                                      const QuotientMap& q, const ReducedDirac& rd, int bound) {
    auto inv = a.invariance(sol.xf);
    if (!inv.invariant)
        throw Error(ErrorKind::NotInvariant, "hamiltonian field is not invariant; average it first");

    VectorField xb = pushforward_vf(sol.xf, a, q, bound, rd.stratum.upstairs_samples);
    Poly fb = pushforward_function(sol.f, q, bound);
    Section down(xb, exterior_derivative(RatFn(fb), q.target));
    Section restricted = restrict_to_stratum(down, rd.stratum, q);

    ReducedHamiltonian out;
    out.section = restricted;
    // f restricted to the stratum through the embedding
    RatFn fr = RatFn(fb).substitute(rd.stratum.params, rd.stratum.embedding);
    if (!fr.is_polynomial())
        throw Error(ErrorKind::Internal, "restricted hamiltonian is not polynomial");
    out.f_reduced = fr.as_polynomial();

    // the restriction of d(f_bar) through the embedding is d(f_restricted)
    OneForm check = exterior_derivative(RatFn(out.f_reduced), rd.stratum.params);
    if (!(check == restricted.alpha))
        throw Error(ErrorKind::Internal, "pullback of d f_bar disagrees with d of the pullback");

    auto member = membership_generic(restricted, rd.as_distribution());
    auto* w = std::get_if<MembershipWitness>(&member);
    if (!w)
        throw Error(ErrorKind::MembershipFailure,
                    "reduced hamiltonian pair is not a section of the reduced structure; "
                    "scene data is inconsistent with the reduction theorem");
    out.witness = w->coefficients;
    return out;
}

} // namespace diracred
