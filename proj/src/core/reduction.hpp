#ifndef DIRACRED_CORE_REDUCTION_HPP
#define DIRACRED_CORE_REDUCTION_HPP

#include "dirac.hpp"

namespace diracred {

/// pi : M -> target chart, one coordinate per invariant basis element.
struct QuotientMap {
    ChartPtr source;
    ChartPtr target;
    InvariantBasis basis;

    QuotientMap(ChartPtr src, ChartPtr tgt, InvariantBasis b);

    /// pi(p), exact.
    std::vector<Rat> project(const std::vector<Rat>& p) const;
    /// pullback of a target polynomial: q(f_1, ..., f_k) as a source Poly.
    Poly pullback(const Poly& q) const;
    RatFn pullback(const RatFn& q) const;
};

enum class ConstraintRel { Greater, GreaterEq, Equal, NotEqual };

struct StratumConstraint {
    Poly lhs; // on the params chart; compared against 0
    ConstraintRel rel = ConstraintRel::Equal;

    bool satisfied(const std::vector<Rat>& p) const;
};

/// Scene-declared chart of one stratum of the orbit space: intrinsic
/// parameters, their embedding into the invariant coordinates, sampling
/// constraints, and upstairs sample points projecting into the stratum.
struct StratumChart {
    std::string name;
    ChartPtr params;
    std::vector<RatFn> embedding;                 // one entry per target coordinate
    std::vector<StratumConstraint> constraints;   // on params
    std::vector<std::vector<Rat>> upstairs_samples;
    /// Optional equality polynomials on the source chart cutting out (the
    /// closure of) the stratum's preimage; used by the numeric flow probe.
    std::vector<Poly> upstairs_membership;

    /// params coordinates of pi(upstairs point); requires the embedding to
    /// contain each params coordinate as a plain entry (a coordinate graph).
    std::vector<Rat> params_of_upstairs(const QuotientMap& q, const std::vector<Rat>& up) const;
    std::vector<std::vector<Rat>> downstairs_samples(const QuotientMap& q) const;

    void validate(const QuotientMap& q) const;
};

/// Exact representation of p as a polynomial in the invariant basis, found
/// by a bounded-degree linear ansatz over Q. The bound is scanned from 0
/// upward so the representative of least invariant-degree is returned
/// (deterministic even in the presence of basis syzygies).
std::optional<Poly> reexpress(const Poly& p, const QuotientMap& q, int degree_bound);

/// Pushforward of an invariant polynomial: f_bar with f_bar o pi = f,
/// verified by substitution. NotInvariant / NotExpressibleAtBound.
Poly pushforward_function(const Poly& f, const QuotientMap& q, int bound);
RatFn pushforward_function(const RatFn& f, const QuotientMap& q, int bound);

/// Pushforward of a descending vector field: X_bar = sum reexpress(X(f_i)) d/df_i,
/// with the defining identity (X_bar(f_bar)) o pi = X(f_bar o pi) verified
/// exactly for every target coordinate.
VectorField pushforward_vf(const VectorField& x, const GroupAction& a, const QuotientMap& q,
                           int bound, const std::vector<std::vector<Rat>>& samples);

/// Pushforward of a one-form through its invariant presentation
/// sum g_j d f_j: the result is sum g_j_bar d f_j_bar on the target.
/// PresentationMismatch when the presentation does not assemble to the form.
OneForm pushforward_oneform(const OneForm& alpha, const OneFormPresentation& pres,
                            const GroupAction& a, const QuotientMap& q, int bound);

/// Restriction of a target-chart section to a stratum chart: solves the
/// embedding-Jacobian system for the field (NotTangentToStratum when
/// inconsistent) and pulls the form back through the embedding.
Section restrict_to_stratum(const Section& s, const StratumChart& st, const QuotientMap& q);

/// Reduced Dirac structure on one stratum.
struct ReducedDirac {
    StratumChart stratum;
    std::vector<Section> generators;            // on the params chart
    std::vector<std::size_t> provenance;        // index into the descending set
    bool isotropic = false;
    std::size_t generic_rank_value = 0;
    bool rank_certified = false;                // = dim(params) at the downstairs samples
    std::optional<IntegrabilityReport> integrability; // run when upstairs D is integrable

    Distribution as_distribution() const {
        return Distribution::pontryagin(stratum.params, generators);
    }
};

/// Pushes every descending section down and restricts it to the stratum,
/// then validates the result as a Dirac structure on the stratum: pairwise
/// pairings vanish identically, generic rank = dim(params), rank certified
/// at the downstairs samples, and (when upstairs_integrable) bracket
/// closure of the reduced frame.
ReducedDirac reduced_dirac(const DescendingSet& ds, const GroupAction& a, const QuotientMap& q,
                           const StratumChart& st, int bound, bool upstairs_integrable);

/// Module equality by mutual exact membership over the fraction field.
bool module_equal(const std::vector<Section>& a, const std::vector<Section>& b,
                  const ChartPtr& chart);

} // namespace diracred

#endif
