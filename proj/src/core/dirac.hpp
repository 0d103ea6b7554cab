#ifndef DIRACRED_CORE_DIRAC_HPP
#define DIRACRED_CORE_DIRAC_HPP

#include "action.hpp"

namespace diracred {

/// Validated Dirac structure: exactly n = dim(chart) generators, pairwise
/// pairings identically zero, generic rank n over Q(x), and rank n at every
/// declared sample point. Over-complete presentations are normalized at
/// construction by fraction-field row reduction.
class DiracStructure {
public:
    DiracStructure(const ChartPtr& chart, std::vector<Section> generators,
                   const std::vector<std::vector<Rat>>& samples);

    const ChartPtr& chart() const { return chart_; }
    const std::vector<Section>& generators() const { return gens_; }
    Distribution as_distribution() const { return Distribution::pontryagin(chart_, gens_); }

    /// Non-constant Bareiss pivot minor: the frame may degenerate on its
    /// vanishing locus (away from the certified samples).
    const std::optional<Poly>& degeneracy_warning() const { return degeneracy_; }

private:
    ChartPtr chart_;
    std::vector<Section> gens_;
    std::optional<Poly> degeneracy_;
};

struct BracketCheck {
    std::size_t i = 0, j = 0;  // generator pair (0-based)
    bool member = false;
    Section bracket;
    std::vector<RatFn> witness; // coefficients when member
    std::string residual;       // printed residual otherwise
};

struct IntegrabilityReport {
    bool integrable = false;
    std::vector<BracketCheck> checks;
};

/// [Gamma(D), Gamma(D)] subset Gamma(D), checked on all generator pairs with
/// the Courant bracket and generic membership; witnesses retained.
IntegrabilityReport check_integrable(const DiracStructure& d);

struct DiracActionReport {
    bool invariant = false;
    // one entry per (generator, fundamental field) pair
    struct Entry {
        std::size_t generator = 0, xi = 0;
        bool member = false;
        std::string residual;
    };
    std::vector<Entry> entries;
};

/// For every generator (X, a) and fundamental field xi:
/// (L_xi X, L_xi a) must lie in Gamma(D).
DiracActionReport check_dirac_action(const DiracStructure& d, const GroupAction& a);

/// One-form presentation sum_j g_j d f_j with invariant g_j, f_j.
struct OneFormPresentation {
    std::vector<std::pair<RatFn, Poly>> pairs;
};

struct DescendingSection {
    Section section;
    OneFormPresentation presentation;
};

struct DescendingCheck {
    bool in_dirac = false;        // membership in Gamma(D)
    bool annihilates_vertical = false;
    bool form_invariant = false;
    bool field_descends = false;
    bool presentation_ok = false; // assembled presentation equals alpha
    bool pass() const {
        return in_dirac && annihilates_vertical && form_invariant && field_descends &&
               presentation_ok;
    }
    std::string detail;
};

struct DescendingSet {
    std::vector<DescendingSection> sections; // the passing candidates
    std::vector<DescendingCheck> checks;     // one per input candidate, in order
    bool all_passed = true;
};

/// Certifies each candidate as a descending section of D:
///  (i) membership in Gamma(D), (ii) alpha annihilates the vertical space and
/// is invariant, (iii) [X, Gamma(V)] subset Gamma(V), and (iv) the declared
/// presentation assembles to alpha. Failing candidates are reported and
/// excluded from the result.
DescendingSet verify_descending(const std::vector<DescendingSection>& candidates,
                                const DiracStructure& d, const GroupAction& a,
                                const std::vector<std::vector<Rat>>& samples);

struct ProbeSample {
    std::vector<Rat> point;
    std::size_t descending_dim = 0;
    std::size_t intersection_dim = 0;
    bool equal = false;
};

struct ProbeReport {
    bool spanned = false; // conjunction over samples
    std::vector<ProbeSample> samples;
};

/// Reduction-hypothesis probe: at each sample m compare
/// dim span{s(m) : s descending} with dim D(m) ∩ (T (+) V°_G)(m).
ProbeReport spanning_hypothesis_probe(const DiracStructure& d, const Distribution& t,
                                      const Distribution& vg, const DescendingSet& ds,
                                      const std::vector<std::vector<Rat>>& samples);

/// G0 = fields X with (X, 0) in Gamma(D); generic computation.
Distribution gauge_distribution(const DiracStructure& d);
/// G1 = tangent projections, P0 = forms with (0, a) in Gamma(D),
/// P1 = cotangent projections.
Distribution g1_distribution(const DiracStructure& d);
Distribution p0_distribution(const DiracStructure& d);
Distribution p1_distribution(const DiracStructure& d);

} // namespace diracred

#endif
