#ifndef DIRACRED_CORE_DISTRIBUTION_HPP
#define DIRACRED_CORE_DISTRIBUTION_HPP

#include <variant>

#include "geometry.hpp"
#include "linalg.hpp"

namespace diracred {

enum class DistKind { Tangent, Cotangent, Pontryagin };

/// Finitely generated generalized subdistribution of TM, T*M, or the
/// Pontryagin bundle, given by generating sections. Tangent generators carry
/// a zero one-form part, cotangent generators a zero vector part.
struct Distribution {
    ChartPtr chart;
    DistKind kind = DistKind::Pontryagin;
    std::vector<Section> generators;
    /// Set when the generators came out of a fraction-field computation:
    /// exact on the open dense locus of generic rank only.
    bool generic_only = false;

    static Distribution tangent(const ChartPtr& c, const std::vector<VectorField>& fields);
    static Distribution cotangent(const ChartPtr& c, const std::vector<OneForm>& forms);
    static Distribution pontryagin(const ChartPtr& c, std::vector<Section> sections);

    std::size_t fiber_dim() const { return 2 * chart->dim(); }
    /// Union of the two distributions' generators (same chart).
    friend Distribution operator+(const Distribution& a, const Distribution& b);
};

/// Exact basis of a fiber subspace at a rational point.
struct PointSubspace {
    std::vector<Rat> point;
    std::vector<std::vector<Rat>> basis; // row-reduced, linearly independent

    std::size_t rank() const { return basis.size(); }
    bool contains(const std::vector<Rat>& v) const;
    bool equals(const PointSubspace& o) const;
};

/// Fiber of the distribution at p: row-reduced basis of span{sigma_i(p)}.
/// DenominatorVanishes names the offending generator.
PointSubspace eval_at(const Distribution& d, const std::vector<Rat>& p);

/// Kernel of the pairing against eval_at(d, p), computed exactly in the
/// full Pontryagin fiber. For tangent/cotangent kinds this is the embedded
/// pointwise annihilator TM (+) T^ann resp. C^ann (+) T*M.
PointSubspace pointwise_orthogonal_at(const Distribution& d, const std::vector<Rat>& p);

/// Orthogonal over the fraction field Q(x1..xn), denominators cleared to
/// polynomial sections. Valid on the open dense locus of generic rank; the
/// result carries generic_only = true.
Distribution generic_orthogonal(const Distribution& d);

/// Generic rank over Q(x).
std::size_t generic_rank(const Distribution& d);

struct MembershipWitness {
    std::vector<RatFn> coefficients; // sum c_i sigma_i = s
};

struct NotMember {
    Section residual; // s - best consistent combination, nonzero
};

using MembershipResult = std::variant<MembershipWitness, NotMember>;

/// Solves sum c_i sigma_i = s over Q(x).
MembershipResult membership_generic(const Section& s, const Distribution& d);
bool is_member_generic(const Section& s, const Distribution& d);

/// Pointwise membership of the section's value in the evaluated fiber.
bool is_member_at(const Section& s, const Distribution& d, const std::vector<Rat>& p);

/// Evaluates the four equivalent conditions of the subbundle-intersection
/// proposition at the given samples. Inputs must be subbundles (constant
/// pointwise rank equal to the generic rank at every sample; NotASubbundle
/// otherwise).
struct IntersectionReport {
    bool smooth_proxy = false;        // generic rank of the intersection attained at each sample
    bool sum_orthogonal = false;      // (D1+D2)^perp = D1^perp ∩ D2^perp at samples
    bool double_orthogonal = false;   // (D1^perp ∩ D2^perp)^perp = D1+D2 at samples
    bool constant_rank = false;       // intersection rank constant across samples
    bool consistent = false;          // all four agree (all true or all false)
    std::vector<std::size_t> intersection_ranks;
    std::string detail;
};

IntersectionReport intersection_report(const Distribution& d1, const Distribution& d2,
                                       const std::vector<std::vector<Rat>>& samples);

} // namespace diracred

#endif
