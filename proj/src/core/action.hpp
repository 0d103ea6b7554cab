#ifndef DIRACRED_CORE_ACTION_HPP
#define DIRACRED_CORE_ACTION_HPP

#include "distribution.hpp"
#include "trig.hpp"

namespace diracred {

enum class GroupKind { Trivial, Circle, Torus, SO3 };

struct InvarianceCertificate {
    bool invariant = true;
    // (generator index, residual printed) for each failing Lie derivative
    std::vector<std::pair<std::size_t, std::string>> residuals;
};

struct DescendingCertificate {
    bool descending = true;
    // per fundamental field: generic membership of [X, xi] in the vertical
    // distribution, plus pointwise certification at the given samples
    std::vector<bool> generic_ok;
    std::vector<bool> pointwise_ok;
    std::string detail;
};

/// Compact group action on a chart: fundamental vector fields plus an exact
/// averaging specification. The action map is a matrix A(theta) of
/// trigonometric polynomials acting linearly on the coordinates; A is
/// orthogonal, A(0) = I, and the angle derivatives at zero recover the
/// fundamental fields (for SO(3), up to the bracket closure of the Euler
/// parametrization). Haar weight is normalized to integrate to 1.
class GroupAction {
public:
    static GroupAction trivial(const ChartPtr& chart);
    /// One unit-speed rotation generator: linear field with matrix M,
    /// M^3 = -M; the action map is exp(theta M).
    static GroupAction circle(const ChartPtr& chart, const VectorField& generator);
    /// Commuting unit-speed rotation generators, one angle each.
    static GroupAction torus(const ChartPtr& chart, const std::vector<VectorField>& generators);
    /// Diagonal SO(3) action on R^3 x ... x R^3 via z-x-z Euler angles with
    /// Haar weight sin(beta)/(8 pi^2). The three generators must span the
    /// standard infinitesimal rotations.
    static GroupAction so3_diagonal(const ChartPtr& chart, const std::vector<VectorField>& generators);

    const ChartPtr& chart() const { return chart_; }
    GroupKind kind() const { return kind_; }
    const std::vector<VectorField>& fundamental_fields() const { return liegen_; }
    const std::vector<AngleSpec>& angles() const { return angles_; }
    const TrigPoly& haar_weight() const { return haar_; }
    const std::vector<std::vector<TrigPoly>>& action_matrix() const { return matrix_; }

    Distribution vertical_distribution() const;

    InvarianceCertificate invariance(const RatFn& f) const;
    InvarianceCertificate invariance(const VectorField& x) const;
    InvarianceCertificate invariance(const OneForm& a) const;
    template <typename T>
    bool is_invariant(const T& obj) const { return invariance(obj).invariant; }

    /// [X, Gamma(V)] subset Gamma(V), tested per fundamental field by
    /// generic membership and certified pointwise at the samples.
    DescendingCertificate descending(const VectorField& x,
                                     const std::vector<std::vector<Rat>>& samples) const;
    bool is_descending(const VectorField& x,
                       const std::vector<std::vector<Rat>>& samples) const {
        return descending(x, samples).descending;
    }

    /// Exact G-average. Components need an invariant denominator (already
    /// invariant inputs are returned unchanged). The result is certified
    /// invariant before it is returned.
    RatFn average(const RatFn& f) const;
    VectorField average(const VectorField& x) const;
    OneForm average(const OneForm& a) const;

    /// Pullback of f under the action map at symbolic angles, as a trig
    /// polynomial: f(A(theta) x). Requires a polynomial argument.
    TrigPoly pullback_trig(const Poly& f) const;

private:
    GroupAction() = default;
    void validate_against_map();

    ChartPtr chart_;
    GroupKind kind_ = GroupKind::Trivial;
    std::vector<VectorField> liegen_;
    std::vector<AngleSpec> angles_;
    std::vector<std::vector<TrigPoly>> matrix_; // action map, row i: image of x_i
    TrigPoly haar_;
};

/// Hilbert basis of invariant polynomials, validated at construction:
/// every f satisfies xi_M(f) = 0 for all fundamental fields.
struct InvariantBasis {
    std::vector<Poly> fns;

    InvariantBasis() = default;
    InvariantBasis(const GroupAction& action, std::vector<Poly> fs);
};

/// V°_G = span{df : f in the invariant basis}, each df certified to
/// annihilate every fundamental field identically.
Distribution invariant_codistribution(const GroupAction& a, const InvariantBasis& b);

/// T = span(declared invariant fields  ∪  fundamental fields) and
/// T_G = span(declared invariant fields). NotInvariant when a declared field
/// fails the invariance check.
std::pair<Distribution, Distribution> descending_tangent(
    const GroupAction& a, const std::vector<VectorField>& declared_invariant_fields);

} // namespace diracred

#endif
