#ifndef DIRACRED_CORE_DYNAMICS_HPP
#define DIRACRED_CORE_DYNAMICS_HPP

#include "reduction.hpp"

namespace diracred {

/// Solution of the implicit Hamiltonian system (X_f, df) in Gamma(D).
/// The canonical X_f sets all free solve variables to zero under the
/// generator order; `gauge` documents the full ambiguity X_f + G0.
struct HamiltonianSolution {
    Poly f;
    VectorField xf;
    Distribution gauge;
    std::vector<RatFn> witness; // coefficients of (X_f, df) on the generators
};

struct NotAdmissible {
    Poly f;
    OneForm residual; // the unmatched part of df
};

using AdmissibleResult = std::variant<HamiltonianSolution, NotAdmissible>;

/// Solves sum c_i alpha_i = df on the one-form rows first, then reads off
/// X_f = sum c_i X_i.
AdmissibleResult solve_admissible(const Poly& f, const DiracStructure& d);

/// Generic frame variant used for reduced structures on a stratum.
struct FrameAdmissibleResult {
    bool admissible = false;
    VectorField xf;          // valid when admissible
    std::vector<RatFn> witness;
    std::string residual;
};
FrameAdmissibleResult solve_admissible_frame(const Poly& f, const std::vector<Section>& frame,
                                             const ChartPtr& chart);

/// Averages the Hamiltonian field of an invariant admissible function into
/// an invariant solution; membership is re-verified exactly.
HamiltonianSolution invariant_hamiltonian(const Poly& f, const DiracStructure& d,
                                          const GroupAction& a);

/// Pushforward + restriction of an invariant solution, certified by
/// membership against the reduced structure (MembershipFailure would mean a
/// scene inconsistency, the theorem guarantees it).
struct ReducedHamiltonian {
    Section section;              // (X_P, d f_P) on the params chart
    Poly f_reduced;               // f_P
    std::vector<RatFn> witness;
};
ReducedHamiltonian reduce_hamiltonian(const HamiltonianSolution& sol, const GroupAction& a,
                                      const QuotientMap& q, const ReducedDirac& rd, int bound);

} // namespace diracred

#endif
