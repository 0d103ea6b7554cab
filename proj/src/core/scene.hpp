#ifndef DIRACRED_CORE_SCENE_HPP
#define DIRACRED_CORE_SCENE_HPP

#include "dynamics.hpp"
#include "report.hpp"

namespace diracred {

/// Golden data carried by the built-in scenes: reduced generator frames,
/// pushforward formulas, bracket identities, probe verdicts, and pointwise
/// one-form relations.
struct SceneExpected {
    // stratum name -> expected reduced frame on that stratum's params chart
    std::vector<std::pair<std::string, std::vector<Section>>> reduced;

    // fields and their expected pushforwards to the quotient, in the order
    // of the scene's spanning family
    std::vector<VectorField> pushforward_fields;
    std::vector<VectorField> pushforwards;

    // declared integrability verdict; absent for user scenes
    std::optional<bool> integrable;
    // expected failing pair when not integrable (0-based generator indices)
    std::optional<std::pair<std::size_t, std::size_t>> failing_pair;

    enum class Probe { Pass, Fail, NotChecked } probe = Probe::NotChecked;

    // exact bracket identity on a golden reduced frame:
    // courant(gen[i], gen[j]) == sum_k coeff_k * section_k
    struct BracketIdentity {
        std::string stratum;
        std::size_t i = 0, j = 0;
        std::vector<std::pair<RatFn, Section>> combination;
        std::string label;
    };
    std::vector<BracketIdentity> bracket_identities;

    // pointwise one-form identity lhs = rhs at the given source points
    struct Relation {
        std::string label;
        OneForm lhs, rhs;
        std::vector<std::vector<Rat>> points;
    };
    std::vector<Relation> relations;
};

/// A full problem statement: chart, action, invariant basis (inside the
/// quotient map), Dirac structure, declared descending sections, declared
/// invariant generators of T_G, strata, and sample points.
struct Scene {
    std::string name;
    ChartPtr chart;
    GroupAction action;
    QuotientMap quotient;
    DiracStructure dirac;
    std::vector<DescendingSection> descending;
    std::vector<VectorField> declared_fields;
    std::vector<StratumChart> strata;
    std::vector<std::vector<Rat>> samples;
    SceneExpected expected;
};

/// Built-in, golden-tested example scenes plus two bundled counterexample
/// scenes. UnknownScene for anything else.
Scene builtin_scene(const std::string& name);
const std::vector<std::string>& builtin_scene_names();

/// Structural equality of the declared scene data (golden expectations are
/// not compared; file scenes do not carry them).
bool scene_equivalent(const Scene& a, const Scene& b);

/// Runs every applicable check and returns the structured pass/fail tree.
ReportNode validate_scene(const Scene& s, int bound = 4);

} // namespace diracred

#endif
