#ifndef DIRACRED_CORE_ENGINE_HPP
#define DIRACRED_CORE_ENGINE_HPP

#include <cstdint>

#include "scene.hpp"
#include "scene_file.hpp"

namespace diracred {

struct EngineOptions {
    int bound = 4;              // re-expression degree bound
    std::string stratum;        // restrict reduce/hamiltonian to one stratum
    std::uint64_t seed = 1;     // random sample generation
    int extra_samples = 0;      // additional probe samples
    std::string hamiltonian;    // `hamiltonian` command: the function f
    std::string average_expr;   // `average` command: optional extra function
    std::string field;          // `flow`: "tg:K", "vertical:K", or "e1,e2,..."
    std::string start;          // `flow`: comma-separated rational start point
    double time = 1.0;          // `flow`: total time
    int steps = 1000;           // `flow`: RK4 step count
};

/// `builtin:NAME` or a scene file path.
Scene resolve_scene(const std::string& ref);

/// command in {check, reduce, bracket, average, hamiltonian, probe, flow}.
Report run_command(const Scene& scene, const std::string& command, const EngineOptions& opt);

struct FlowResult {
    std::vector<std::vector<double>> trajectory; // steps+1 points, first = start
    bool aborted = false;                        // denominator approached zero
    std::size_t steps_taken = 0;
    // max |membership polynomial| along the trajectory, for each stratum
    // whose membership polynomials vanish exactly at the start point
    std::vector<std::pair<std::string, double>> drift;
};

/// Classic fixed-step fourth-order Runge-Kutta on a polynomial/rational
/// vector field, with the stratum-preservation drift check. Numeric and
/// strictly advisory.
FlowResult flow_numeric(const VectorField& x, const std::vector<Rat>& start, double t, int steps,
                        const std::vector<StratumChart>& strata);

/// Deterministic random rational points that avoid the denominators of the
/// scene's generators.
std::vector<std::vector<Rat>> random_rational_samples(const Scene& s, std::uint64_t seed,
                                                      int count);

} // namespace diracred

#endif
