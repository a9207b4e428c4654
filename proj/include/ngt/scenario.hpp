#ifndef NGT_SCENARIO_HPP
#define NGT_SCENARIO_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ngt/growth.hpp"
#include "ngt/ode.hpp"

namespace ngt {

enum class TheoremId { T1, T2, T3, T4, T5, T6, T7, L5, L6, L16 };

std::string theorem_name(TheoremId t);

// A concrete verification instance: an equation with a known witness solution
// f (manufactured or solved), the dominant slot s, and the measurement plan.
// Controls are scenarios whose hypotheses are designed to fail.
struct Scenario {
    std::string id;
    TheoremId theorem = TheoremId::T1;
    long k = 2;
    long s = 0;
    std::vector<PuncturedFunction> coefficients;  // A_0 .. A_{k-1}
    std::optional<PuncturedFunction> f;           // witness; solved from ode if absent
    std::optional<PuncturedFunction> phi;    // Theorems 1-2 comparison function
    std::optional<PuncturedFunction> F_rhs;  // L16 nonhomogeneous right side
    std::optional<OdeSpec> ode;              // present when solve_series applies
    bool expect_hypotheses_met = true;
    bool with_oscillation = false;

    RadiusGrid coeff_grid{2.2, 4.2, 22};
    RadiusGrid f_grid{2.4, 3.6, 20};
    RadiusGrid osc_grid{0.95, 1.6, 16};
    QuadratureConfig quad{256, 20, 1e-4};
    double tolerance = 0.15;
    double hypothesis_margin = 0.05;
    std::vector<std::string> expected;  // conclusion inequalities, human-readable
};

struct Check {
    std::string name;
    double lhs = 0.0, rhs = 0.0;  // evaluated as lhs <= rhs (tolerance folded in)
    bool pass = false;
    bool marginal = false;  // pass with less than 0.02 to spare
};

enum class Overall { Pass, Fail, HypothesisNotMet };

struct Verdict {
    std::string id;
    Overall overall = Overall::Fail;
    bool matches_design = false;  // controls are designed to stop at hypotheses
    std::map<std::string, double> measured;
    std::vector<Check> hypothesis_checks;
    std::vector<Check> conclusion_checks;
    std::string note;
};

struct OscillationResult {
    double lambda = 0.0;                // lambda_{[2,2]} estimate from windings
    std::optional<double> lambda_bar;   // distinct-count variant; needs a ledger
    GrowthTable counts;                 // the N_{z0}(r, 1/g) column as evidence
};

// g = f - phi (phi may be null); zero counts on nested annuli assembled into
// N_{z0}(r, 1/g) and run through the [2,2] order estimator.
OscillationResult check_oscillation(const PuncturedFunction& f, const PuncturedFunction* phi,
                                    const RadiusGrid& grid, const QuadratureConfig& quad);

// One satisfying scenario per theorem plus hypothesis-violating controls for
// T1 and T6. Deterministic.
std::vector<Scenario> builtin_scenarios();
Scenario builtin_scenario(const std::string& id);

Verdict run_scenario(const Scenario& sc);

std::string verdict_to_json(const Verdict& v);
std::string verdict_summary_line(const Verdict& v);

// Serialization of the solver-facing part of a scenario (golden-file format).
std::string ode_spec_to_json(const OdeSpec& ode);

} // namespace ngt

#endif
