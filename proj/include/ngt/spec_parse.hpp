#ifndef NGT_SPEC_PARSE_HPP
#define NGT_SPEC_PARSE_HPP

#include <string>

#include "ngt/function.hpp"
#include "ngt/nevanlinna.hpp"
#include "ngt/ode.hpp"
#include "ngt/scenario.hpp"

namespace ngt {

// Function-spec documents (JSON). Fields: z0 = [re, im]; closed_form =
// expression string over w (S names the bound series); series.generator in
// {explicit, gaussian, polynomial, lacunary} with generator parameters;
// kind; name; ledger.{zeros,poles} as {re, im, mult} plus completeness flags.
// Construction cross-checks the representations and verifies declared ledgers
// by argument-principle counts (verify_ledger below).
PuncturedFunction parse_function_spec(const std::string& json_text);

// Argument-principle verification of a declared ledger: a small winding
// contour around each entry must report exactly +-mult, and when both lists
// are complete the count on |w| = 1 must match the enclosed entries. Entries
// whose verification circle lies beyond the reliable radius are skipped.
void verify_ledger(const PuncturedFunction& f, const QuadratureConfig& cfg = {});

// ODE documents: {k, s, terms, z0, initial: [[log_mag, arg] | []],
// coefficients: [{name, coeffs: [...]} | function-spec]}. The [log_mag, arg]
// pairs are log-domain; [] encodes zero. Round-trips with ode_spec_to_json.
OdeSpec parse_ode_spec(const std::string& json_text);

// Scenario documents: {builtin: id} with optional overrides of tolerance,
// hypothesis_margin, quadrature points and the three grids.
Scenario parse_scenario_doc(const std::string& json_text);

} // namespace ngt

#endif
