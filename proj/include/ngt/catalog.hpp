#ifndef NGT_CATALOG_HPP
#define NGT_CATALOG_HPP

#include <string>
#include <vector>

#include "ngt/function.hpp"

namespace ngt {

// Built-in named functions used by the CLI (catalog:NAME), the scenarios and
// the test suite. Every entry is deterministic; entries with declared ledgers
// mark them complete only when the list provably is.
std::vector<std::string> catalog_names();
PuncturedFunction catalog_function(const std::string& name);

// 1/f: closed form wrapped in a division, ledger zeros and poles swapped
// (completeness flags travel with them). Requires a closed form.
PuncturedFunction reciprocal(const PuncturedFunction& f);

} // namespace ngt

#endif
