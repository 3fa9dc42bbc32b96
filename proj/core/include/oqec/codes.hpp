#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "oqec/channels.hpp"
#include "oqec/spaces.hpp"

namespace oqec {

struct ExpectedVerdicts {
  bool b = true;
  bool c = true;
  bool d = true;
};

struct CatalogEntry {
  std::string name;
  Decomposition dec;
  Channel noise;
  ExpectedVerdicts expected;
  std::string note;
};

struct CatalogOptions {
  // Adds the 9-qubit Bacon-Shor subsystem code (dV = 512).
  bool extended = false;
};

std::vector<CatalogEntry> catalog(const CatalogOptions& opts = {});
std::vector<std::string> catalog_names(const CatalogOptions& opts = {});
std::optional<CatalogEntry> find_entry(std::string_view name,
                                       const CatalogOptions& opts = {});

// Building blocks, exposed for tests.
namespace frames {

// Unitary whose first columns are the listed standard basis vectors, followed
// by the remaining ones in index order.
Matrix permutation(std::size_t dim, const std::vector<std::size_t>& leading);

// Three spin-1/2 coupled as (C^2_multiplicity (x) C^2_spin) (+) spin-3/2:
// column a*2 + b is copy a of total spin 1/2 with m = +1/2 for b = 0.
Matrix three_qubit_spin_coupling();

// 9-qubit Bacon-Shor: A = logical qubit, B = four gauge qubits.
Matrix bacon_shor_9();

}  // namespace frames

}  // namespace oqec
