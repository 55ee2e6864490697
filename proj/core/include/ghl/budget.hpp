#pragma once

#include <span>

#include "ghl/gluing_script.hpp"

namespace ghl {

// Connectivity budget of a space obtained by k metric 2-point identifications
// from a generalized cactoid whose surface blocks have connectivity numbers
// summing to c0. Such a space is a limit of closed surfaces of connectivity
// ambient_c iff c0 + 2k <= ambient_c.
struct BudgetRecord {
  int c0 = 0;
  int k = 0;
  int ambient_c = 0;
  // Approximating surfaces may be taken orientable: every block orientable
  // (and ambient_c even, as for any orientable closed surface).
  bool orientable_suffices = false;
  // ... or non-orientable: a non-orientable block, k > 0, or c0 < ambient_c.
  bool non_orientable_suffices = false;
};

// Throws BudgetViolationError (deficit = c0 + 2k - ambient_c) on rejection.
BudgetRecord verify_budget(std::span<const SurfaceSummand> blocks, int k, int ambient_c);

BudgetRecord verify_budget(const Provenance& provenance, int ambient_c);

}  // namespace ghl
