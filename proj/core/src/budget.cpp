#include "ghl/budget.hpp"

#include <algorithm>
#include <string>

#include "ghl/error.hpp"

namespace ghl {

BudgetRecord verify_budget(std::span<const SurfaceSummand> blocks, int k, int ambient_c) {
  if (k < 0 || ambient_c < 0) throw Error(ErrorKind::BudgetViolation, "k and ambient_c must be nonnegative");
  BudgetRecord record;
  record.k = k;
  record.ambient_c = ambient_c;
  bool all_orientable = true;
  for (const auto& block : blocks) {
    if (block.c < 0) throw Error(ErrorKind::BudgetViolation, "negative connectivity number");
    record.c0 += block.c;
    all_orientable = all_orientable && block.orientable;
  }
  const int deficit = record.c0 + 2 * k - ambient_c;
  if (deficit > 0) {
    throw BudgetViolationError(deficit, "c0 + 2k = " + std::to_string(record.c0 + 2 * k) + " exceeds c = " +
                                            std::to_string(ambient_c) + " by " + std::to_string(deficit));
  }
  record.orientable_suffices = all_orientable && ambient_c % 2 == 0;
  record.non_orientable_suffices = !all_orientable || k > 0 || record.c0 < ambient_c;
  return record;
}

BudgetRecord verify_budget(const Provenance& provenance, int ambient_c) {
  return verify_budget(provenance.surfaces, provenance.identifications, ambient_c);
}

}  // namespace ghl
