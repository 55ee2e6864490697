#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "ghl/metric_space.hpp"

namespace ghl {

// Connectivity number and orientability of a closed surface summand.
struct SurfaceSummand {
  int c = 0;
  bool orientable = true;
};

struct BaseSpace {
  std::string name;
  FiniteLengthSpace space;
  // Present when the base came from a closed surface mesh.
  std::optional<SurfaceSummand> surface;
};

// Slots are base indices. A wedge replaces the left slot with the wedge sum and
// retires the right slot; wedge points may differ per step.
struct WedgeStep {
  std::size_t left = 0;
  PointId left_point;
  std::size_t right = 0;
  PointId right_point;
};

struct IdentifyStep {
  std::size_t slot = 0;
  PointId a;
  PointId b;
};

struct CollapseStep {
  std::size_t slot = 0;
  std::vector<PointId> subset;
};

using ScriptStep = std::variant<WedgeStep, IdentifyStep, CollapseStep>;

struct GluingScript {
  std::vector<BaseSpace> bases;
  std::vector<ScriptStep> steps;
};

struct WedgeEvent {
  std::size_t step = 0;
  std::string left;
  std::string right;
  PointId wedge_point;
};

struct Provenance {
  int identifications = 0;  // k
  int collapses = 0;
  std::vector<WedgeEvent> wedges;
  // Surface bases that ended up in the result, in base order.
  std::vector<SurfaceSummand> surfaces;
  std::vector<std::string> surface_names;
};

struct ScriptResult {
  FiniteLengthSpace space;
  Provenance provenance;
};

// Executes the steps in order. Step failures are rethrown with their kind
// preserved and the step index in the message. Exactly one slot must remain
// live at the end.
ScriptResult run_gluing_script(const GluingScript& script);

}  // namespace ghl
