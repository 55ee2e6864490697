#include "ghl/gluing_script.hpp"

#include <algorithm>
#include <string>

#include "ghl/constructions.hpp"
#include "ghl/error.hpp"

namespace ghl {

namespace {

struct Slot {
  std::optional<FiniteLengthSpace> space;
  std::string label;
  std::vector<std::size_t> members;  // base indices merged into this slot
};

Slot& live_slot(std::vector<Slot>& slots, std::size_t index) {
  if (index >= slots.size() || !slots[index].space) {
    throw Error(ErrorKind::ScriptError, "slot " + std::to_string(index) + " is not live");
  }
  return slots[index];
}

const char* op_name(const ScriptStep& step) {
  switch (step.index()) {
    case 0: return "wedge";
    case 1: return "identify";
    default: return "collapse";
  }
}

}  // namespace

ScriptResult run_gluing_script(const GluingScript& script) {
  if (script.bases.empty()) throw Error(ErrorKind::ScriptError, "script has no base spaces");
  std::vector<Slot> slots;
  for (std::size_t i = 0; i < script.bases.size(); ++i) {
    const auto& base = script.bases[i];
    slots.push_back({base.space, base.name.empty() ? "base" + std::to_string(i) : base.name, {i}});
  }
  Provenance prov;

  for (std::size_t s = 0; s < script.steps.size(); ++s) {
    const auto& step = script.steps[s];
    try {
      if (const auto* w = std::get_if<WedgeStep>(&step)) {
        if (w->left == w->right) throw Error(ErrorKind::ScriptError, "wedge of a slot with itself");
        Slot& left = live_slot(slots, w->left);
        Slot& right = live_slot(slots, w->right);
        auto wedge = wedge_sum(*left.space, left.space->index_of(w->left_point), *right.space,
                               right.space->index_of(w->right_point));
        prov.wedges.push_back({s, left.label, right.label, wedge.space.id(wedge.wedge_point)});
        left.space = std::move(wedge.space);
        left.label += "+" + right.label;
        left.members.insert(left.members.end(), right.members.begin(), right.members.end());
        right.space.reset();
      } else if (const auto* id = std::get_if<IdentifyStep>(&step)) {
        Slot& slot = live_slot(slots, id->slot);
        auto q = two_point_identification(*slot.space, slot.space->index_of(id->a), slot.space->index_of(id->b));
        slot.space = std::move(q.space);
        ++prov.identifications;
      } else {
        const auto& c = std::get<CollapseStep>(step);
        Slot& slot = live_slot(slots, c.slot);
        std::vector<std::size_t> subset;
        for (const auto& p : c.subset) subset.push_back(slot.space->index_of(p));
        auto q = collapse_subset(*slot.space, subset);
        slot.space = std::move(q.space);
        ++prov.collapses;
      }
    } catch (const Error& e) {
      throw Error(e.kind(), "step " + std::to_string(s) + " (" + op_name(step) + "): " + e.message());
    }
  }

  const Slot* result = nullptr;
  for (const auto& slot : slots) {
    if (!slot.space) continue;
    if (result) throw Error(ErrorKind::ScriptError, "more than one slot is live after the last step");
    result = &slot;
  }
  std::vector<std::size_t> members = result->members;
  std::sort(members.begin(), members.end());
  for (auto b : members) {
    if (script.bases[b].surface) {
      prov.surfaces.push_back(*script.bases[b].surface);
      prov.surface_names.push_back(script.bases[b].name.empty() ? "base" + std::to_string(b) : script.bases[b].name);
    }
  }
  return {*result->space, std::move(prov)};
}

}  // namespace ghl
