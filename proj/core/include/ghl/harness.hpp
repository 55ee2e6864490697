#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ghl/metric_space.hpp"
#include "ghl/surface_mesh.hpp"

namespace ghl {

// F1 connected sum vs wedge sum, F2 handle vs 2-point identification, F3 tiny
// torus / projective plane vs the bare surface, F4 star tree vs farthest-point
// nets, F5 whisker collapse on a sphere-with-whiskers graph.
enum class Family { F1, F2, F3, F4, F5 };

std::string_view to_string(Family family) noexcept;
std::optional<Family> parse_family(std::string_view name) noexcept;

struct FamilySpec {
  Family family = Family::F1;
  int n_max = 8;
  int resolution = 2;
  SurfaceKind first = SurfaceKind::Sphere;
  SurfaceKind second = SurfaceKind::Sphere;        // F1 only
  SurfaceKind tiny = SurfaceKind::ProjectivePlane;  // F3 only
  // Surgery vertices by id; defaults are picked by the family.
  std::optional<PointId> p;
  std::optional<PointId> q;
  // delta_n = delta0 / n; default is half the smallest link diameter at the
  // surgery vertices (F1-F3) or 1 (F5). F4 uses the net radius instead.
  std::optional<double> delta0;
  // F5: whisker attachment points are shuffled with this seed.
  std::uint64_t seed = 0;
  bool record_timing = true;  // wall_time_ms is 0 when off
  bool parallel = false;
  // Sees every space the run builds (sources and targets). Calls are
  // serialized even when parallel is set.
  std::function<void(std::string_view label, const FiniteLengthSpace&)> on_space;
};

struct ConvergenceRow {
  int n = 0;
  double delta_n = 0.0;
  double gh_upper = 0.0;
  int c_source = 0;
  int c_target_model = 0;
  double wall_time_ms = 0.0;
  double mesh_error = 0.0;  // max edge length of the n-th source
};

// Rows for n = 1..n_max, sorted by n. Construction errors are rethrown with
// the family and n prepended.
std::vector<ConvergenceRow> run_family(const FamilySpec& spec);

// FamilySpec from a JSON object with the field names above (kinds by name).
FamilySpec parse_family_spec(std::string_view json_text);

enum class ReportFormat { Csv, Json };

std::string format_report(const std::vector<ConvergenceRow>& rows, ReportFormat format);

// Refuses empty input before touching the file system.
void emit_report(const std::vector<ConvergenceRow>& rows, ReportFormat format, const std::filesystem::path& path);

struct ConvergenceChecks {
  bool nonincreasing = true;
  bool halved = true;  // only judged when n_max >= 8
  bool bounded = true;
  bool all() const noexcept { return nonincreasing && halved && bounded; }
};

ConvergenceChecks check_convergence(const std::vector<ConvergenceRow>& rows, double tolerance);

}  // namespace ghl
