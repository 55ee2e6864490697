#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "ghl/blocks.hpp"
#include "ghl/gluing_script.hpp"
#include "ghl/gromov_hausdorff.hpp"
#include "ghl/metric_space.hpp"
#include "ghl/surface_mesh.hpp"

// UTF-8 JSON file formats:
//   graph  {"vertices": [ids], "edges": [[u, v, length], ...]}
//   space  {"points": [ids], "dist": [[...], ...]}
//   mesh   {"vertices": [ids], "triangles": [[a, b, c], ...], "edge_lengths": [[u, v, l], ...]}
//   correspondence {"pairs": [[x_id, y_id], ...]}
// Identifiers may be strings or integers; integers are read as their decimal
// spelling. Malformed documents raise IoError; well-formed documents that
// violate a type invariant raise that type's error.
namespace ghl {

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

MetricGraph parse_graph(std::string_view json_text);
std::string dump_graph(const MetricGraph& graph);

// Full metric-axiom check on load (InvalidSpace on failure).
FiniteLengthSpace parse_space(std::string_view json_text);
std::string dump_space(const FiniteLengthSpace& space);

SurfaceMesh parse_mesh(std::string_view json_text);
std::string dump_mesh(const SurfaceMesh& mesh);

Correspondence parse_correspondence(std::string_view json_text, const FiniteLengthSpace& x,
                                    const FiniteLengthSpace& y);
std::string dump_correspondence(const Correspondence& r, const FiniteLengthSpace& x, const FiniteLengthSpace& y);

// Space from either a space or a graph document (graphs go through
// shortest_path_metric).
FiniteLengthSpace parse_space_or_graph(std::string_view json_text);

// {"bases": [...], "steps": [...]}. A base is one of
//   {"name": ..., "space": <space>} | {"graph": <graph>} | {"mesh": <mesh>} |
//   {"surface": "torus", "resolution": 1}
// where a nested document may also be a file path relative to `base_dir`.
// Optional "prefix" is prepended to every point id of the base; optional
// "summand": {"c": .., "orientable": ..} declares a non-mesh base to be a
// surface block. Steps:
//   {"op": "wedge", "left": 0, "left_point": id, "right": 1, "right_point": id}
//   {"op": "identify", "slot": 0, "a": id, "b": id}
//   {"op": "collapse", "slot": 0, "subset": [ids]}
GluingScript parse_script(std::string_view json_text, const std::filesystem::path& base_dir = {});
std::string dump_provenance(const Provenance& provenance);

// Budget scenarios:
//   {"blocks": [{"tag": "sphere"|"surface"|"non_surface", "c": .., "orientable": ..}], "identifications": k}
//   {"graph": <graph>, "tags": [{"vertices": [ids], "tag": ..}], "identifications": k}
//   {"script": <script or path>}
struct BudgetScenario {
  std::vector<SurfaceSummand> summands;
  int identifications = 0;
  CactoidReport cactoid;
};

BudgetScenario parse_scenario(std::string_view json_text, const std::filesystem::path& base_dir = {});

}  // namespace ghl
