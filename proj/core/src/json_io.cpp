#include "ghl/json_io.hpp"

#include <fstream>
#include <sstream>

#include "ghl/constructions.hpp"
#include "ghl/error.hpp"
#include "json.hpp"

namespace ghl {

using nlohmann::json;

namespace {

json parse_document(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::IoError, std::string("malformed JSON: ") + e.what());
  }
}

// Type errors inside nlohmann surface as IoError too.
template <class F>
auto guarded(const char* what, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const json::exception& e) {
    throw Error(ErrorKind::IoError, std::string("bad ") + what + " document: " + e.what());
  }
}

PointId read_id(const json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number_integer()) return std::to_string(j.get<long long>());
  throw Error(ErrorKind::IoError, "identifiers must be strings or integers");
}

json require(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw Error(ErrorKind::IoError, std::string("missing key '") + key + "'");
  return j.at(key);
}

MetricGraph graph_from(const json& j) {
  return guarded("graph", [&] {
    std::vector<PointId> vertices;
    for (const auto& v : require(j, "vertices")) vertices.push_back(read_id(v));
    std::vector<std::tuple<PointId, PointId, double>> edges;
    for (const auto& e : require(j, "edges")) {
      if (!e.is_array() || e.size() != 3) throw Error(ErrorKind::IoError, "edges are [u, v, length] triples");
      edges.emplace_back(read_id(e[0]), read_id(e[1]), e[2].get<double>());
    }
    return MetricGraph(std::move(vertices), edges);
  });
}

FiniteLengthSpace space_from(const json& j) {
  auto space = guarded("space", [&] {
    std::vector<PointId> points;
    for (const auto& p : require(j, "points")) points.push_back(read_id(p));
    const auto rows = require(j, "dist");
    std::vector<double> dist;
    if (rows.size() != points.size()) throw Error(ErrorKind::InvalidSpace, "distance matrix is not square");
    for (const auto& row : rows) {
      if (row.size() != points.size()) throw Error(ErrorKind::InvalidSpace, "distance matrix is not square");
      for (const auto& d : row) dist.push_back(d.get<double>());
    }
    return FiniteLengthSpace(std::move(points), std::move(dist));
  });
  if (auto check = check_metric_axioms(space); !check) {
    throw Error(ErrorKind::InvalidSpace, "metric axioms fail: " + check.failure);
  }
  return space;
}

SurfaceMesh mesh_from(const json& j) {
  return guarded("mesh", [&] {
    std::vector<PointId> vertices;
    std::unordered_map<PointId, std::size_t> index;
    for (const auto& v : require(j, "vertices")) {
      vertices.push_back(read_id(v));
      index.emplace(vertices.back(), vertices.size() - 1);
    }
    auto lookup = [&](const json& id) {
      auto it = index.find(read_id(id));
      if (it == index.end()) throw Error(ErrorKind::PointNotInSpace, "unknown mesh vertex '" + read_id(id) + "'");
      return it->second;
    };
    std::vector<Triangle> triangles;
    for (const auto& t : require(j, "triangles")) {
      if (!t.is_array() || t.size() != 3) throw Error(ErrorKind::IoError, "triangles are vertex triples");
      triangles.push_back({lookup(t[0]), lookup(t[1]), lookup(t[2])});
    }
    std::vector<Edge> lengths;
    for (const auto& e : require(j, "edge_lengths")) {
      if (!e.is_array() || e.size() != 3) throw Error(ErrorKind::IoError, "edge_lengths are [u, v, length] triples");
      lengths.push_back({lookup(e[0]), lookup(e[1]), e[2].get<double>()});
    }
    return SurfaceMesh(std::move(vertices), std::move(triangles), lengths);
  });
}

json to_json(const FiniteLengthSpace& space) {
  json rows = json::array();
  for (std::size_t i = 0; i < space.size(); ++i) {
    auto r = space.row(i);
    rows.push_back(std::vector<double>(r.begin(), r.end()));
  }
  return {{"points", space.points()}, {"dist", rows}};
}

json to_json(const SurfaceMesh& mesh) {
  json tris = json::array();
  for (const auto& t : mesh.triangles()) tris.push_back({mesh.id(t[0]), mesh.id(t[1]), mesh.id(t[2])});
  json lengths = json::array();
  for (const auto& e : mesh.edges()) lengths.push_back({mesh.id(e.u), mesh.id(e.v), e.length});
  return {{"vertices", mesh.vertices()}, {"triangles", tris}, {"edge_lengths", lengths}};
}

// A nested document, or a path to one relative to base_dir.
json nested(const json& j, const std::filesystem::path& base_dir) {
  if (j.is_string()) return parse_document(read_text_file(base_dir / j.get<std::string>()));
  return j;
}

FiniteLengthSpace with_prefix(const FiniteLengthSpace& space, const std::string& prefix) {
  if (prefix.empty()) return space;
  std::vector<PointId> ids;
  for (const auto& p : space.points()) ids.push_back(prefix + p);
  return FiniteLengthSpace(std::move(ids), space.matrix());
}

BaseSpace base_from(const json& j, const std::filesystem::path& base_dir) {
  BaseSpace base;
  base.name = j.value("name", "");
  const std::string prefix = j.value("prefix", "");
  if (j.contains("space")) {
    base.space = space_from(nested(j.at("space"), base_dir));
  } else if (j.contains("graph")) {
    base.space = shortest_path_metric(graph_from(nested(j.at("graph"), base_dir)));
  } else if (j.contains("mesh") || j.contains("surface")) {
    SurfaceMesh mesh;
    if (j.contains("mesh")) {
      mesh = mesh_from(nested(j.at("mesh"), base_dir));
    } else {
      auto kind = parse_surface_kind(j.at("surface").get<std::string>());
      if (!kind) throw Error(ErrorKind::IoError, "unknown surface kind '" + j.at("surface").get<std::string>() + "'");
      mesh = make_surface(*kind, j.value("resolution", 1));
    }
    base.space = shortest_path_metric(mesh.edge_graph());
    base.surface = SurfaceSummand{connectivity_number(mesh), orientable(mesh)};
  } else {
    throw Error(ErrorKind::IoError, "base needs one of space, graph, mesh, surface");
  }
  if (j.contains("summand")) {
    const auto& s = j.at("summand");
    base.surface = SurfaceSummand{s.value("c", 0), s.value("orientable", true)};
  }
  base.space = with_prefix(base.space, prefix);
  return base;
}

SurfaceSummand summand_from_tag(const json& j, BlockTag& tag) {
  const std::string kind = require(j, "tag").get<std::string>();
  if (kind == "sphere") {
    tag = {BlockTagKind::Sphere, 0, true};
  } else if (kind == "surface") {
    tag = {BlockTagKind::Surface, j.value("c", 0), j.value("orientable", true)};
  } else if (kind == "non_surface") {
    tag = {BlockTagKind::NonSurface, 0, true};
  } else {
    throw Error(ErrorKind::IoError, "unknown block tag '" + kind + "'");
  }
  return {tag.c, tag.orientable};
}

}  // namespace

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::IoError, "cannot read '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::IoError, "cannot write '" + path.string() + "'");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw Error(ErrorKind::IoError, "write to '" + path.string() + "' failed");
}

MetricGraph parse_graph(std::string_view text) { return graph_from(parse_document(text)); }

std::string dump_graph(const MetricGraph& graph) {
  json edges = json::array();
  for (const auto& e : graph.edges()) edges.push_back({graph.id(e.u), graph.id(e.v), e.length});
  return json{{"vertices", graph.vertices()}, {"edges", edges}}.dump(2) + "\n";
}

FiniteLengthSpace parse_space(std::string_view text) { return space_from(parse_document(text)); }

std::string dump_space(const FiniteLengthSpace& space) { return to_json(space).dump(2) + "\n"; }

SurfaceMesh parse_mesh(std::string_view text) { return mesh_from(parse_document(text)); }

std::string dump_mesh(const SurfaceMesh& mesh) { return to_json(mesh).dump(2) + "\n"; }

Correspondence parse_correspondence(std::string_view text, const FiniteLengthSpace& x, const FiniteLengthSpace& y) {
  const json doc = parse_document(text);
  return guarded("correspondence", [&] {
    Correspondence r;
    for (const auto& pair : require(doc, "pairs")) {
      if (!pair.is_array() || pair.size() != 2) throw Error(ErrorKind::IoError, "pairs are [x, y] ids");
      r.pairs.emplace_back(x.index_of(read_id(pair[0])), y.index_of(read_id(pair[1])));
    }
    return r;
  });
}

std::string dump_correspondence(const Correspondence& r, const FiniteLengthSpace& x, const FiniteLengthSpace& y) {
  json pairs = json::array();
  for (auto [a, b] : r.pairs) pairs.push_back({x.id(a), y.id(b)});
  return json{{"pairs", pairs}}.dump(2) + "\n";
}

FiniteLengthSpace parse_space_or_graph(std::string_view text) {
  const json doc = parse_document(text);
  if (doc.is_object() && doc.contains("points")) return space_from(doc);
  return shortest_path_metric(graph_from(doc));
}

GluingScript parse_script(std::string_view text, const std::filesystem::path& base_dir) {
  const json doc = parse_document(text);
  return guarded("script", [&] {
    GluingScript script;
    for (const auto& b : require(doc, "bases")) script.bases.push_back(base_from(b, base_dir));
    if (doc.contains("steps")) {
      for (const auto& s : doc.at("steps")) {
        const std::string op = require(s, "op").get<std::string>();
        if (op == "wedge") {
          script.steps.emplace_back(WedgeStep{require(s, "left").get<std::size_t>(), read_id(require(s, "left_point")),
                                              require(s, "right").get<std::size_t>(),
                                              read_id(require(s, "right_point"))});
        } else if (op == "identify") {
          script.steps.emplace_back(
              IdentifyStep{s.value("slot", std::size_t{0}), read_id(require(s, "a")), read_id(require(s, "b"))});
        } else if (op == "collapse") {
          CollapseStep c{s.value("slot", std::size_t{0}), {}};
          for (const auto& p : require(s, "subset")) c.subset.push_back(read_id(p));
          script.steps.emplace_back(std::move(c));
        } else {
          throw Error(ErrorKind::IoError, "unknown step op '" + op + "'");
        }
      }
    }
    return script;
  });
}

std::string dump_provenance(const Provenance& prov) {
  json wedges = json::array();
  for (const auto& w : prov.wedges) {
    wedges.push_back({{"step", w.step}, {"left", w.left}, {"right", w.right}, {"wedge_point", w.wedge_point}});
  }
  json surfaces = json::array();
  for (std::size_t i = 0; i < prov.surfaces.size(); ++i) {
    surfaces.push_back({{"name", prov.surface_names[i]},
                        {"c", prov.surfaces[i].c},
                        {"orientable", prov.surfaces[i].orientable}});
  }
  return json{{"identifications", prov.identifications},
              {"collapses", prov.collapses},
              {"wedges", wedges},
              {"surfaces", surfaces}}
             .dump(2) +
         "\n";
}

BudgetScenario parse_scenario(std::string_view text, const std::filesystem::path& base_dir) {
  const json doc = parse_document(text);
  return guarded("scenario", [&] {
    BudgetScenario scenario;
    if (doc.contains("script")) {
      const json script_doc = nested(doc.at("script"), base_dir);
      auto result = run_gluing_script(parse_script(script_doc.dump(), base_dir));
      scenario.summands = result.provenance.surfaces;
      scenario.identifications = result.provenance.identifications;
      scenario.cactoid.is_generalized_cactoid = true;
      for (const auto& s : scenario.summands) scenario.cactoid.non_sphere_count += s.c != 0 ? 1 : 0;
      scenario.cactoid.is_cactoid = scenario.cactoid.non_sphere_count == 0;
      return scenario;
    }
    scenario.identifications = doc.value("identifications", 0);
    std::map<std::size_t, BlockTag> tags;
    BlockTree tree;
    if (doc.contains("graph")) {
      const auto graph = graph_from(nested(doc.at("graph"), base_dir));
      tree = block_decomposition(graph);
      for (const auto& t : doc.value("tags", json::array())) {
        std::vector<std::size_t> vertices;
        for (const auto& v : require(t, "vertices")) vertices.push_back(graph.index_of(read_id(v)));
        const auto block = tree.find_block(vertices);
        if (block == static_cast<std::size_t>(-1)) {
          throw Error(ErrorKind::MissingTag, "tag does not match any block");
        }
        BlockTag tag;
        summand_from_tag(t, tag);
        tags[block] = tag;
      }
    } else {
      for (const auto& b : require(doc, "blocks")) {
        BlockTag tag;
        summand_from_tag(b, tag);
        // Free-standing blocks: one non-bridge block per entry.
        BlockTree::Block block;
        tags[tree.blocks.size()] = tag;
        tree.blocks.push_back(block);
      }
    }
    scenario.cactoid = cactoid_check(tree, tags);
    for (std::size_t b = 0; b < tree.blocks.size(); ++b) {
      auto it = tags.find(b);
      if (it == tags.end() || it->second.kind == BlockTagKind::NonSurface) continue;
      scenario.summands.push_back({it->second.c, it->second.orientable});
    }
    return scenario;
  });
}

}  // namespace ghl
