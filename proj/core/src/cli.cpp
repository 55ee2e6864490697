#include "ghl/cli.hpp"

#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "ghl/budget.hpp"
#include "ghl/cycle_quotient.hpp"
#include "ghl/error.hpp"
#include "ghl/gromov_hausdorff.hpp"
#include "ghl/harness.hpp"
#include "ghl/json_io.hpp"
#include "json.hpp"

namespace ghl {

namespace {

using nlohmann::ordered_json;

// Domain failures the CLI detects itself, outside any library type.
struct DomainFailure {
  std::string kind;
  std::string message;
};

struct Sink {
  std::ostream& out;
  std::string path;

  void write(const std::string& text) const {
    if (path.empty()) {
      out << text;
    } else {
      write_text_file(path, text);
    }
  }
};

std::filesystem::path parent_of(const std::string& file) { return std::filesystem::path(file).parent_path(); }

std::vector<std::size_t> parse_cycle(const std::string& text, const SurfaceMesh& mesh) {
  std::vector<std::size_t> out;
  std::stringstream in(text);
  std::string id;
  while (std::getline(in, id, ',')) {
    id.erase(0, id.find_first_not_of(" \t"));
    id.erase(id.find_last_not_of(" \t") + 1);
    if (!id.empty()) out.push_back(mesh.index_of(id));
  }
  return out;
}

ordered_json counts_json(const CellCounts& c) {
  return {{"vertices", c.vertices}, {"edges", c.edges}, {"faces", c.faces}, {"euler", c.euler()}};
}

ordered_json classification_json(const QuotientClassification& q) {
  ordered_json j{{"case", q.case_number()}};
  if (auto* w = std::get_if<WedgeCase>(&q.kind)) {
    j["c1"] = w->c1;
    j["c2"] = w->c2;
    j["first_orientable"] = w->first_orientable;
    j["second_orientable"] = w->second_orientable;
  } else if (auto* i = std::get_if<IdentificationCase>(&q.kind)) {
    j["c"] = i->c;
    j["orientable"] = i->orientable;
  } else if (auto* s = std::get_if<SurfaceCase>(&q.kind)) {
    j["c"] = s->c;
    j["orientable"] = s->orientable;
  }
  j["notes"] = q.orientability_notes;
  return j;
}

}  // namespace

int cli_main(int argc, const char* const* argv) { return cli_main(argc, argv, std::cout, std::cerr); }

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Gromov-Hausdorff limits of closed surfaces, at finite scale", "ghl"};
  app.require_subcommand(1);

  std::string out_path;
  auto add_out = [&](CLI::App* cmd) { cmd->add_option("--out", out_path, "Output file (default: stdout)"); };

  // space
  auto* space_cmd = app.add_subcommand("space", "Shortest-path metric of a graph, mesh or generated surface");
  std::string graph_file, mesh_file, surface_name, mesh_out;
  int resolution = 1;
  auto* src = space_cmd->add_option_group("source");
  src->add_option("--graph", graph_file, "Graph JSON");
  src->add_option("--mesh", mesh_file, "Mesh JSON");
  src->add_option("--surface", surface_name, "sphere | torus | projective_plane | klein");
  src->require_option(1);
  space_cmd->add_option("--resolution", resolution, "Refinement level for --surface")->check(CLI::PositiveNumber);
  space_cmd->add_option("--mesh-out", mesh_out, "Also write the generated mesh");
  add_out(space_cmd);

  // gh
  auto* gh_cmd = app.add_subcommand("gh", "Gromov-Hausdorff distance or bound between two spaces");
  std::string x_file, y_file, corr_file, mode_name = "auto";
  gh_cmd->add_option("--x", x_file, "Space or graph JSON")->required();
  gh_cmd->add_option("--y", y_file, "Space or graph JSON")->required();
  gh_cmd->add_option("--correspondence", corr_file, "Bound from this correspondence instead of exact search");
  gh_cmd->add_option("--mode", mode_name, "auto | exhaustive | bnb")
      ->check(CLI::IsMember({"auto", "exhaustive", "bnb"}));
  add_out(gh_cmd);

  // construct
  auto* construct_cmd = app.add_subcommand("construct", "Run a gluing script");
  std::string script_file, provenance_file;
  construct_cmd->add_option("--script", script_file, "Gluing script JSON")->required();
  construct_cmd->add_option("--provenance", provenance_file, "Write provenance JSON here");
  add_out(construct_cmd);

  // classify
  auto* classify_cmd = app.add_subcommand("classify", "Topology of a mesh and of its quotient by a cycle");
  std::string classify_mesh, cycle_text;
  classify_cmd->add_option("--mesh", classify_mesh, "Mesh JSON")->required();
  classify_cmd->add_option("--cycle", cycle_text, "Comma-separated vertex ids");
  add_out(classify_cmd);

  // budget
  auto* budget_cmd = app.add_subcommand("budget", "Check the connectivity budget of a scenario");
  std::string scenario_file;
  int ambient_c = 0;
  budget_cmd->add_option("--scenario", scenario_file, "Scenario JSON")->required();
  budget_cmd->add_option("--ambient-c", ambient_c, "Connectivity number of the approximating surfaces")
      ->required()
      ->check(CLI::NonNegativeNumber);
  add_out(budget_cmd);

  // converge
  auto* converge_cmd = app.add_subcommand("converge", "Run an approximation family and report GH bounds");
  std::string family_name, config_file, format_name = "csv";
  int n_max = 0, family_resolution = 0;
  double delta0 = 0.0, tolerance = kTolerance;
  std::uint64_t seed = 0;
  bool no_timing = false, parallel = false;
  auto* family_opt = converge_cmd->add_option("--family", family_name, "F1 .. F5")
                         ->check(CLI::IsMember({"F1", "F2", "F3", "F4", "F5"}));
  auto* config_opt = converge_cmd->add_option("--config", config_file, "FamilySpec JSON");
  auto* n_opt = converge_cmd->add_option("--n-max", n_max, "Largest n")->check(CLI::Range(2, 1000));
  auto* res_opt = converge_cmd->add_option("--resolution", family_resolution, "Base resolution")
                      ->check(CLI::PositiveNumber);
  auto* delta_opt = converge_cmd->add_option("--delta0", delta0, "delta_n = delta0 / n")->check(CLI::PositiveNumber);
  auto* seed_opt = converge_cmd->add_option("--seed", seed, "Seed (default 0)");
  converge_cmd->add_option("--format", format_name, "csv | json")->check(CLI::IsMember({"csv", "json"}));
  converge_cmd->add_option("--tolerance", tolerance, "Slack for the report checks only")
      ->check(CLI::NonNegativeNumber);
  converge_cmd->add_flag("--no-timing", no_timing, "Report wall_time_ms as 0");
  converge_cmd->add_flag("--parallel", parallel, "Evaluate members concurrently");
  add_out(converge_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 2;
  }
  if (converge_cmd->parsed() && family_opt->count() == 0 && config_opt->count() == 0) {
    err << "converge: --family or --config is required\n";
    return 2;
  }

  const Sink sink{out, out_path};
  try {
    if (space_cmd->parsed()) {
      std::optional<FiniteLengthSpace> space;
      if (!graph_file.empty()) {
        space = shortest_path_metric(parse_graph(read_text_file(graph_file)));
      } else {
        SurfaceMesh mesh;
        if (!mesh_file.empty()) {
          mesh = parse_mesh(read_text_file(mesh_file));
        } else {
          auto kind = parse_surface_kind(surface_name);
          if (!kind) {
            err << "space: unknown surface '" << surface_name << "'\n";
            return 2;
          }
          mesh = make_surface(*kind, resolution);
        }
        if (!mesh_out.empty()) write_text_file(mesh_out, dump_mesh(mesh));
        space = shortest_path_metric(mesh.edge_graph());
      }
      sink.write(dump_space(*space));
    } else if (gh_cmd->parsed()) {
      const auto x = parse_space_or_graph(read_text_file(x_file));
      const auto y = parse_space_or_graph(read_text_file(y_file));
      ordered_json result;
      if (!corr_file.empty()) {
        const auto r = parse_correspondence(read_text_file(corr_file), x, y);
        result = {{"method", "correspondence"}, {"gh_upper", gh_upper_bound(r, x, y)}};
      } else {
        const GhSearch mode = mode_name == "exhaustive" ? GhSearch::Exhaustive
                              : mode_name == "bnb"      ? GhSearch::BranchAndBound
                                                        : GhSearch::Auto;
        result = {{"method", mode_name}, {"gh", gh_bruteforce(x, y, mode)}};
      }
      sink.write(result.dump(2) + "\n");
    } else if (construct_cmd->parsed()) {
      const auto script = parse_script(read_text_file(script_file), parent_of(script_file));
      const auto result = run_gluing_script(script);
      sink.write(dump_space(result.space));
      if (!provenance_file.empty()) {
        write_text_file(provenance_file, dump_provenance(result.provenance));
      } else if (!out_path.empty()) {
        out << dump_provenance(result.provenance);
      }
    } else if (classify_cmd->parsed()) {
      const auto mesh = parse_mesh(read_text_file(classify_mesh));
      const int chi = euler_characteristic(mesh);
      ordered_json result{{"vertices", mesh.vertex_count()},
                          {"edges", mesh.edge_count()},
                          {"faces", mesh.face_count()},
                          {"euler", chi},
                          {"c", connectivity_number(mesh)},
                          {"orientable", orientable(mesh)}};
      if (!cycle_text.empty()) {
        const CycleInMesh cycle{parse_cycle(cycle_text, mesh)};
        const auto collapse = collapse_cycle(mesh, cycle);
        auto cls = classification_json(classify_cycle_quotient(mesh, cycle));
        cls["collapsed"] = counts_json(collapse.complex);
        cls["merged_vertex"] = collapse.merged_vertex;
        result["cycle"] = cls;
      }
      sink.write(result.dump(2) + "\n");
    } else if (budget_cmd->parsed()) {
      const auto scenario = parse_scenario(read_text_file(scenario_file), parent_of(scenario_file));
      if (!scenario.cactoid.is_generalized_cactoid) {
        throw DomainFailure{"NotAGeneralizedCactoid", "a block is tagged non_surface"};
      }
      const auto record = verify_budget(scenario.summands, scenario.identifications, ambient_c);
      ordered_json result{{"c0", record.c0},
                          {"k", record.k},
                          {"ambient_c", record.ambient_c},
                          {"accepted", true},
                          {"orientable_suffices", record.orientable_suffices},
                          {"non_orientable_suffices", record.non_orientable_suffices},
                          {"is_cactoid", scenario.cactoid.is_cactoid},
                          {"non_sphere_blocks", scenario.cactoid.non_sphere_count}};
      sink.write(result.dump(2) + "\n");
    } else if (converge_cmd->parsed()) {
      FamilySpec spec;
      if (!config_file.empty()) spec = parse_family_spec(read_text_file(config_file));
      if (family_opt->count()) spec.family = *parse_family(family_name);
      if (n_opt->count()) spec.n_max = n_max;
      if (res_opt->count()) spec.resolution = family_resolution;
      if (delta_opt->count()) spec.delta0 = delta0;
      if (seed_opt->count()) spec.seed = seed;
      if (no_timing) spec.record_timing = false;
      if (parallel) spec.parallel = true;
      if (spec.n_max < 2) {
        err << "converge: n_max must be at least 2\n";
        return 2;
      }
      const auto rows = run_family(spec);
      const auto format = format_name == "json" ? ReportFormat::Json : ReportFormat::Csv;
      sink.write(format_report(rows, format));
      const auto checks = check_convergence(rows, tolerance);
      std::ostream& summary = out_path.empty() ? err : out;
      summary << to_string(spec.family) << ": nonincreasing=" << checks.nonincreasing
              << " halved=" << checks.halved << " bounded=" << checks.bounded << "\n";
      if (!checks.all()) throw DomainFailure{"ConvergenceCheck", "report written, but a check failed"};
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const DomainFailure& f) {
    err << "error: " << f.kind << ": " << f.message << "\n";
    return 1;
  }
  return 0;
}

}  // namespace ghl
