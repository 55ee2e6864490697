#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "ghl/cli.hpp"
#include "ghl/error.hpp"
#include "ghl/harness.hpp"
#include "ghl/json_io.hpp"
#include "oracles.hpp"

using namespace ghl;
namespace fs = std::filesystem;

namespace {

class TempDir {
 public:
  TempDir() {
    path_ = fs::temp_directory_path() / ("ghl_test_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
                                         "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  fs::path operator/(const std::string& name) const { return path_ / name; }

 private:
  fs::path path_;
};

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run cli(std::vector<std::string> args) {
  args.insert(args.begin(), "ghl");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = cli_main(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

void write(const fs::path& p, const std::string& text) { std::ofstream(p) << text; }

}  // namespace

TEST(Report, CsvHeaderAndRows) {
  std::vector<ConvergenceRow> rows{{1, 0.5, 0.25, 0, 0, 0.0, 0.5}};
  EXPECT_EQ(format_report(rows, ReportFormat::Csv),
            "n,delta_n,gh_upper,c_source,c_target_model,wall_time_ms\n1,0.5,0.25,0,0,0\n");
  auto json = format_report(rows, ReportFormat::Json);
  EXPECT_NE(json.find("\"mesh_error\": 0.5"), std::string::npos);
}

TEST(Report, EmptyRowsWriteNothing) {
  TempDir dir;
  const auto path = dir / "r.csv";
  EXPECT_THROW(emit_report({}, ReportFormat::Csv, path), Error);
  EXPECT_FALSE(fs::exists(path));
}

TEST(RunFamily, DeterministicWithoutTiming) {
  for (auto f : {Family::F1, Family::F4, Family::F5}) {
    FamilySpec spec;
    spec.family = f;
    spec.n_max = 4;
    spec.record_timing = false;
    const auto a = format_report(run_family(spec), ReportFormat::Json);
    spec.parallel = true;
    const auto b = format_report(run_family(spec), ReportFormat::Json);
    EXPECT_EQ(a, b) << to_string(f);
  }
}

TEST(RunFamily, BookkeepingAndChecks) {
  struct Want {
    Family family;
    int c_source;
    int c_target;
  };
  for (auto w : {Want{Family::F1, 0, 0}, Want{Family::F2, 2, 0}, Want{Family::F3, 1, 0}, Want{Family::F4, 0, 0},
                 Want{Family::F5, 0, 0}}) {
    FamilySpec spec;
    spec.family = w.family;
    spec.n_max = 8;
    std::size_t spaces = 0;
    spec.on_space = [&](std::string_view label, const FiniteLengthSpace& s) {
      ++spaces;
      EXPECT_TRUE(oracle::metric_ok(s)) << label;
    };
    const auto rows = run_family(spec);
    ASSERT_EQ(rows.size(), 8u);
    EXPECT_GT(spaces, 0u);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      EXPECT_EQ(rows[i].n, static_cast<int>(i) + 1);
      EXPECT_GE(rows[i].gh_upper, 0.0);
      EXPECT_EQ(rows[i].c_source, w.c_source) << to_string(w.family);
      EXPECT_EQ(rows[i].c_target_model, w.c_target) << to_string(w.family);
    }
    auto checks = check_convergence(rows, kTolerance);
    EXPECT_TRUE(checks.nonincreasing) << to_string(w.family);
    EXPECT_TRUE(checks.halved) << to_string(w.family);
    EXPECT_TRUE(checks.bounded) << to_string(w.family);
  }
}

TEST(RunFamily, TinyTorusAddsTwo) {
  FamilySpec spec;
  spec.family = Family::F3;
  spec.tiny = SurfaceKind::Torus;
  spec.n_max = 3;
  for (const auto& r : run_family(spec)) EXPECT_EQ(r.c_source, r.c_target_model + 2);
}

TEST(RunFamily, TinySummandWithinDelta) {
  FamilySpec spec;
  spec.family = Family::F3;
  spec.delta0 = 1.0;
  spec.n_max = 6;
  for (const auto& r : run_family(spec)) EXPECT_LE(r.gh_upper, 1.0 / r.n + kTolerance);
}

TEST(RunFamily, ErrorsNameTheFamily) {
  FamilySpec spec;
  spec.family = Family::F1;
  spec.p = "nowhere";
  try {
    run_family(spec);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::PointNotInSpace);
    EXPECT_NE(std::string(e.what()).find("F1"), std::string::npos);
  }
  spec.p.reset();
  spec.n_max = 1;
  EXPECT_THROW(run_family(spec), Error);
}

TEST(FamilySpecJson, Fields) {
  auto spec = parse_family_spec(R"({"family":"F3","n_max":5,"tiny":"torus","delta0":0.3,"record_timing":false})");
  EXPECT_EQ(spec.family, Family::F3);
  EXPECT_EQ(spec.n_max, 5);
  EXPECT_EQ(spec.tiny, SurfaceKind::Torus);
  EXPECT_DOUBLE_EQ(*spec.delta0, 0.3);
  EXPECT_FALSE(spec.record_timing);
  EXPECT_THROW(parse_family_spec(R"({"family":"F9"})"), Error);
  EXPECT_THROW(parse_family_spec("{"), Error);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(cli({}).code, 2);
  EXPECT_EQ(cli({"frobnicate"}).code, 2);
  EXPECT_EQ(cli({"converge"}).code, 2);
  EXPECT_EQ(cli({"converge", "--family", "F7"}).code, 2);
  EXPECT_EQ(cli({"gh", "--x", "/nonexistent.json", "--y", "/nonexistent.json"}).code, 1);
  EXPECT_EQ(cli({"--help"}).code, 0);
}

TEST(Cli, ConvergeWritesReport) {
  TempDir dir;
  const auto out = (dir / "f1.csv").string();
  auto run = cli({"converge", "--family", "F1", "--n-max", "4", "--out", out, "--no-timing"});
  EXPECT_EQ(run.code, 0) << run.err;
  const auto text = read_text_file(out);
  EXPECT_EQ(text.rfind("n,delta_n,gh_upper,c_source,c_target_model,wall_time_ms\n", 0), 0u);
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 5);
  auto again = cli({"converge", "--family", "F1", "--n-max", "4", "--out", out, "--no-timing"});
  EXPECT_EQ(read_text_file(out), text);

  const auto cfg = dir / "spec.json";
  write(cfg, R"({"family":"F5","n_max":3,"record_timing":false})");
  auto json_run = cli({"converge", "--config", cfg.string(), "--format", "json"});
  EXPECT_EQ(json_run.code, 0) << json_run.err;
  EXPECT_NE(json_run.out.find("\"n\": 3"), std::string::npos);
}

TEST(Cli, BudgetDeficit) {
  TempDir dir;
  const auto s = dir / "s.json";
  write(s, R"({"blocks":[{"tag":"surface","c":2,"orientable":true}],"identifications":1})");
  auto bad = cli({"budget", "--scenario", s.string(), "--ambient-c", "3"});
  EXPECT_EQ(bad.code, 1);
  EXPECT_NE(bad.err.find("BudgetViolation"), std::string::npos);
  auto good = cli({"budget", "--scenario", s.string(), "--ambient-c", "4"});
  EXPECT_EQ(good.code, 0) << good.err;
  EXPECT_NE(good.out.find("\"c0\": 2"), std::string::npos);

  write(s, R"({"blocks":[{"tag":"non_surface"}],"identifications":0})");
  EXPECT_EQ(cli({"budget", "--scenario", s.string(), "--ambient-c", "3"}).code, 1);
}

TEST(Cli, SpaceGhConstructClassify) {
  TempDir dir;
  const auto g = dir / "g.json";
  write(g, R"({"vertices":["a","b","c"],"edges":[["a","b",1],["b","c",2]]})");
  const auto space = (dir / "x.json").string();
  ASSERT_EQ(cli({"space", "--graph", g.string(), "--out", space}).code, 0);
  auto x = parse_space(read_text_file(space));
  EXPECT_DOUBLE_EQ(x(0, 2), 3.0);

  const auto p = dir / "p.json";
  write(p, R"({"points":[0],"dist":[[0]]})");
  auto gh = cli({"gh", "--x", p.string(), "--y", space});
  EXPECT_EQ(gh.code, 0) << gh.err;
  EXPECT_NE(gh.out.find("1.5"), std::string::npos);

  const auto script = dir / "script.json";
  write(script, R"({"bases":[{"name":"T","surface":"torus"},{"name":"path","graph":"g.json","prefix":"g:"}],
                    "steps":[{"op":"wedge","left":0,"left_point":"v0","right":1,"right_point":"g:a"},
                             {"op":"identify","slot":0,"a":"v4","b":"g:c"}]})");
  const auto built = (dir / "built.json").string();
  auto c = cli({"construct", "--script", script.string(), "--out", built});
  EXPECT_EQ(c.code, 0) << c.err;
  EXPECT_NE(c.out.find("\"identifications\": 1"), std::string::npos);
  EXPECT_TRUE(oracle::metric_ok(parse_space(read_text_file(built))));

  const auto mesh = (dir / "torus.json").string();
  ASSERT_EQ(cli({"space", "--surface", "torus", "--mesh-out", mesh, "--out", (dir / "t.json").string()}).code, 0);
  auto cls = cli({"classify", "--mesh", mesh, "--cycle", "v0,v1,v2"});
  EXPECT_EQ(cls.code, 0) << cls.err;
  EXPECT_NE(cls.out.find("\"case\": 2"), std::string::npos);
  EXPECT_EQ(cli({"classify", "--mesh", mesh, "--cycle", "v0,v4"}).code, 1);
}

TEST(JsonIo, RoundTrips) {
  auto mesh = make_surface(SurfaceKind::ProjectivePlane, 1);
  auto back = parse_mesh(dump_mesh(mesh));
  EXPECT_EQ(back.vertices(), mesh.vertices());
  EXPECT_EQ(back.face_count(), mesh.face_count());
  auto x = shortest_path_metric(mesh.edge_graph());
  auto y = parse_space(dump_space(x));
  EXPECT_EQ(y.matrix(), x.matrix());
  auto g = parse_graph(dump_graph(mesh.edge_graph()));
  EXPECT_EQ(g.edge_count(), mesh.edge_count());
}

TEST(JsonIo, Errors) {
  auto kind = [](auto f) {
    try {
      f();
    } catch (const Error& e) {
      return e.kind();
    }
    return ErrorKind::ScriptError;
  };
  EXPECT_EQ(kind([] { parse_space("{"); }), ErrorKind::IoError);
  EXPECT_EQ(kind([] { parse_space(R"({"points":["a","b","c"],"dist":[[0,1,5],[1,0,1],[5,1,0]]})"); }),
            ErrorKind::InvalidSpace);
  EXPECT_EQ(kind([] { parse_graph(R"({"vertices":["a"],"edges":[["a","b",1]]})"); }), ErrorKind::PointNotInSpace);
  EXPECT_EQ(kind([] { read_text_file("/nonexistent/file.json"); }), ErrorKind::IoError);
}

TEST(JsonIo, ScenarioForms) {
  auto tagged = parse_scenario(R"({
    "graph": {"vertices": ["a","b","c","d","e","f"],
              "edges": [["a","b",1],["b","c",1],["c","a",1],["c","d",1],["d","e",1],["e","c",1],["e","f",1]]},
    "tags": [{"vertices": ["a","b"], "tag": "surface", "c": 2, "orientable": true},
             {"vertices": ["d","e"], "tag": "sphere"}],
    "identifications": 1})");
  EXPECT_TRUE(tagged.cactoid.is_generalized_cactoid);
  EXPECT_EQ(tagged.cactoid.non_sphere_count, 1);
  ASSERT_EQ(tagged.summands.size(), 2u);
  EXPECT_EQ(tagged.identifications, 1);

  EXPECT_THROW(parse_scenario(R"({"graph": {"vertices": ["a","b","c"], "edges": [["a","b",1],["b","c",1],["c","a",1]]},
                                  "tags": []})"),
               Error);

  auto scripted = parse_scenario(R"({"script": {"bases": [{"surface": "torus"}, {"surface": "projective_plane"}],
                                                "steps": [{"op": "wedge", "left": 0, "left_point": "v0",
                                                           "right": 1, "right_point": "v0"},
                                                          {"op": "identify", "slot": 0, "a": "v1", "b": "v2'"}]}})");
  EXPECT_EQ(scripted.identifications, 1);
  ASSERT_EQ(scripted.summands.size(), 2u);
  EXPECT_EQ(scripted.summands[0].c + scripted.summands[1].c, 3);
}
