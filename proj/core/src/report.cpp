#include <charconv>
#include <string>

#include "ghl/error.hpp"
#include "ghl/harness.hpp"
#include "ghl/json_io.hpp"
#include "json.hpp"

namespace ghl {

namespace {

// Shortest round-trip spelling, so equal inputs give identical bytes.
std::string number(double x) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, end);
}

}  // namespace

std::string format_report(const std::vector<ConvergenceRow>& rows, ReportFormat format) {
  if (rows.empty()) throw Error(ErrorKind::IoError, "no rows to report");
  if (format == ReportFormat::Csv) {
    std::string out = "n,delta_n,gh_upper,c_source,c_target_model,wall_time_ms\n";
    for (const auto& r : rows) {
      out += std::to_string(r.n) + "," + number(r.delta_n) + "," + number(r.gh_upper) + "," +
             std::to_string(r.c_source) + "," + std::to_string(r.c_target_model) + "," + number(r.wall_time_ms) +
             "\n";
    }
    return out;
  }
  nlohmann::ordered_json doc = nlohmann::ordered_json::array();
  for (const auto& r : rows) {
    doc.push_back({{"n", r.n},
                   {"delta_n", r.delta_n},
                   {"gh_upper", r.gh_upper},
                   {"c_source", r.c_source},
                   {"c_target_model", r.c_target_model},
                   {"wall_time_ms", r.wall_time_ms},
                   {"mesh_error", r.mesh_error}});
  }
  return doc.dump(2) + "\n";
}

void emit_report(const std::vector<ConvergenceRow>& rows, ReportFormat format, const std::filesystem::path& path) {
  write_text_file(path, format_report(rows, format));
}

ConvergenceChecks check_convergence(const std::vector<ConvergenceRow>& rows, double tolerance) {
  ConvergenceChecks checks;
  if (rows.empty()) return checks;
  for (std::size_t i = 1; i < rows.size(); ++i)
    if (rows[i].gh_upper > rows[i - 1].gh_upper + tolerance) checks.nonincreasing = false;
  if (rows.back().n >= 8) checks.halved = rows.back().gh_upper <= rows.front().gh_upper / 2.0 + tolerance;
  for (const auto& r : rows)
    if (r.gh_upper > 2.0 * r.delta_n + r.mesh_error + tolerance) checks.bounded = false;
  return checks;
}

}  // namespace ghl
