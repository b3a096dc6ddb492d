#include "pform/report.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace pform {

const char* const kToolVersion = "pform 1.0.0";

namespace {

Verdict verdict_from_name(const std::string& name) {
  for (Verdict v : {Verdict::confirmed, Verdict::refuted,
                    Verdict::exceptions_as_expected, Verdict::unresolved}) {
    if (verdict_name(v) == name) return v;
  }
  throw std::invalid_argument("unknown verdict: " + name);
}

std::string params_slug(
    const std::vector<std::pair<std::string, std::string>>& params) {
  std::ostringstream os;
  for (const auto& [k, v] : params) os << "-" << k << v;
  return os.str();
}

}  // namespace

std::string report_to_json(const TaskReport& report) {
  nlohmann::ordered_json j;
  j["task"] = report.task;
  nlohmann::ordered_json params = nlohmann::ordered_json::object();
  for (const auto& [k, v] : report.params) params[k] = v;
  j["params"] = params;
  j["forms_examined"] = report.forms_examined;
  nlohmann::ordered_json exceptions = nlohmann::ordered_json::array();
  for (const auto& e : report.exceptions) {
    exceptions.push_back({{"form", e}, {"witness_absent", true}});
  }
  j["exceptions"] = exceptions;
  j["verdict"] = verdict_name(report.verdict);
  j["wall_ms"] = report.wall_ms;
  j["checksum"] = report_checksum(report);
  j["tool_version"] = kToolVersion;
  return j.dump(2) + "\n";
}

TaskReport report_from_json(const std::string& text) {
  // ordered_json preserves the document's key order; params order is
  // part of the checksummed content.
  auto j = nlohmann::ordered_json::parse(text);
  TaskReport r;
  r.task = j.at("task").get<std::string>();
  for (auto it = j.at("params").begin(); it != j.at("params").end(); ++it) {
    r.params.emplace_back(it.key(), it.value().get<std::string>());
  }
  r.forms_examined = j.at("forms_examined").get<std::uint64_t>();
  for (const auto& e : j.at("exceptions")) {
    r.exceptions.push_back(e.at("form").get<std::string>());
  }
  r.verdict = verdict_from_name(j.at("verdict").get<std::string>());
  r.wall_ms = j.at("wall_ms").get<std::uint64_t>();
  std::string stored = j.at("checksum").get<std::string>();
  if (stored != report_checksum(r)) {
    throw std::runtime_error("report checksum mismatch");
  }
  return r;
}

std::string report_file_name(const TaskReport& report) {
  return report.task + params_slug(report.params) + "-" +
         report_checksum(report) + ".json";
}

std::string write_report(const TaskReport& report,
                         const std::string& output_dir) {
  namespace fs = std::filesystem;
  fs::create_directories(output_dir);
  fs::path path = fs::path(output_dir) / report_file_name(report);
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("write_report: cannot open " + path.string());
  }
  out << report_to_json(report);
  if (!out) {
    throw std::runtime_error("write_report: write failed for " + path.string());
  }
  return path.string();
}

std::optional<std::string> find_existing_report(
    const std::string& task,
    const std::vector<std::pair<std::string, std::string>>& params,
    const std::string& output_dir) {
  namespace fs = std::filesystem;
  if (!fs::exists(output_dir)) return std::nullopt;
  std::string prefix = task + params_slug(params) + "-";
  for (const auto& entry : fs::directory_iterator(output_dir)) {
    if (!entry.is_regular_file()) continue;
    std::string name = entry.path().filename().string();
    if (name.rfind(prefix, 0) != 0 || entry.path().extension() != ".json") {
      continue;
    }
    std::ifstream in(entry.path());
    std::stringstream buf;
    buf << in.rdbuf();
    try {
      report_from_json(buf.str());  // validates the stored checksum
      return entry.path().string();
    } catch (const std::exception&) {
      continue;
    }
  }
  return std::nullopt;
}

}  // namespace pform
