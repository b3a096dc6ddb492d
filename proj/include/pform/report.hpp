// report.hpp
//
// JSON persistence for task reports. Schema (stable, versioned by
// tool_version):
//   {task, params, forms_examined,
//    exceptions: [{form, witness_absent}], verdict, wall_ms, checksum,
//    tool_version}
// The checksum covers everything except wall_ms, so reruns with a
// different worker count produce identical checksums.

#pragma once

#include <optional>
#include <string>

#include "pform/verify.hpp"

namespace pform {

extern const char* const kToolVersion;

std::string report_to_json(const TaskReport& report);
TaskReport report_from_json(const std::string& text);

// File name: <task>-<params>-<checksum>.json inside output_dir.
std::string report_file_name(const TaskReport& report);
std::string write_report(const TaskReport& report,
                         const std::string& output_dir);

// Resume support: looks for an existing report for the same task and
// parameters whose stored checksum matches its own content.
std::optional<std::string> find_existing_report(
    const std::string& task,
    const std::vector<std::pair<std::string, std::string>>& params,
    const std::string& output_dir);

}  // namespace pform
