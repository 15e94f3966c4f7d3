#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "dmdl/detectors.hpp"

namespace dmdl {

struct AlarmEntry {
  std::int64_t t = 0;
  int order = 0;
  Direction direction = Direction::none;
  std::size_t window_size = 0;
};

/// Full result of one detector run: the per-step records, their alarm
/// flags flattened in time order (orders ascending within a step), the
/// effective configuration echoed as JSON text, and the input digest.
struct RunReport {
  std::vector<ScoreRecord> records;
  std::vector<AlarmEntry> alarms;
  std::string config_echo;  ///< JSON object text ("{}" if not supplied)
  std::string provenance;   ///< input digest, see fnv1a_hex
};

RunReport make_report(std::vector<ScoreRecord> records,
                      std::string config_echo, std::string provenance);

std::string to_json(const RunReport& report);
RunReport report_from_json(const std::string& text);

/// Minimal line plot of the normalized scores with alarm markers; text
/// emission only.
void render_svg(const std::string& path,
                std::span<const ScoreRecord> records);

}  // namespace dmdl
