#include "dmdl/report.hpp"

#include <fstream>
#include <stdexcept>

#include "json.hpp"

#include "dmdl/format.hpp"

namespace dmdl {

using nlohmann::json;

namespace {

Direction direction_from_string(const std::string& s) {
  if (s == "up") return Direction::up;
  if (s == "down") return Direction::down;
  if (s == "none") return Direction::none;
  throw std::invalid_argument("unknown direction '" + s + "'");
}

void put_optional(json& j, const char* key, const std::optional<double>& v) {
  if (v) j[key] = *v;
}

std::optional<double> get_optional(const json& j, const char* key) {
  if (!j.contains(key)) return std::nullopt;
  return j.at(key).get<double>();
}

json record_to_json(const ScoreRecord& rec) {
  json j;
  j["t"] = rec.t;
  put_optional(j, "raw0", rec.raw0);
  put_optional(j, "raw1", rec.raw1);
  put_optional(j, "raw2", rec.raw2);
  put_optional(j, "norm0", rec.norm0);
  put_optional(j, "norm1", rec.norm1);
  put_optional(j, "norm2", rec.norm2);
  j["alarm0"] = rec.alarm0;
  j["alarm1"] = rec.alarm1;
  j["alarm2"] = rec.alarm2;
  j["window_size"] = rec.window_size;
  j["direction"] = to_string(rec.direction);
  return j;
}

ScoreRecord record_from_json(const json& j) {
  ScoreRecord rec;
  rec.t = j.at("t").get<std::int64_t>();
  rec.raw0 = get_optional(j, "raw0");
  rec.raw1 = get_optional(j, "raw1");
  rec.raw2 = get_optional(j, "raw2");
  rec.norm0 = get_optional(j, "norm0");
  rec.norm1 = get_optional(j, "norm1");
  rec.norm2 = get_optional(j, "norm2");
  rec.alarm0 = j.at("alarm0").get<bool>();
  rec.alarm1 = j.at("alarm1").get<bool>();
  rec.alarm2 = j.at("alarm2").get<bool>();
  rec.window_size = j.at("window_size").get<std::size_t>();
  rec.direction = direction_from_string(j.at("direction").get<std::string>());
  return rec;
}

}  // namespace

RunReport make_report(std::vector<ScoreRecord> records,
                      std::string config_echo, std::string provenance) {
  RunReport report;
  report.records = std::move(records);
  report.config_echo = config_echo.empty() ? "{}" : std::move(config_echo);
  report.provenance = std::move(provenance);
  for (const ScoreRecord& rec : report.records) {
    const bool flags[3] = {rec.alarm0, rec.alarm1, rec.alarm2};
    for (int order = 0; order < 3; ++order) {
      if (flags[order]) {
        report.alarms.push_back(
            {rec.t, order, rec.direction, rec.window_size});
      }
    }
  }
  return report;
}

std::string to_json(const RunReport& report) {
  json j;
  j["config"] = report.config_echo.empty()
                    ? json::object()
                    : json::parse(report.config_echo);
  j["provenance"] = report.provenance;
  j["alarms"] = json::array();
  for (const AlarmEntry& a : report.alarms) {
    j["alarms"].push_back({{"t", a.t},
                           {"order", a.order},
                           {"direction", to_string(a.direction)},
                           {"window_size", a.window_size}});
  }
  j["records"] = json::array();
  for (const ScoreRecord& rec : report.records) {
    j["records"].push_back(record_to_json(rec));
  }
  return j.dump(2);
}

RunReport report_from_json(const std::string& text) {
  const json j = json::parse(text);
  RunReport report;
  report.config_echo = j.at("config").dump();
  report.provenance = j.at("provenance").get<std::string>();
  for (const json& rj : j.at("records")) {
    report.records.push_back(record_from_json(rj));
  }
  for (const json& aj : j.at("alarms")) {
    AlarmEntry a;
    a.t = aj.at("t").get<std::int64_t>();
    a.order = aj.at("order").get<int>();
    a.direction =
        direction_from_string(aj.at("direction").get<std::string>());
    a.window_size = aj.at("window_size").get<std::size_t>();
    report.alarms.push_back(a);
  }
  return report;
}

void render_svg(const std::string& path,
                std::span<const ScoreRecord> records) {
  constexpr double kWidth = 800.0;
  constexpr double kHeight = 280.0;
  constexpr double kMargin = 30.0;

  std::int64_t t_min = 0;
  std::int64_t t_max = 1;
  if (!records.empty()) {
    t_min = records.front().t;
    t_max = records.back().t;
    if (t_max == t_min) t_max = t_min + 1;
  }
  const auto x_of = [&](std::int64_t t) {
    return kMargin + (kWidth - 2.0 * kMargin) *
                         static_cast<double>(t - t_min) /
                         static_cast<double>(t_max - t_min);
  };
  const auto y_of = [&](double norm) {
    return kHeight - kMargin - (kHeight - 2.0 * kMargin) * norm;
  };

  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
      << "\" height=\"" << kHeight << "\" viewBox=\"0 0 " << kWidth << " "
      << kHeight << "\">\n";
  out << "  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "  <line x1=\"" << kMargin << "\" y1=\"" << y_of(0.0) << "\" x2=\""
      << kWidth - kMargin << "\" y2=\"" << y_of(0.0)
      << "\" stroke=\"#888\"/>\n";

  const char* colors[3] = {"#1f77b4", "#ff7f0e", "#2ca02c"};
  const std::optional<double> ScoreRecord::* norms[3] = {
      &ScoreRecord::norm0, &ScoreRecord::norm1, &ScoreRecord::norm2};
  const bool ScoreRecord::* alarms[3] = {
      &ScoreRecord::alarm0, &ScoreRecord::alarm1, &ScoreRecord::alarm2};

  for (int order = 0; order < 3; ++order) {
    std::string points;
    for (const ScoreRecord& rec : records) {
      if (const auto& v = rec.*norms[order]) {
        points += format_g17(x_of(rec.t)) + "," + format_g17(y_of(*v)) + " ";
      }
    }
    if (!points.empty()) {
      out << "  <polyline fill=\"none\" stroke=\"" << colors[order]
          << "\" stroke-width=\"1\" points=\"" << points << "\"/>\n";
    }
  }
  for (int order = 0; order < 3; ++order) {
    for (const ScoreRecord& rec : records) {
      if (!(rec.*alarms[order])) continue;
      const auto& v = rec.*norms[order];
      const double y = v ? y_of(*v) : y_of(1.0);
      out << "  <circle cx=\"" << format_g17(x_of(rec.t)) << "\" cy=\""
          << format_g17(y) << "\" r=\"3\" fill=\"red\"/>\n";
    }
  }
  out << "</svg>\n";
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
}

}  // namespace dmdl
