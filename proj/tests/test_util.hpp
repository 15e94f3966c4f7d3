#pragma once

// Shared helpers for the test binaries: fixture loading and numeric
// comparison with explicit tolerances.

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"

namespace testutil {

inline std::string fixture_path(const std::string& name) {
  return std::string(DMDL_FIXTURES_DIR) + "/" + name;
}

inline std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline nlohmann::json load_json_fixture(const std::string& name) {
  return nlohmann::json::parse(read_text(fixture_path(name)));
}

struct Csv {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

// Minimal reader for the golden CSVs (no quoting needed there).
inline Csv load_csv_fixture(const std::string& name) {
  std::ifstream in(fixture_path(name));
  if (!in) throw std::runtime_error("cannot open fixture " + name);
  Csv out;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (first) {
      out.header = std::move(fields);
      first = false;
    } else {
      out.rows.push_back(std::move(fields));
    }
  }
  return out;
}

inline double to_d(const std::string& s) { return std::strtod(s.c_str(), nullptr); }

// Absolute-tolerance comparison that prints both values on failure.
inline bool near(double actual, double expected, double tol) {
  if (std::isnan(actual) || std::isnan(expected)) return false;
  return std::fabs(actual - expected) <= tol;
}

// Relative tolerance with an absolute floor for values near zero.
inline bool near_rel(double actual, double expected, double rel,
                     double abs_floor = 1e-12) {
  double scale = std::max(std::fabs(expected), 1.0) * rel;
  return std::fabs(actual - expected) <= std::max(scale, abs_floor);
}

}  // namespace testutil

#define CHECK_NEAR(actual, expected, tol)                                   \
  do {                                                                      \
    const double a_ = (actual);                                             \
    const double e_ = (expected);                                           \
    INFO("actual=" << a_ << " expected=" << e_ << " diff=" << (a_ - e_));   \
    CHECK(testutil::near(a_, e_, (tol)));                                   \
  } while (0)

#define REQUIRE_NEAR(actual, expected, tol)                                 \
  do {                                                                      \
    const double a_ = (actual);                                             \
    const double e_ = (expected);                                           \
    INFO("actual=" << a_ << " expected=" << e_ << " diff=" << (a_ - e_));   \
    REQUIRE(testutil::near(a_, e_, (tol)));                                 \
  } while (0)
