#include "dmdl/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "dmdl/format.hpp"

namespace dmdl {

namespace {

std::vector<std::string> read_lines(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open '" + path + "'");
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(line);
  }
  return lines;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char ch = line[i];
    if (quoted) {
      if (ch == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur += ch;
      }
    } else if (ch == '"') {
      quoted = true;
    } else if (ch == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  out.push_back(cur);
  return out;
}

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t");
  return s.substr(first, last - first + 1);
}

double parse_number(const std::string& raw, std::size_t line_no) {
  const std::string s = trim(raw);
  double value = 0.0;
  const auto [ptr, ec] =
      std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    throw DataError("line " + std::to_string(line_no) + ": cannot parse '" +
                    raw + "' as a number");
  }
  return value;
}

std::size_t find_column(const std::vector<std::string>& header,
                        const std::string& name) {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (trim(header[i]) == name) return i;
  }
  std::string available;
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (i) available += ", ";
    available += trim(header[i]);
  }
  throw DataError("column '" + name + "' not found; available: " + available);
}

void require_field(const std::vector<std::string>& fields, std::size_t idx,
                   std::size_t line_no) {
  if (idx >= fields.size()) {
    throw DataError("line " + std::to_string(line_no) +
                    ": too few columns");
  }
}

}  // namespace

Series ingest_csv(const std::string& path, const std::string& value_column,
                  const std::string& date_column) {
  const std::vector<std::string> lines = read_lines(path);
  if (lines.empty()) throw DataError("'" + path + "' is empty");

  const std::vector<std::string> header = split_csv(lines[0]);
  const std::size_t value_idx = find_column(header, value_column);
  const bool dated = !date_column.empty();
  const std::size_t date_idx = dated ? find_column(header, date_column) : 0;

  struct Row {
    std::string date;
    double value;
    std::size_t line_no;
  };
  std::vector<Row> rows;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    const std::size_t line_no = i + 1;
    const std::vector<std::string> fields = split_csv(lines[i]);
    require_field(fields, value_idx, line_no);
    Row row;
    row.value = parse_number(fields[value_idx], line_no);
    row.line_no = line_no;
    if (dated) {
      require_field(fields, date_idx, line_no);
      row.date = trim(fields[date_idx]);
    }
    rows.push_back(std::move(row));
  }

  if (dated) {
    std::stable_sort(rows.begin(), rows.end(),
                     [](const Row& a, const Row& b) { return a.date < b.date; });
    for (std::size_t i = 1; i < rows.size(); ++i) {
      if (rows[i].date == rows[i - 1].date) {
        throw DataError("line " + std::to_string(rows[i].line_no) +
                        ": duplicate date '" + rows[i].date + "'");
      }
    }
  }

  Series out;
  out.name = value_column;
  out.values.reserve(rows.size());
  if (dated) out.labels.reserve(rows.size());
  for (const Row& row : rows) {
    out.values.push_back(row.value);
    if (dated) out.labels.push_back(row.date);
  }
  return out;
}

namespace {

std::string ecdc_date_to_iso(const std::string& raw, std::size_t line_no) {
  unsigned day = 0;
  unsigned month = 0;
  unsigned year = 0;
  char tail = 0;
  if (std::sscanf(raw.c_str(), "%u/%u/%u%c", &day, &month, &year, &tail) !=
          3 ||
      day < 1 || day > 31 || month < 1 || month > 12 || year < 1000 ||
      year > 9999) {
    throw DataError("line " + std::to_string(line_no) + ": cannot parse '" +
                    raw + "' as DD/MM/YYYY");
  }
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%04u-%02u-%02u", year, month, day);
  return buf;
}

}  // namespace

EcdcIngestResult ingest_ecdc(const std::string& path,
                             const std::string& country) {
  const std::vector<std::string> lines = read_lines(path);
  if (lines.empty()) throw DataError("'" + path + "' is empty");

  const std::vector<std::string> header = split_csv(lines[0]);
  const std::size_t date_idx = find_column(header, "dateRep");
  const std::size_t cases_idx = find_column(header, "cases");
  const std::size_t country_idx =
      find_column(header, "countriesAndTerritories");

  struct Row {
    std::string date;
    double cases;
    std::size_t line_no;
  };
  std::vector<Row> rows;
  std::set<std::string> seen_countries;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    const std::size_t line_no = i + 1;
    const std::vector<std::string> fields = split_csv(lines[i]);
    require_field(fields, country_idx, line_no);
    const std::string row_country = trim(fields[country_idx]);
    seen_countries.insert(row_country);
    if (row_country != country) continue;
    require_field(fields, date_idx, line_no);
    require_field(fields, cases_idx, line_no);
    Row row;
    row.date = ecdc_date_to_iso(trim(fields[date_idx]), line_no);
    row.cases = parse_number(fields[cases_idx], line_no);
    row.line_no = line_no;
    rows.push_back(std::move(row));
  }

  if (rows.empty()) {
    std::string available;
    for (const std::string& name : seen_countries) {
      if (!available.empty()) available += ", ";
      available += name;
    }
    throw DataError("unknown country '" + country +
                    "'; available: " + available);
  }

  std::stable_sort(rows.begin(), rows.end(),
                   [](const Row& a, const Row& b) { return a.date < b.date; });
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (rows[i].date == rows[i - 1].date) {
      throw DataError("line " + std::to_string(rows[i].line_no) +
                      ": duplicate date '" + rows[i].date + "'");
    }
  }

  EcdcIngestResult out;
  out.series.name = country;
  out.series.values.reserve(rows.size());
  out.series.labels.reserve(rows.size());
  for (const Row& row : rows) {
    double v = row.cases;
    if (v < 0.0) {
      v = 0.0;
      ++out.negatives_clamped;
    }
    out.series.values.push_back(v);
    out.series.labels.push_back(row.date);
  }
  return out;
}

void write_series_csv(const std::string& path, const Series& series) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write '" + path + "'");
  const bool dated = !series.labels.empty();
  out << (dated ? "date,value\n" : "t,value\n");
  for (std::size_t i = 0; i < series.values.size(); ++i) {
    if (dated) {
      out << series.labels[i];
    } else {
      out << i;
    }
    out << ',' << format_g17(series.values[i]) << '\n';
  }
  if (!out) throw DataError("cannot write '" + path + "'");
}

namespace {

void put_opt(std::ostream& out, const std::optional<double>& v) {
  out << ',';
  if (v) out << format_g17(*v);
}

}  // namespace

void write_scores_csv(const std::string& path,
                      std::span<const double> analyzed,
                      std::span<const ScoreRecord> records) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write '" + path + "'");
  out << "t,x,raw0,raw1,raw2,norm0,norm1,norm2,"
         "alarm0,alarm1,alarm2,window_size,direction\n";
  for (const ScoreRecord& rec : records) {
    const auto idx = static_cast<std::size_t>(rec.t);
    if (rec.t < 0 || idx >= analyzed.size()) {
      throw std::invalid_argument("record index outside the analyzed series");
    }
    out << rec.t << ',' << format_g17(analyzed[idx]);
    put_opt(out, rec.raw0);
    put_opt(out, rec.raw1);
    put_opt(out, rec.raw2);
    put_opt(out, rec.norm0);
    put_opt(out, rec.norm1);
    put_opt(out, rec.norm2);
    out << ',' << (rec.alarm0 ? 1 : 0) << ',' << (rec.alarm1 ? 1 : 0) << ','
        << (rec.alarm2 ? 1 : 0) << ',' << rec.window_size << ','
        << to_string(rec.direction) << '\n';
  }
  if (!out) throw DataError("cannot write '" + path + "'");
}

}  // namespace dmdl
