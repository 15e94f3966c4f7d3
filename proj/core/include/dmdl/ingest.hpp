#pragma once

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "dmdl/detectors.hpp"

namespace dmdl {

/// A univariate series with optional date labels. Labels, when present,
/// are ISO dates (YYYY-MM-DD), strictly increasing, one per value.
struct Series {
  std::vector<double> values;
  std::vector<std::string> labels;
  std::string name;
};

/// Malformed or inconsistent input data (distinct from usage errors so
/// the CLI can map it to its own exit code).
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Generic CSV reader. Picks `value_column` from the header row; when
/// `date_column` is nonempty the rows are sorted by that column
/// (ascending) and duplicate dates are rejected. Errors carry the
/// offending line number.
Series ingest_csv(const std::string& path, const std::string& value_column,
                  const std::string& date_column = "");

struct EcdcIngestResult {
  Series series;
  std::size_t negatives_clamped = 0;
};

/// Reader for the ECDC daily-cases export layout: columns dateRep
/// (DD/MM/YYYY), cases, countriesAndTerritories (others ignored). Keeps
/// one country's rows, sorted by date ascending, dates converted to ISO.
/// Negative case counts (bookkeeping corrections) clamp to 0 and are
/// counted. Unknown country -> DataError listing the available names.
EcdcIngestResult ingest_ecdc(const std::string& path,
                             const std::string& country);

/// Columns "date,value" when the series has labels, else "t,value";
/// 17-significant-digit values.
void write_series_csv(const std::string& path, const Series& series);

/// Score trace: t,x,raw0,raw1,raw2,norm0,norm1,norm2,alarm0,alarm1,
/// alarm2,window_size,direction. x is the analyzed series value at each
/// record's t; absent scores emit empty fields; alarms emit 0/1.
void write_scores_csv(const std::string& path,
                      std::span<const double> analyzed,
                      std::span<const ScoreRecord> records);

}  // namespace dmdl
