#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "paev/types.hpp"

namespace paev {

struct DegreeFrequencyRow {
  std::string column;  // "in" or "out"
  std::size_t degree = 0;
  std::size_t count = 0;
  double frequency = 0.0;  // count / node_count
};

/// In-degree rows then out-degree rows, each by increasing degree; degrees
/// with zero count are omitted.
std::vector<DegreeFrequencyRow> degree_distribution_report(const DegreeSnapshot& snapshot);

/// Header `column,degree,count,frequency`.
void write_degree_report_csv(std::ostream& out, const std::vector<DegreeFrequencyRow>& rows);

/// Slope of log frequency against log degree over [lo, hi] for one column:
/// frequencies are summed over geometric bins (ten per decade) and fitted by
/// Poisson regression on log degree, empty bins included.  Throws DataError
/// with fewer than 2 occupied bins.
double log_log_slope(const std::vector<DegreeFrequencyRow>& rows, const std::string& column,
                     std::size_t lo, std::size_t hi);

}  // namespace paev
