#include "paev/report.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

#include "paev/degrees.hpp"
#include "paev/errors.hpp"

namespace paev {

std::vector<DegreeFrequencyRow> degree_distribution_report(const DegreeSnapshot& snapshot) {
  const JointCounts counts = joint_counts(snapshot);
  const double n = static_cast<double>(snapshot.node_count());
  std::vector<DegreeFrequencyRow> rows;
  auto emit = [&](const char* column, const std::vector<std::size_t>& marginal) {
    for (std::size_t d = 0; d < marginal.size(); ++d) {
      if (marginal[d] == 0) continue;
      rows.push_back({column, d, marginal[d], static_cast<double>(marginal[d]) / n});
    }
  };
  emit("in", counts.in_marginal);
  emit("out", counts.out_marginal);
  return rows;
}

void write_degree_report_csv(std::ostream& out, const std::vector<DegreeFrequencyRow>& rows) {
  out << "column,degree,count,frequency\n";
  char buf[32];
  for (const DegreeFrequencyRow& r : rows) {
    std::snprintf(buf, sizeof buf, "%.10g", r.frequency);
    out << r.column << ',' << r.degree << ',' << r.count << ',' << buf << '\n';
  }
}

double log_log_slope(const std::vector<DegreeFrequencyRow>& rows, const std::string& column,
                     std::size_t lo, std::size_t hi) {
  if (lo == 0 || hi < lo) throw InvalidArgument("log-log slope needs 1 <= lo <= hi");
  // Geometric bins, ten per decade; each point is the mean frequency per
  // integer degree of a bin, so sparse singleton degrees do not flatten the fit.
  constexpr double kPerDecade = 10.0;
  const auto bin_of = [&](std::size_t d) {
    return static_cast<std::size_t>(
        std::floor(kPerDecade * std::log10(static_cast<double>(d) / static_cast<double>(lo)) +
                   1e-9));
  };
  const std::size_t bins = bin_of(hi) + 1;
  std::vector<double> mass(bins, 0.0);
  std::vector<std::size_t> first(bins, 0), last(bins, 0);
  for (std::size_t d = lo; d <= hi; ++d) {
    const std::size_t b = bin_of(d);
    if (first[b] == 0) first[b] = d;
    last[b] = d;
  }
  for (const DegreeFrequencyRow& r : rows) {
    if (r.column != column || r.degree < lo || r.degree > hi) continue;
    mass[bin_of(r.degree)] += r.frequency;
  }
  // Poisson regression of bin mass on log degree, empty bins included, by
  // iteratively reweighted least squares; the fit is invariant to the scale
  // of the masses, so frequencies stand in for counts.
  std::vector<double> x(bins), width(bins);
  std::size_t occupied = 0;
  double total = 0.0, total_width = 0.0;
  for (std::size_t b = 0; b < bins; ++b) {
    width[b] = static_cast<double>(last[b] - first[b] + 1);
    x[b] = 0.5 * std::log(static_cast<double>(first[b]) * static_cast<double>(last[b]));
    occupied += mass[b] > 0.0;
    total += mass[b];
    total_width += width[b];
  }
  if (occupied < 2) throw DataError("log-log slope needs at least two occupied bins in range");
  double slope = 0.0;
  double level = std::log(total / total_width);
  for (int iter = 0; iter < 200; ++iter) {
    double u0 = 0.0, u1 = 0.0, i00 = 0.0, i01 = 0.0, i11 = 0.0;
    for (std::size_t b = 0; b < bins; ++b) {
      const double mu = width[b] * std::exp(level + slope * x[b]);
      u0 += mass[b] - mu;
      u1 += (mass[b] - mu) * x[b];
      i00 += mu;
      i01 += mu * x[b];
      i11 += mu * x[b] * x[b];
    }
    const double det = i00 * i11 - i01 * i01;
    if (!(det > 0.0)) throw NumericalError("log-log slope fit is singular");
    const double d_level = (i11 * u0 - i01 * u1) / det;
    const double d_slope = (i00 * u1 - i01 * u0) / det;
    level += d_level;
    slope += d_slope;
    if (std::abs(d_slope) < 1e-12 && std::abs(d_level) < 1e-12) return slope;
  }
  throw NumericalError("log-log slope fit did not converge");
}

}  // namespace paev
