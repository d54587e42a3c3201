#include "paev/roots.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

#include "paev/errors.hpp"

namespace paev {

RootResult solve_expanding_bisection(const std::function<double(double)>& residual,
                                     const RootOptions& options) {
  RootResult out;
  auto eval = [&](double x) {
    ++out.evaluations;
    const double r = residual(x);
    if (!std::isfinite(r)) {
      std::ostringstream os;
      os << options.label << ": residual not finite at " << x;
      throw NumericalError(os.str());
    }
    return r;
  };

  double lo = options.lo;
  double hi = options.hi;
  double f_lo = eval(lo);
  double f_hi = eval(hi);
  while ((f_lo > 0.0) == (f_hi > 0.0) && f_hi != 0.0) {
    if (hi >= options.hi_cap) {
      std::ostringstream os;
      os << options.label << ": no root, residual keeps sign on [" << options.lo
         << ", " << options.hi_cap << "]";
      throw NumericalError(os.str());
    }
    lo = hi;
    f_lo = f_hi;
    hi = std::min(2.0 * hi, options.hi_cap);
    f_hi = eval(hi);
  }
  if (f_hi == 0.0) {
    out.root = out.bracket_lo = out.bracket_hi = hi;
    return out;
  }
  if (f_lo == 0.0) {
    out.root = out.bracket_lo = out.bracket_hi = lo;
    return out;
  }

  if (options.monotone_checks > 1) {
    // Scan the bracket on a log grid: the residual must change sign exactly
    // once and be strictly monotone from lo through the sign change.  The
    // bisection then runs on the grid cell holding the root.
    const std::size_t m = options.monotone_checks;
    const double log_lo = std::log(lo);
    const double log_hi = std::log(hi);
    std::vector<double> xs(m);
    std::vector<double> fs(m);
    for (std::size_t i = 0; i < m; ++i) {
      xs[i] = i == 0 ? lo
                     : (i + 1 == m ? hi
                                   : std::exp(log_lo + (log_hi - log_lo) *
                                                           static_cast<double>(i) /
                                                           static_cast<double>(m - 1)));
      fs[i] = i == 0 ? f_lo : (i + 1 == m ? f_hi : eval(xs[i]));
    }
    const bool lo_positive = f_lo > 0.0;
    std::size_t cell = m - 1;
    for (std::size_t i = 1; i < m; ++i) {
      if (fs[i] == 0.0 || (fs[i] > 0.0) != lo_positive) {
        cell = i;
        break;
      }
    }
    for (std::size_t i = cell + 1; i < m; ++i) {
      if (fs[i] != 0.0 && (fs[i] > 0.0) == lo_positive) {
        std::ostringstream os;
        os << options.label << ": residual changes sign more than once on [" << lo << ", "
           << hi << "], again near " << xs[i];
        throw NumericalError(os.str());
      }
    }
    int direction = 0;
    for (std::size_t i = 1; i <= cell; ++i) {
      const int dir = fs[i] > fs[i - 1] ? 1 : (fs[i] < fs[i - 1] ? -1 : 0);
      if (dir == 0 || (direction != 0 && dir != direction)) {
        std::ostringstream os;
        os << options.label << ": residual not strictly monotone on [" << lo << ", "
           << xs[cell] << "] near " << xs[i];
        throw NumericalError(os.str());
      }
      direction = dir;
    }
    if (fs[cell] == 0.0) {
      out.root = out.bracket_lo = out.bracket_hi = xs[cell];
      return out;
    }
    lo = xs[cell - 1];
    f_lo = fs[cell - 1];
    hi = xs[cell];
    f_hi = fs[cell];
  }

  out.bracket_lo = lo;
  out.bracket_hi = hi;
  while (hi - lo > options.abs_tol) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double f_mid = eval(mid);
    if (f_mid == 0.0) {
      lo = hi = mid;
      break;
    }
    if ((f_mid > 0.0) == (f_lo > 0.0)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
  }
  out.root = 0.5 * (lo + hi);
  return out;
}

MaximizeResult maximize_grid_golden(const std::function<double(double)>& objective,
                                    double lo, double hi,
                                    const MaximizeOptions& options) {
  if (!(hi > lo)) throw InvalidArgument("maximisation interval is empty");
  MaximizeResult out;
  auto eval = [&](double x) {
    ++out.evaluations;
    const double v = objective(x);
    return std::isnan(v) ? -std::numeric_limits<double>::infinity() : v;
  };
  const std::size_t m = std::max<std::size_t>(options.grid_points, 3);
  std::vector<double> xs(m);
  std::vector<double> fs(m);
  std::size_t best = 0;
  out.grid_min = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < m; ++i) {
    xs[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(m - 1);
    fs[i] = eval(xs[i]);
    out.grid_min = std::min(out.grid_min, fs[i]);
    if (fs[i] > fs[best]) best = i;
  }
  double a = xs[best == 0 ? 0 : best - 1];
  double b = xs[best + 1 == m ? m - 1 : best + 1];

  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = eval(c);
  double fd = eval(d);
  while (b - a > options.tol) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = eval(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = eval(d);
    }
  }
  out.argmax = fc >= fd ? c : d;
  out.value = std::max(fc, fd);
  if (fs[best] > out.value) {
    out.argmax = xs[best];
    out.value = fs[best];
  }
  return out;
}

}  // namespace paev
