#include "ddbb/solver.hpp"

#include <cmath>
#include <stdexcept>

namespace ddbb {

double end_gap(double lb, double ub) {
  if (lb > ub) throw std::invalid_argument("end_gap needs lb <= ub");
  if (lb == ub) return 0.0;
  const double denom = std::fabs(ub);
  if (denom == 0.0) return 100.0;
  return 100.0 * (denom - std::fabs(lb)) / denom;
}

}  // namespace ddbb
