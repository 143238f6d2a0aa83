#pragma once

#include <string>

namespace dilatron {

/// Outcome of one numerical verification pass.
struct DeviationReport {
  std::string name;
  long long checked = 0;          // histories / basis elements / points visited
  double max_abs_deviation = 0.0;
  double threshold = 0.0;
  bool pass = false;
  int dim = 0;  // ambient dimension for operator checks, 0 otherwise
};

}  // namespace dilatron
