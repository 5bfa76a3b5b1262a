#pragma once

#include <functional>
#include <string>
#include <vector>

namespace ppn::order {

// Certifies that a truncation agrees with an exact expression to a claimed
// order in a scale parameter by fitting the slope of log|exact - truncated|
// against log(lambda).  A residual decaying like lambda^-k fits slope -k.
struct ScalingProbe {
  std::vector<double> lambdas = {1.0, 2.0, 4.0, 8.0, 16.0, 32.0};
  std::function<double(double)> exact;
  std::function<double(double)> truncated;
  double claimed_order = 4.0;      // expected decay order k (residual ~ lambda^-k)
  double slope_tolerance = 0.2;
  double r_squared_min = 0.99;
  // Residuals below this multiple of machine epsilon (relative to the exact
  // value's magnitude) count as at the precision floor.
  double precision_floor_factor = 100.0;

  void validate() const;
};

enum class Verdict {
  Pass,
  Fail,
  ExactToPrecision,  // all residuals at the precision floor
  Degenerate,        // fewer than 4 usable residuals
};

struct OrderFit {
  double slope = 0.0;      // least-squares slope of log|res| vs log(lambda)
  double r_squared = 0.0;
  int points_used = 0;
  Verdict verdict = Verdict::Fail;
};

const char* verdict_name(Verdict v);

// Fits the residual decay of the probe.  The verdict compares the fitted
// slope against -claimed_order within slope_tolerance and requires
// r_squared >= r_squared_min.
OrderFit residual_order(const ScalingProbe& probe);

// PASS/FAIL record consumed by the CLI reporter.
struct ProbeRecord {
  std::string name;
  double slope = 0.0;
  double target = 0.0;  // expected slope, i.e. -claimed_order
  double r_squared = 0.0;
  Verdict verdict = Verdict::Fail;

  bool passed() const { return verdict == Verdict::Pass || verdict == Verdict::ExactToPrecision; }
};

}  // namespace ppn::order
