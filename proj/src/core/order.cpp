#include "core/order.hpp"

#include <cmath>
#include <limits>

#include "core/error.hpp"

namespace ppn::order {

void ScalingProbe::validate() const {
  if (lambdas.size() < 5) fail_invalid("scaling grid needs at least 5 points");
  for (std::size_t i = 1; i < lambdas.size(); ++i) {
    if (!(lambdas[i] >= 2.0 * lambdas[i - 1])) {
      fail_invalid("scaling grid must increase by factors of at least 2");
    }
  }
  if (!(lambdas.front() > 0.0)) fail_invalid("scale factors must be positive");
  if (!exact || !truncated) fail_invalid("probe needs both evaluators");
}

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "PASS";
    case Verdict::Fail: return "FAIL";
    case Verdict::ExactToPrecision: return "EXACT";
    case Verdict::Degenerate: return "DEGENERATE";
  }
  return "?";
}

OrderFit residual_order(const ScalingProbe& probe) {
  probe.validate();
  constexpr double eps = std::numeric_limits<double>::epsilon();

  std::vector<double> log_lambda, log_res;
  int at_floor = 0;
  for (double lambda : probe.lambdas) {
    const double exact = probe.exact(lambda);
    const double truncated = probe.truncated(lambda);
    const double res = std::abs(exact - truncated);
    const double floor = probe.precision_floor_factor * eps * std::max(std::abs(exact), 1.0);
    if (res <= floor) {
      ++at_floor;
      continue;
    }
    log_lambda.push_back(std::log(lambda));
    log_res.push_back(std::log(res));
  }

  OrderFit fit;
  fit.points_used = static_cast<int>(log_lambda.size());
  if (at_floor == static_cast<int>(probe.lambdas.size())) {
    fit.verdict = Verdict::ExactToPrecision;
    fit.r_squared = 1.0;
    return fit;
  }
  if (fit.points_used < 4) {
    fit.verdict = Verdict::Degenerate;
    return fit;
  }

  const int n = fit.points_used;
  double sx = 0.0, sy = 0.0;
  for (int i = 0; i < n; ++i) {
    sx += log_lambda[i];
    sy += log_res[i];
  }
  const double mx = sx / n, my = sy / n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (int i = 0; i < n; ++i) {
    const double dx = log_lambda[i] - mx;
    const double dy = log_res[i] - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  fit.slope = sxy / sxx;
  fit.r_squared = syy > 0.0 ? (sxy * sxy) / (sxx * syy) : 1.0;

  const bool slope_ok = std::abs(fit.slope - (-probe.claimed_order)) <= probe.slope_tolerance;
  const bool fit_ok = fit.r_squared >= probe.r_squared_min;
  fit.verdict = (slope_ok && fit_ok) ? Verdict::Pass : Verdict::Fail;
  return fit;
}

}  // namespace ppn::order
