#include "core/units.hpp"

#include <cmath>

#include "core/error.hpp"

namespace ppn {

double UnitSystem::coulomb_factor() const { return 1.0 / (4.0 * M_PI * epsilon0); }

void UnitSystem::validate() const {
  if (!(c > 0.0) || !(epsilon0 > 0.0) || !(hbar > 0.0)) {
    fail_invalid("unit system constants must be strictly positive");
  }
}

void PpnContext::validate() const {
  units.validate();
  if (!std::isfinite(gamma) || !std::isfinite(beta)) {
    fail_invalid("gamma and beta must be finite");
  }
  if (!(std::abs(chi()) < weak_field_limit)) {
    fail_domain("weak-field regime violated: |phi|/c^2 must stay below " +
                std::to_string(weak_field_limit));
  }
}

}  // namespace ppn
