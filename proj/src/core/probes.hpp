#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "core/order.hpp"
#include "core/states.hpp"
#include "core/units.hpp"

namespace ppn::probes {

// Settings shared by the named order probes.  States are pinned in absolute
// code units derived from these values; each probe documents its own scaling
// convention (phi is held fixed in velocity^2 units while c -> lambda c, so
// phi/c^2 falls off like lambda^-2 and every post-Newtonian order contributes
// one power of lambda^-2).
struct ProbeSettings {
  UnitSystem units;            // c of the lambda = 1 baseline
  double gamma = 1.0;
  double beta = 1.0;
  double chi0 = -1.0e-3;       // phi/c^2 at lambda = 1
  double m1 = 1.0;
  double m2 = 2.0;
  double e = 1.0;
  std::uint64_t seed = 0;
  std::vector<double> lambdas = {1.0, 2.0, 4.0, 8.0, 16.0, 32.0};
};

std::vector<std::string> probe_names();

order::ProbeRecord run_probe(const std::string& name, const ProbeSettings& settings);
std::vector<order::ProbeRecord> run_all_probes(const ProbeSettings& settings);

// Criterion helpers ------------------------------------------------------

// Pointwise Legendre-oracle residuals at the baseline c, normalised by the
// Newtonian kinetic scale, at `count` sampled phase points.
std::vector<double> legendre_pointwise_residuals(const ProbeSettings& settings, int count,
                                                 double momentum_cap = 0.005);

// Richardson-extrapolated O(c^-2) coefficient of the composite-identity
// defect under the flat (naive) internal split, together with the closed-form
// prediction gamma (2 p_r^2/2mu + e1 e2/(4 pi eps0 r)) phi.
struct FlatSplitCoefficient {
  double measured = 0.0;
  double expected = 0.0;
};
FlatSplitCoefficient composite_flat_split_coefficient(const ProbeSettings& settings);

}  // namespace ppn::probes
