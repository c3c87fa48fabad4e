#pragma once

#include <vector>

#include "ccnacct/sim/config.hpp"
#include "ccnacct/sim/metrics.hpp"

namespace ccnacct {

// One deterministic run; the report is a pure function of config and seed.
MetricsReport run(const SimConfig& config);

// Runs config once per seed. The parallel version spreads seeds over OpenMP
// threads; the serial one is the reference it is tested against.
std::vector<MetricsReport> run_sweep(const SimConfig& config, const std::vector<std::uint64_t>& seeds);
std::vector<MetricsReport> run_sweep_serial(const SimConfig& config,
                                            const std::vector<std::uint64_t>& seeds);

}  // namespace ccnacct
