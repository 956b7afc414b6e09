#pragma once

// Deterministic forward sampling and estimator-recovery experiments.
//
// Generator contract (stable across platforms and releases): a 64-bit
// Mersenne Twister seeded with `seed`; uniforms are built as
// (engine() >> 11) * 2^-53, and a Bernoulli(p) draw is (uniform < p).
// Each record draws, in order, the exogenous variables along the topological
// order, then one q bit per incoming edge (declaration order) of each
// endogenous variable before evaluating its gate.  Identical
// (model, n, seed) therefore yields bit-identical datasets.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cheng/dataset.hpp"
#include "cheng/estimation.hpp"
#include "cheng/model.hpp"

namespace cheng {

// n records over the model's observed variables; unobserved variables are
// drawn but dropped from the output columns.
Dataset sample(const ChengModel& model, std::size_t n, std::uint64_t seed);

struct RecoveryReport {
  double true_power = 0.0;
  std::vector<PowerEstimate> estimates;        // one per seed
  std::optional<double> mean_abs_error;        // over Identified estimates
};

// Samples per seed, estimates (c, e) power of the given kind, and reports the
// mean absolute error against the model's analytic power.
RecoveryReport recovery(const ChengModel& model, const std::string& cause,
                        const std::string& effect, PowerKind kind, std::size_t n,
                        const std::vector<std::uint64_t>& seeds);

}  // namespace cheng
