#pragma once

// Exact probabilistic semantics by enumeration: the joint distribution over
// all 2^n assignments, conditionals with a first-class Undefined result,
// verification of the Markov factorization, and analytic direct/total causal
// power.  Two independent routes compute the joint — per-gate elimination of
// the q bits, and enumeration over every q-bit configuration — and are held
// to agree within 1e-12.

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "cheng/model.hpp"

namespace cheng {

struct JointTable {
  std::vector<std::string> variables;  // declaration order
  std::vector<double> probs;           // 2^n entries

  // Row layout: the first variable occupies the most significant bit, so rows
  // enumerate assignments in lexicographic order 00..0, 00..1, ...
  int value_at(std::size_t row, int var_index) const {
    int n = static_cast<int>(variables.size());
    return static_cast<int>((row >> (n - 1 - var_index)) & 1u);
  }

  std::size_t rows() const { return probs.size(); }

  // Total probability of a partial assignment (names must exist).
  double mass(const PartialAssignment& event) const;
};

struct InferenceOptions {
  int max_variables = 20;  // enumeration cap
};

// P(v=1 | parent values).  `values` is a full per-variable 0/1 vector; only
// the parents of var_index are read.  Exact under q-bit independence: the
// expectation runs over subsets of active preventer bits, with the surviving
// facilitating terms collapsing to a noisy-OR product.
double gate_probability(const ChengModel& model, int var_index, const std::vector<int>& values);

// Joint by per-variable factors (exogenous base rates times gate probabilities).
JointTable joint(const ChengModel& model, const InferenceOptions& options = {});

// Joint by full enumeration of exogenous values and q-bit configurations,
// evaluating the structural equations in topological order.  Independent of
// gate_probability; used as the cross-checking route.
JointTable joint_by_qbit_enumeration(const ChengModel& model, const InferenceOptions& options = {});

// P(event | given); nullopt means Undefined (zero-probability condition).
std::optional<double> probability(const JointTable& table, const PartialAssignment& event,
                                  const PartialAssignment& given);
std::optional<double> probability(const ChengModel& model, const PartialAssignment& event,
                                  const PartialAssignment& given,
                                  const InferenceOptions& options = {});

struct MarkovReport {
  bool pass = true;
  std::vector<std::string> failures;
};

// Verifies, within 1e-9, that the table factorizes over the model's graph and
// that the exogenous variables are mutually independent.
MarkovReport markov_check(const ChengModel& model, const JointTable& table);

// The q of the direct edge cause->effect (facilitating preferred when both
// polarities exist).  Equals P(effect=1 | cause=1, other parents = 0) for a
// facilitating edge; for a preventive edge it is the power to prevent.
double direct_power(const ChengModel& model, const std::string& cause, const std::string& effect);

struct TotalPowerResult {
  double value = 0.0;            // conditional-definition route when defined
  Influence sense = Influence::None;  // Facilitating/Mixed report the power to produce,
                                      // Preventing the power to prevent
  double via_path_rule = 0.0;
  std::optional<double> via_conditional;
};

// Total causal power over all directed paths.  Computed two ways: (a) from
// the joint, conditioning on zero for every cause of the effect that the
// cause does not influence, and (b) by the path rule — the Boolean sum over
// contributing paths of the products of their q parameters.  A path with a
// preventive edge contributes only when that edge is the final one.
TotalPowerResult total_power(const ChengModel& model, const std::string& cause,
                             const std::string& effect, const InferenceOptions& options = {});

// CSV export: one column per variable plus "probability".
void write_joint_csv(const JointTable& table, std::ostream& os);

}  // namespace cheng
