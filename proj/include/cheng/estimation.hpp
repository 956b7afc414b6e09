#pragma once

// Data-driven causal-power estimation: the facilitating-power ratio
// dP / (1 - P(E|C=0)) and its preventive counterpart -dP / P(E|F=0), with
// model-guided conditioning-set selection, outer-function dispatch, and
// structural identifiability checks.

#include <optional>
#include <string>

#include "cheng/dataset.hpp"
#include "cheng/model.hpp"

namespace cheng {

enum class PowerKind { Direct, Total };

enum class EstimateStatus { Identified, NotIdentified, Undefined };

const char* to_string(PowerKind kind);
const char* to_string(EstimateStatus status);

struct PowerEstimate {
  std::optional<double> value;  // present iff status == Identified
  PowerKind kind = PowerKind::Direct;
  Polarity polarity = Polarity::Facilitating;
  PartialAssignment conditioning;
  EstimateStatus status = EstimateStatus::Identified;
  std::string reason;                 // empty when Identified
  std::optional<double> delta_p;      // signed, in [-1, 1]
  std::optional<double> raw_value;    // out-of-range ratio kept for diagnostics
};

// Weighted conditional-frequency difference P(e=1|c=1,cond) - P(e=1|c=0,cond);
// nullopt when either stratum carries no weight.
std::optional<double> delta_p(const Dataset& data, const std::string& c, const std::string& e,
                              const PartialAssignment& cond = {});

// Facilitating power estimator.  Undefined on empty strata or a ceiling
// baseline (P(e|c=0) = 1); ratios outside [0,1] are reported as
// NotIdentified("model misfit") with the raw value attached, never clamped.
PowerEstimate estimate_facilitating(const Dataset& data, const std::string& c,
                                    const std::string& e, const PartialAssignment& cond = {});

// Preventive power estimator; Undefined on empty strata or a floor baseline
// (P(e|f=0) = 0).
PowerEstimate estimate_preventive(const Dataset& data, const std::string& f, const std::string& e,
                                  const PartialAssignment& cond = {});

// Zero-conditioning set: every observed variable with a directed path to the
// effect that the cause does not influence.
PartialAssignment conditioning_set(const ChengModel& model, const std::string& c,
                                   const std::string& e);

struct IdentifiabilityResult {
  bool identified = true;
  std::string reason;  // "deterministic intermediate" | "hidden preventer on pathway" | ...
};

// Structural estimability of the (c, e) power from observed frequencies:
// fails when an observed pathway variable is a deterministic function of its
// parents, or when an observed facilitating edge on a pathway into an
// observed variable is interfered with by an unobserved preventer.
IdentifiabilityResult identifiability(const ChengModel& model, const std::string& c,
                                      const std::string& e);

// Full pipeline: identifiability, conditioning-set construction, dispatch on
// the outer form of the reduced equation (sum -> facilitating ratio,
// product -> preventive ratio).
PowerEstimate estimate_power(const ChengModel& model, const Dataset& data, const std::string& c,
                             const std::string& e, PowerKind kind);

}  // namespace cheng
