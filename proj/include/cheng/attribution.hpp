#pragma once

// Attribution statistics over weighted frequency data: the population
// attributable fraction, the probability of causation given exposure and
// outcome, and the forecast effect frequency after removing the cause.
// All three return nullopt (Undefined) on empty strata or a zero-probability
// effect.

#include <optional>
#include <string>

#include "cheng/dataset.hpp"

namespace cheng {

// dP * P(C=1) / P(E=1): the fraction of effect occurrences the cause alone
// accounts for.
std::optional<double> paf(const Dataset& data, const std::string& c, const std::string& e);

// dP * P(C=1) / P(E=1, C=1): probability the cause alone produced the effect,
// given both occurred.
std::optional<double> prob_causation(const Dataset& data, const std::string& c,
                                     const std::string& e);

// P(E=1) - dP * P(C=1) = P(E) * (1 - PAF): effect frequency if the cause were
// removed from every unit.
std::optional<double> forecast_removal(const Dataset& data, const std::string& c,
                                       const std::string& e);

}  // namespace cheng
