#pragma once

// Graph-surgery interventions: delete every edge into the target variable and
// pin it to the requested value with a degenerate base rate.  The input model
// is untouched; chains of what-if edits compose freely.

#include <string>

#include "cheng/model.hpp"

namespace cheng {

ChengModel intervene(const ChengModel& model, const std::string& variable, int value);

}  // namespace cheng
