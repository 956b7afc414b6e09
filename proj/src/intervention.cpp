#include "cheng/intervention.hpp"

namespace cheng {

ChengModel intervene(const ChengModel& model, const std::string& variable, int value) {
  int target = model.variable_index(variable);
  if (value != 0 && value != 1)
    throw Error(ErrorCode::InvalidQuery, "intervention value must be 0 or 1");

  ModelSpec spec;
  spec.variables = model.variables();
  spec.variables[target].base_rate = static_cast<double>(value);
  for (const auto& e : model.edges())
    if (e.target != variable) spec.edges.push_back(e);
  // Scopes never dangle: a preventer's scope only names edges into its own
  // target, and edges into other targets were kept wholesale.
  return build_model(spec);
}

}  // namespace cheng
