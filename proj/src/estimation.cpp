#include "cheng/estimation.hpp"

#include <algorithm>
#include <cmath>

#include "cheng/bool_expr.hpp"
#include "cheng/inference.hpp"

namespace cheng {

const char* to_string(PowerKind kind) {
  return kind == PowerKind::Direct ? "direct" : "total";
}

const char* to_string(EstimateStatus status) {
  switch (status) {
    case EstimateStatus::Identified: return "Identified";
    case EstimateStatus::NotIdentified: return "NotIdentified";
    case EstimateStatus::Undefined: return "Undefined";
  }
  return "Undefined";
}

std::optional<double> delta_p(const Dataset& data, const std::string& c, const std::string& e,
                              const PartialAssignment& cond) {
  data.column(e);
  PartialAssignment on = cond, off = cond;
  on[c] = 1;
  off[c] = 0;
  auto p1 = data.frequency({{e, 1}}, on);
  auto p0 = data.frequency({{e, 1}}, off);
  if (!p1 || !p0) return std::nullopt;
  return *p1 - *p0;
}

namespace {

PowerEstimate ratio_estimate(const Dataset& data, const std::string& c, const std::string& e,
                             const PartialAssignment& cond, Polarity polarity) {
  PowerEstimate est;
  est.polarity = polarity;
  est.conditioning = cond;

  data.column(e);
  PartialAssignment on = cond, off = cond;
  on[c] = 1;
  off[c] = 0;
  auto p1 = data.frequency({{e, 1}}, on);
  auto p0 = data.frequency({{e, 1}}, off);
  if (!p1 || !p0) {
    est.status = EstimateStatus::Undefined;
    est.reason = "empty stratum";
    return est;
  }
  est.delta_p = *p1 - *p0;

  double ratio;
  if (polarity == Polarity::Facilitating) {
    double denom = 1.0 - *p0;
    if (denom <= 0.0) {
      est.status = EstimateStatus::Undefined;
      est.reason = "ceiling effect";
      return est;
    }
    ratio = *est.delta_p / denom;
  } else {
    if (*p0 <= 0.0) {
      est.status = EstimateStatus::Undefined;
      est.reason = "floor effect";
      return est;
    }
    ratio = -*est.delta_p / *p0;
  }

  if (ratio < 0.0 || ratio > 1.0) {
    est.status = EstimateStatus::NotIdentified;
    est.reason = "model misfit";
    est.raw_value = ratio;
    return est;
  }
  est.status = EstimateStatus::Identified;
  est.value = ratio;
  return est;
}

}  // namespace

PowerEstimate estimate_facilitating(const Dataset& data, const std::string& c,
                                    const std::string& e, const PartialAssignment& cond) {
  return ratio_estimate(data, c, e, cond, Polarity::Facilitating);
}

PowerEstimate estimate_preventive(const Dataset& data, const std::string& f, const std::string& e,
                                  const PartialAssignment& cond) {
  return ratio_estimate(data, f, e, cond, Polarity::Preventive);
}

PartialAssignment conditioning_set(const ChengModel& model, const std::string& c,
                                   const std::string& e) {
  int cause = model.variable_index(c);
  int effect = model.variable_index(e);
  PartialAssignment cond;
  for (int v = 0; v < model.variable_count(); ++v) {
    if (v == cause || v == effect) continue;
    if (!model.is_observed(v)) continue;
    if (!model.reachable(v, effect)) continue;
    if (model.reachable(cause, v)) continue;
    cond[model.variable(v).name] = 0;
  }
  return cond;
}

namespace {

// A variable whose local gate yields probability 0 or 1 for every parent
// assignment is a deterministic function of its parents.
bool deterministic_gate(const ChengModel& model, int var_index) {
  if (model.is_exogenous(var_index)) return false;
  std::vector<int> parents;
  for (int e : model.edges_into(var_index)) parents.push_back(model.source_index(e));
  std::sort(parents.begin(), parents.end());
  parents.erase(std::unique(parents.begin(), parents.end()), parents.end());

  std::vector<int> values(model.variable_count(), 0);
  const std::size_t combos = std::size_t{1} << parents.size();
  for (std::size_t combo = 0; combo < combos; ++combo) {
    for (std::size_t i = 0; i < parents.size(); ++i) values[parents[i]] = (combo >> i) & 1u;
    double p = gate_probability(model, var_index, values);
    if (p != 0.0 && p != 1.0) return false;
  }
  return true;
}

// True when the reduced equation cannot evaluate to 1 under the fixed bits,
// for any assignment of the remaining variable and q literals.  Fixed
// endogenous variables that were substituted away are simply absent, which
// keeps the test conservative.
bool structurally_zero(const BoolExpr& expr, const PartialAssignment& fixed) {
  std::vector<std::string> free_vars;
  std::vector<int> free_qbits;
  auto collect = [&](auto&& self, const BoolExpr& node) -> void {
    switch (node.kind()) {
      case ExprKind::VarLiteral:
        if (!fixed.count(node.var_name()) &&
            std::find(free_vars.begin(), free_vars.end(), node.var_name()) == free_vars.end())
          free_vars.push_back(node.var_name());
        break;
      case ExprKind::QLiteral:
        if (std::find(free_qbits.begin(), free_qbits.end(), node.edge_index()) == free_qbits.end())
          free_qbits.push_back(node.edge_index());
        break;
      default:
        for (const auto& c : node.children()) self(self, c);
    }
  };
  collect(collect, expr);

  const std::size_t bits = free_vars.size() + free_qbits.size();
  if (bits > 24) return false;  // too many literals to certify; assume satisfiable
  BitAssignment assignment;
  for (const auto& [name, value] : fixed) assignment.vars[name] = value;
  for (std::size_t mask = 0; mask < (std::size_t{1} << bits); ++mask) {
    for (std::size_t i = 0; i < free_vars.size(); ++i)
      assignment.vars[free_vars[i]] = (mask >> i) & 1u;
    for (std::size_t i = 0; i < free_qbits.size(); ++i)
      assignment.qbits[free_qbits[i]] = (mask >> (free_vars.size() + i)) & 1u;
    if (evaluate(expr, assignment) == 1) return false;
  }
  return true;
}

}  // namespace

IdentifiabilityResult identifiability(const ChengModel& model, const std::string& c,
                                      const std::string& e) {
  model.variable_index(c);
  int effect = model.variable_index(e);
  auto paths = directed_paths(model, c, e);
  if (paths.empty()) return {false, "no directed path"};

  std::vector<int> pathway_vars;
  auto note = [&](int v) {
    if (std::find(pathway_vars.begin(), pathway_vars.end(), v) == pathway_vars.end())
      pathway_vars.push_back(v);
  };
  for (const auto& path : paths) {
    note(model.source_index(path.front()));
    for (int edge : path) note(model.target_index(edge));
  }

  // Condition (i): no observed pathway variable (the effect aside) may be a
  // deterministic function of its causes; conditioning strata collapse there.
  for (int v : pathway_vars) {
    if (v == effect || !model.is_observed(v)) continue;
    if (deterministic_gate(model, v)) return {false, "deterministic intermediate"};
  }

  // Condition (ii): an unobserved preventer interfering with an observed
  // facilitating edge of the pathway hides part of the transmitted power.
  for (const auto& path : paths) {
    for (int edge : path) {
      if (model.edges()[edge].polarity != Polarity::Facilitating) continue;
      int src = model.source_index(edge);
      int dst = model.target_index(edge);
      if (!model.is_observed(src) || !model.is_observed(dst)) continue;
      for (int pe : model.edges_into(dst)) {
        if (model.edges()[pe].polarity != Polarity::Preventive) continue;
        if (model.is_observed(model.source_index(pe))) continue;
        if (model.scope_covers(pe, edge)) return {false, "hidden preventer on pathway"};
      }
    }
  }

  return {true, ""};
}

PowerEstimate estimate_power(const ChengModel& model, const Dataset& data, const std::string& c,
                             const std::string& e, PowerKind kind) {
  for (const auto& name : data.variables) {
    int v = model.variable_index(name);
    if (!model.is_observed(v))
      throw Error(ErrorCode::DataModelMismatch,
                  "dataset column '" + name + "' is unobserved in the model");
  }
  data.column(c);
  data.column(e);

  auto ident = identifiability(model, c, e);
  if (!ident.identified) {
    PowerEstimate est;
    est.kind = kind;
    est.status = EstimateStatus::NotIdentified;
    est.reason = ident.reason;
    return est;
  }

  BoolExpr reduced = reduce(model, c, e);
  OuterForm form = outer_form(reduced);
  PartialAssignment cond = conditioning_set(model, c, e);

  int effect = model.variable_index(e);
  if (form == OuterForm::Sum) {
    if (kind == PowerKind::Direct) {
      // Zero the remaining observed direct co-parents, influenced or not, to
      // shut every indirect route into the effect.
      for (int edge : model.edges_into(effect)) {
        int src = model.source_index(edge);
        if (model.variable(src).name == c || !model.is_observed(src)) continue;
        cond[model.variable(src).name] = 0;
      }
    }
    PowerEstimate est = estimate_facilitating(data, c, e, cond);
    est.kind = kind;
    if (est.status == EstimateStatus::Undefined && est.reason == "empty stratum") {
      // Intervention-rescue form: when the cause-absent stratum is empty but
      // the equations force the effect to 0 there, the baseline is 0 and the
      // power is the plain conditional frequency under the cause.
      PartialAssignment fixed = cond;
      fixed[c] = 0;
      PartialAssignment on = cond;
      on[c] = 1;
      auto p1 = data.frequency({{e, 1}}, on);
      if (p1 && structurally_zero(reduced, fixed)) {
        est.delta_p = *p1;
        est.raw_value.reset();
        if (*p1 < 0.0 || *p1 > 1.0) {
          est.status = EstimateStatus::NotIdentified;
          est.reason = "model misfit";
          est.raw_value = *p1;
        } else {
          est.status = EstimateStatus::Identified;
          est.reason.clear();
          est.value = *p1;
        }
      }
    }
    return est;
  }

  // Product dispatch: the preventive ratio divides by the background rate, so
  // facilitating co-causes stay free and only observed preventive influences
  // on the effect are silenced.
  PartialAssignment preventive_cond;
  for (const auto& [name, zero] : cond) {
    if (influence_class(model, name, e).net == Influence::Preventing)
      preventive_cond[name] = zero;
  }
  PowerEstimate est = estimate_preventive(data, c, e, preventive_cond);
  est.kind = kind;
  return est;
}

}  // namespace cheng
