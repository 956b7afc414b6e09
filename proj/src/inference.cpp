#include "cheng/inference.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <ostream>
#include <sstream>

#include "cheng/bool_expr.hpp"
#include "cheng/intervention.hpp"

namespace cheng {

namespace {

constexpr double kFactorizationTolerance = 1e-9;

void check_size(const ChengModel& model, const InferenceOptions& options) {
  if (model.variable_count() > options.max_variables) {
    std::ostringstream os;
    os << "model has " << model.variable_count() << " variables, enumeration cap is "
       << options.max_variables;
    throw Error(ErrorCode::TooLarge, os.str());
  }
}

std::size_t row_of(const std::vector<int>& values) {
  std::size_t row = 0;
  for (int v : values) row = (row << 1) | static_cast<unsigned>(v);
  return row;
}

}  // namespace

double JointTable::mass(const PartialAssignment& event) const {
  std::vector<std::pair<int, int>> checks;
  for (const auto& [name, value] : event) {
    auto it = std::find(variables.begin(), variables.end(), name);
    if (it == variables.end())
      throw Error(ErrorCode::UnknownVariable, "unknown variable '" + name + "' in assignment");
    checks.emplace_back(static_cast<int>(it - variables.begin()), value ? 1 : 0);
  }
  double total = 0.0;
  for (std::size_t row = 0; row < probs.size(); ++row) {
    bool match = true;
    for (auto [idx, val] : checks)
      if (value_at(row, idx) != val) {
        match = false;
        break;
      }
    if (match) total += probs[row];
  }
  return total;
}

double gate_probability(const ChengModel& model, int var_index, const std::vector<int>& values) {
  std::vector<int> active_preventers;
  std::vector<int> facilitating;
  for (int e : model.edges_into(var_index)) {
    const auto& edge = model.edges()[e];
    if (edge.polarity == Polarity::Preventive) {
      if (values[model.source_index(e)]) active_preventers.push_back(e);
    } else {
      facilitating.push_back(e);
    }
  }

  // E over preventer bits of [1 - prod over live facilitating terms (1 - q)].
  double total = 0.0;
  const std::size_t masks = std::size_t{1} << active_preventers.size();
  for (std::size_t mask = 0; mask < masks; ++mask) {
    double weight = 1.0;
    for (std::size_t j = 0; j < active_preventers.size(); ++j) {
      double qj = model.edges()[active_preventers[j]].q;
      weight *= (mask >> j) & 1u ? qj : 1.0 - qj;
    }
    if (weight == 0.0) continue;
    double none_fires = 1.0;
    for (int fe : facilitating) {
      if (!values[model.source_index(fe)]) continue;
      bool blocked = false;
      for (std::size_t j = 0; j < active_preventers.size(); ++j)
        if (((mask >> j) & 1u) && model.scope_covers(active_preventers[j], fe)) blocked = true;
      if (!blocked) none_fires *= 1.0 - model.edges()[fe].q;
    }
    total += weight * (1.0 - none_fires);
  }
  return total;
}

JointTable joint(const ChengModel& model, const InferenceOptions& options) {
  check_size(model, options);
  const int n = model.variable_count();

  JointTable table;
  for (const auto& v : model.variables()) table.variables.push_back(v.name);
  table.probs.assign(std::size_t{1} << n, 0.0);

  std::vector<int> values(n, 0);
  for (std::size_t row = 0; row < table.probs.size(); ++row) {
    for (int i = 0; i < n; ++i) values[i] = table.value_at(row, i);
    double p = 1.0;
    for (int v = 0; v < n && p > 0.0; ++v) {
      if (model.is_exogenous(v)) {
        double base = *model.variable(v).base_rate;
        p *= values[v] ? base : 1.0 - base;
      } else {
        double on = gate_probability(model, v, values);
        p *= values[v] ? on : 1.0 - on;
      }
    }
    table.probs[row] = p;
  }
  return table;
}

JointTable joint_by_qbit_enumeration(const ChengModel& model, const InferenceOptions& options) {
  check_size(model, options);
  const int n = model.variable_count();

  std::vector<int> exogenous;
  for (int v = 0; v < n; ++v)
    if (model.is_exogenous(v)) exogenous.push_back(v);
  const std::size_t edge_count = model.edges().size();
  const std::size_t bits = exogenous.size() + edge_count;
  if (bits > 26)
    throw Error(ErrorCode::TooLarge, "q-bit enumeration needs more than 26 independent bits");

  JointTable table;
  for (const auto& v : model.variables()) table.variables.push_back(v.name);
  table.probs.assign(std::size_t{1} << n, 0.0);

  std::vector<int> values(n, 0);
  std::vector<int> qbit(edge_count, 0);
  for (std::size_t cfg = 0; cfg < (std::size_t{1} << bits); ++cfg) {
    double weight = 1.0;
    for (std::size_t i = 0; i < exogenous.size() && weight > 0.0; ++i) {
      double base = *model.variable(exogenous[i]).base_rate;
      bool bit = (cfg >> i) & 1u;
      values[exogenous[i]] = bit;
      weight *= bit ? base : 1.0 - base;
    }
    if (weight == 0.0) continue;
    for (std::size_t e = 0; e < edge_count && weight > 0.0; ++e) {
      bool bit = (cfg >> (exogenous.size() + e)) & 1u;
      qbit[e] = bit;
      weight *= bit ? model.edges()[e].q : 1.0 - model.edges()[e].q;
    }
    if (weight == 0.0) continue;

    // The configuration fixes every variable deterministically.
    for (int v : model.topo_order()) {
      if (model.is_exogenous(v)) continue;
      int fired = 0;
      for (int fe : model.edges_into(v)) {
        if (model.edges()[fe].polarity != Polarity::Facilitating) continue;
        int term = qbit[fe] & values[model.source_index(fe)];
        for (int pe : model.edges_into(v)) {
          if (model.edges()[pe].polarity != Polarity::Preventive) continue;
          if (!model.scope_covers(pe, fe)) continue;
          term &= 1 - (qbit[pe] & values[model.source_index(pe)]);
        }
        fired |= term;
      }
      values[v] = fired;
    }
    table.probs[row_of(values)] += weight;
  }
  return table;
}

std::optional<double> probability(const JointTable& table, const PartialAssignment& event,
                                  const PartialAssignment& given) {
  for (const auto& [name, _] : event)
    if (given.count(name))
      throw Error(ErrorCode::InvalidQuery, "variable '" + name + "' appears in both event and condition");

  double denom = given.empty() ? 1.0 : table.mass(given);
  if (denom <= 0.0) return std::nullopt;
  PartialAssignment both = event;
  both.insert(given.begin(), given.end());
  return table.mass(both) / denom;
}

std::optional<double> probability(const ChengModel& model, const PartialAssignment& event,
                                  const PartialAssignment& given, const InferenceOptions& options) {
  for (const auto& pa : {event, given})
    for (const auto& [name, _] : pa) model.variable_index(name);
  return probability(joint(model, options), event, given);
}

MarkovReport markov_check(const ChengModel& model, const JointTable& table) {
  const int n = model.variable_count();
  if (static_cast<int>(table.variables.size()) != n ||
      (std::size_t{1} << n) != table.probs.size())
    throw Error(ErrorCode::Mismatch, "table shape does not match the model");
  for (int v = 0; v < n; ++v)
    if (table.variables[v] != model.variable(v).name)
      throw Error(ErrorCode::Mismatch, "table variables do not match the model");

  MarkovReport report;
  auto fail = [&](const std::string& message) {
    report.pass = false;
    if (report.failures.size() < 32) report.failures.push_back(message);
  };

  // Per-variable parent masks for key extraction.
  std::vector<std::vector<int>> parents(n);
  for (int v = 0; v < n; ++v) {
    std::vector<int> ps;
    for (int e : model.edges_into(v)) ps.push_back(model.source_index(e));
    std::sort(ps.begin(), ps.end());
    ps.erase(std::unique(ps.begin(), ps.end()), ps.end());
    parents[v] = std::move(ps);
  }

  // Accumulate P(parents) and P(v=1, parents) keyed by the parents' bits.
  std::vector<std::map<std::size_t, std::pair<double, double>>> strata(n);
  for (std::size_t row = 0; row < table.probs.size(); ++row) {
    for (int v = 0; v < n; ++v) {
      std::size_t key = 0;
      for (int p : parents[v]) key = (key << 1) | static_cast<unsigned>(table.value_at(row, p));
      auto& cell = strata[v][key];
      cell.first += table.probs[row];
      if (table.value_at(row, v)) cell.second += table.probs[row];
    }
  }

  for (std::size_t row = 0; row < table.probs.size(); ++row) {
    double product = 1.0;
    bool undefined_factor = false;
    for (int v = 0; v < n; ++v) {
      std::size_t key = 0;
      for (int p : parents[v]) key = (key << 1) | static_cast<unsigned>(table.value_at(row, p));
      const auto& cell = strata[v].at(key);
      if (cell.first <= 0.0) {
        undefined_factor = true;
        break;
      }
      double on = cell.second / cell.first;
      product *= table.value_at(row, v) ? on : 1.0 - on;
    }
    if (undefined_factor) {
      // Zero-probability parent configuration: the row itself must be null.
      if (std::abs(table.probs[row]) > kFactorizationTolerance) {
        std::ostringstream os;
        os << "row " << row << " has mass " << table.probs[row]
           << " under a zero-probability parent configuration";
        fail(os.str());
      }
      continue;
    }
    if (std::abs(product - table.probs[row]) > kFactorizationTolerance) {
      std::ostringstream os;
      os << "row " << row << ": factorized " << product << " vs table " << table.probs[row];
      fail(os.str());
    }
  }

  // Exogenous variables must be mutually independent.
  std::vector<int> exogenous;
  for (int v = 0; v < n; ++v)
    if (model.is_exogenous(v)) exogenous.push_back(v);
  std::vector<double> marginal_one(n, 0.0);
  for (std::size_t row = 0; row < table.probs.size(); ++row)
    for (int v : exogenous)
      if (table.value_at(row, v)) marginal_one[v] += table.probs[row];
  const std::size_t combos = std::size_t{1} << exogenous.size();
  for (std::size_t combo = 0; combo < combos; ++combo) {
    PartialAssignment joint_event;
    double expected = 1.0;
    for (std::size_t i = 0; i < exogenous.size(); ++i) {
      int bit = (combo >> i) & 1u;
      joint_event[model.variable(exogenous[i]).name] = bit;
      expected *= bit ? marginal_one[exogenous[i]] : 1.0 - marginal_one[exogenous[i]];
    }
    double actual = table.mass(joint_event);
    if (std::abs(actual - expected) > kFactorizationTolerance) {
      std::ostringstream os;
      os << "exogenous variables are not independent: P(combo " << combo << ") = " << actual
         << " vs product " << expected;
      fail(os.str());
    }
  }

  return report;
}

double direct_power(const ChengModel& model, const std::string& cause, const std::string& effect) {
  model.variable_index(cause);
  model.variable_index(effect);
  int edge = model.find_edge(cause, effect, Polarity::Facilitating);
  if (edge < 0) edge = model.find_edge(cause, effect, Polarity::Preventive);
  if (edge < 0)
    throw Error(ErrorCode::NoDirectEdge, "no direct edge " + cause + " -> " + effect);
  return model.edges()[edge].q;
}

namespace {

// P(at least one path has all its q bits set), exact under q independence and
// shared edges, by inclusion-exclusion over path subsets with edge unions.
double path_disjunction_probability(const ChengModel& model, const std::vector<Path>& paths) {
  if (paths.empty()) return 0.0;
  if (paths.size() > 20)
    throw Error(ErrorCode::TooLarge, "path rule limited to 20 contributing paths");
  double total = 0.0;
  const std::size_t subsets = std::size_t{1} << paths.size();
  for (std::size_t subset = 1; subset < subsets; ++subset) {
    std::vector<int> edge_union;
    for (std::size_t p = 0; p < paths.size(); ++p)
      if ((subset >> p) & 1u)
        edge_union.insert(edge_union.end(), paths[p].begin(), paths[p].end());
    std::sort(edge_union.begin(), edge_union.end());
    edge_union.erase(std::unique(edge_union.begin(), edge_union.end()), edge_union.end());
    double product = 1.0;
    for (int e : edge_union) product *= model.edges()[e].q;
    total += (std::popcount(subset) % 2 == 1 ? 1.0 : -1.0) * product;
  }
  return total;
}

// Exact P(some facilitating path fires and no gating preventive path fires);
// enumerates the q bits of the involved edges.  A preventive path gates a
// facilitating path when its final edge's scope covers the facilitating
// path's final edge.
double mixed_path_probability(const ChengModel& model, const std::vector<Path>& facilitating,
                              const std::vector<Path>& preventive) {
  std::vector<int> edges;
  for (const auto* bucket : {&facilitating, &preventive})
    for (const auto& path : *bucket) edges.insert(edges.end(), path.begin(), path.end());
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  if (edges.size() > 24)
    throw Error(ErrorCode::TooLarge, "path rule limited to 24 distinct edges");

  std::map<int, std::size_t> bit_of;
  for (std::size_t i = 0; i < edges.size(); ++i) bit_of[edges[i]] = i;

  double total = 0.0;
  const std::size_t masks = std::size_t{1} << edges.size();
  for (std::size_t mask = 0; mask < masks; ++mask) {
    double weight = 1.0;
    for (std::size_t i = 0; i < edges.size() && weight > 0.0; ++i)
      weight *= (mask >> i) & 1u ? model.edges()[edges[i]].q : 1.0 - model.edges()[edges[i]].q;
    if (weight == 0.0) continue;
    auto fires = [&](const Path& path) {
      for (int e : path)
        if (!((mask >> bit_of[e]) & 1u)) return false;
      return true;
    };
    bool effect_on = false;
    for (const auto& fp : facilitating) {
      if (!fires(fp)) continue;
      bool gated = false;
      for (const auto& pp : preventive)
        if (model.scope_covers(pp.back(), fp.back()) && fires(pp)) gated = true;
      if (!gated) {
        effect_on = true;
        break;
      }
    }
    if (effect_on) total += weight;
  }
  return total;
}

}  // namespace

TotalPowerResult total_power(const ChengModel& model, const std::string& cause,
                             const std::string& effect, const InferenceOptions& options) {
  int cause_index = model.variable_index(cause);
  int effect_index = model.variable_index(effect);
  auto paths = directed_paths(model, cause, effect);
  if (paths.empty())
    throw Error(ErrorCode::NoPath, "no directed path " + cause + " -> " + effect);

  TotalPowerResult result;
  result.sense = influence_class(model, cause, effect).net;

  // Contributing paths: all preventive edges, if any, must be final.
  std::vector<Path> fac_paths, prev_paths, excluded;
  for (const auto& path : paths) {
    int preventive = 0;
    bool final_preventive = false;
    for (std::size_t i = 0; i < path.size(); ++i)
      if (model.edges()[path[i]].polarity == Polarity::Preventive) {
        ++preventive;
        final_preventive = i + 1 == path.size();
      }
    if (preventive == 0)
      fac_paths.push_back(path);
    else if (preventive == 1 && final_preventive)
      prev_paths.push_back(path);
    else
      excluded.push_back(path);
  }

  if (result.sense == Influence::Preventing)
    result.via_path_rule = path_disjunction_probability(model, prev_paths);
  else if (prev_paths.empty())
    result.via_path_rule = path_disjunction_probability(model, fac_paths);
  else
    result.via_path_rule = mixed_path_probability(model, fac_paths, prev_paths);

  // Conditional route.  The cause is pinned by surgery so that an endogenous
  // cause's own ancestors need not stay alive; for exogenous causes this is
  // ordinary conditioning.  Zero set: every remaining ancestor of the effect
  // the cause does not influence.  For a preventing cause only the feeders of
  // excluded branches are zeroed, so the facilitating background stays alive
  // and the drop ratio isolates the preventive power.
  ChengModel pinned_on = intervene(model, cause, 1);
  PartialAssignment zero_set;
  for (int v = 0; v < model.variable_count(); ++v) {
    if (v == cause_index || v == effect_index) continue;
    if (!pinned_on.reachable(v, effect_index)) continue;
    if (model.reachable(cause_index, v)) continue;
    if (result.sense == Influence::Preventing) {
      bool feeds_excluded = false;
      for (const auto& path : excluded)
        for (int e : path) {
          if (model.edges()[e].polarity != Polarity::Preventive) continue;
          int gated = model.target_index(e);
          if (v == gated || model.reachable(v, gated)) feeds_excluded = true;
        }
      if (!feeds_excluded) continue;
    }
    zero_set[model.variable(v).name] = 0;
  }

  auto p_one = probability(joint(pinned_on, options), {{effect, 1}}, zero_set);
  if (result.sense == Influence::Preventing) {
    ChengModel pinned_off = intervene(model, cause, 0);
    auto p_zero = probability(joint(pinned_off, options), {{effect, 1}}, zero_set);
    if (p_one && p_zero && *p_zero > 0.0) result.via_conditional = 1.0 - *p_one / *p_zero;
  } else {
    result.via_conditional = p_one;
  }

  result.value = result.via_conditional.value_or(result.via_path_rule);
  return result;
}

void write_joint_csv(const JointTable& table, std::ostream& os) {
  for (const auto& name : table.variables) os << name << ',';
  os << "probability\n";
  os.precision(17);
  for (std::size_t row = 0; row < table.probs.size(); ++row) {
    for (std::size_t v = 0; v < table.variables.size(); ++v)
      os << table.value_at(row, static_cast<int>(v)) << ',';
    os << table.probs[row] << '\n';
  }
}

}  // namespace cheng
