#include "cheng/model.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace cheng {

namespace {

bool valid_identifier(const std::string& name) {
  if (name.empty()) return false;
  auto head = [](char c) { return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || c == '_'; };
  auto tail = [&](char c) { return head(c) || (c >= '0' && c <= '9'); };
  if (!head(name[0])) return false;
  return std::all_of(name.begin() + 1, name.end(), tail);
}

bool valid_probability(double p) { return p >= 0.0 && p <= 1.0; }

std::string edge_label(const EdgeSpec& e) {
  return e.source + (e.polarity == Polarity::Facilitating ? "->" : "-|") + e.target;
}

// Cycle detection over the edge list; returns true when acyclic.
bool acyclic(int n, const std::vector<std::pair<int, int>>& arcs) {
  std::vector<std::vector<int>> children(n);
  std::vector<int> indeg(n, 0);
  for (auto [s, t] : arcs) {
    children[s].push_back(t);
    ++indeg[t];
  }
  std::vector<int> queue;
  for (int v = 0; v < n; ++v)
    if (indeg[v] == 0) queue.push_back(v);
  int seen = 0;
  for (size_t i = 0; i < queue.size(); ++i) {
    ++seen;
    for (int c : children[queue[i]])
      if (--indeg[c] == 0) queue.push_back(c);
  }
  return seen == n;
}

}  // namespace

std::vector<Diagnostic> validate(const ModelSpec& spec) {
  std::vector<Diagnostic> out;
  auto report = [&](ErrorCode code, const std::string& detail) {
    out.push_back({code, detail});
  };

  std::map<std::string, int> index;
  for (size_t i = 0; i < spec.variables.size(); ++i) {
    const auto& v = spec.variables[i];
    if (!valid_identifier(v.name))
      report(ErrorCode::InvalidName, "variable name '" + v.name + "' is not an identifier");
    if (index.count(v.name))
      report(ErrorCode::DuplicateName, "variable '" + v.name + "' declared twice");
    else
      index[v.name] = static_cast<int>(i);
    if (v.base_rate && !valid_probability(*v.base_rate)) {
      std::ostringstream os;
      os << "base rate of '" << v.name << "' is " << *v.base_rate;
      report(ErrorCode::BadProbability, os.str());
    }
  }

  // Edge endpoint resolution; unknown endpoints disable structural checks on
  // that edge but the remaining diagnostics still run.
  std::vector<int> indegree(spec.variables.size(), 0);
  std::set<std::tuple<std::string, std::string, Polarity>> edge_keys;
  std::vector<std::pair<int, int>> arcs;
  for (const auto& e : spec.edges) {
    bool endpoints_ok = true;
    for (const auto* name : {&e.source, &e.target}) {
      if (!index.count(*name)) {
        report(ErrorCode::UnknownVariable, "edge " + edge_label(e) + " references unknown variable '" + *name + "'");
        endpoints_ok = false;
      }
    }
    if (!valid_probability(e.q)) {
      std::ostringstream os;
      os << "edge " << edge_label(e) << " has q=" << e.q;
      report(ErrorCode::BadProbability, os.str());
    }
    auto key = std::make_tuple(e.source, e.target, e.polarity);
    if (edge_keys.count(key))
      report(ErrorCode::DuplicateName, "edge " + edge_label(e) + " declared twice");
    edge_keys.insert(key);
    if (!endpoints_ok) continue;
    if (e.source == e.target) {
      report(ErrorCode::CycleDetected, "self-loop on '" + e.source + "'");
      continue;
    }
    arcs.emplace_back(index[e.source], index[e.target]);
    ++indegree[index[e.target]];
  }

  if (!acyclic(static_cast<int>(spec.variables.size()), arcs))
    report(ErrorCode::CycleDetected, "model graph contains a directed cycle");

  // Base rates mark exogenous variables and only those.
  for (size_t i = 0; i < spec.variables.size(); ++i) {
    const auto& v = spec.variables[i];
    if (!index.count(v.name) || index[v.name] != static_cast<int>(i)) continue;
    if (indegree[i] == 0 && !v.base_rate)
      report(ErrorCode::BadProbability, "exogenous variable '" + v.name + "' has no base rate");
    if (indegree[i] > 0 && v.base_rate)
      report(ErrorCode::BadProbability, "endogenous variable '" + v.name + "' carries a base rate");
  }

  // Every vertex with parents needs at least one facilitating parent;
  // otherwise it is pinned at zero and the structure is rejected.
  for (size_t i = 0; i < spec.variables.size(); ++i) {
    const auto& v = spec.variables[i];
    if (!index.count(v.name) || index[v.name] != static_cast<int>(i)) continue;
    if (indegree[i] == 0) continue;
    bool has_fac = false;
    for (const auto& e : spec.edges)
      if (e.target == v.name && e.polarity == Polarity::Facilitating && index.count(e.source))
        has_fac = true;
    if (!has_fac)
      report(ErrorCode::NoFacilitatingParent, "variable '" + v.name + "' has only preventive parents");
  }

  // Scope hygiene: members must name facilitating edges into the preventer's
  // own target.  Scopes are meaningless on facilitating edges, and preventers
  // may not scope other preventers.
  for (const auto& e : spec.edges) {
    if (e.polarity == Polarity::Facilitating) {
      if (!e.scope.all || !e.scope.members.empty())
        report(ErrorCode::DanglingScope, "facilitating edge " + edge_label(e) + " carries a scope");
      continue;
    }
    if (e.scope.all) continue;
    for (const auto& [src, dst] : e.scope.members) {
      if (dst != e.target) {
        report(ErrorCode::DanglingScope,
               "scope of " + edge_label(e) + " names edge into a different target '" + dst + "'");
        continue;
      }
      bool found = false;
      for (const auto& f : spec.edges)
        if (f.polarity == Polarity::Facilitating && f.source == src && f.target == dst) found = true;
      if (!found)
        report(ErrorCode::DanglingScope,
               "scope of " + edge_label(e) + " names missing facilitating edge " + src + "->" + dst);
    }
  }

  return out;
}

std::vector<Diagnostic> validate(const ChengModel& model) {
  ModelSpec spec{model.variables(), model.edges()};
  return validate(spec);
}

ChengModel build_model(const ModelSpec& spec) {
  auto diagnostics = validate(spec);
  if (!diagnostics.empty())
    throw Error(diagnostics.front().code, diagnostics.front().detail);

  ChengModel m;
  m.variables_ = spec.variables;
  m.edges_ = spec.edges;

  const int n = static_cast<int>(m.variables_.size());
  for (int i = 0; i < n; ++i) m.index_by_name_[m.variables_[i].name] = i;

  m.edges_into_.assign(n, {});
  m.edges_out_of_.assign(n, {});
  m.edge_source_.resize(m.edges_.size());
  m.edge_target_.resize(m.edges_.size());
  for (size_t e = 0; e < m.edges_.size(); ++e) {
    int s = m.index_by_name_[m.edges_[e].source];
    int t = m.index_by_name_[m.edges_[e].target];
    m.edge_source_[e] = s;
    m.edge_target_[e] = t;
    m.edges_out_of_[s].push_back(static_cast<int>(e));
    m.edges_into_[t].push_back(static_cast<int>(e));
  }

  // Resolve preventive scopes to facilitating edge indices.
  m.scope_edges_.assign(m.edges_.size(), {});
  for (size_t e = 0; e < m.edges_.size(); ++e) {
    const auto& edge = m.edges_[e];
    if (edge.polarity != Polarity::Preventive) continue;
    for (int f : m.edges_into_[m.edge_target_[e]]) {
      if (m.edges_[f].polarity != Polarity::Facilitating) continue;
      bool covered = edge.scope.all;
      for (const auto& [src, dst] : edge.scope.members)
        if (src == m.edges_[f].source && dst == m.edges_[f].target) covered = true;
      if (covered) m.scope_edges_[e].push_back(f);
    }
  }

  // Stable topological order: repeatedly take the lowest-index ready vertex.
  std::vector<int> indeg(n, 0);
  for (size_t e = 0; e < m.edges_.size(); ++e) ++indeg[m.edge_target_[e]];
  std::vector<bool> placed(n, false);
  while (static_cast<int>(m.topo_order_.size()) < n) {
    for (int v = 0; v < n; ++v) {
      if (placed[v] || indeg[v] != 0) continue;
      placed[v] = true;
      m.topo_order_.push_back(v);
      for (int e : m.edges_out_of_[v]) --indeg[m.edge_target_[e]];
      break;
    }
  }

  // Transitive closure in reverse topological order.
  m.reach_.assign(n, std::vector<bool>(n, false));
  for (auto it = m.topo_order_.rbegin(); it != m.topo_order_.rend(); ++it) {
    int v = *it;
    for (int e : m.edges_out_of_[v]) {
      int c = m.edge_target_[e];
      m.reach_[v][c] = true;
      for (int w = 0; w < n; ++w)
        if (m.reach_[c][w]) m.reach_[v][w] = true;
    }
  }

  return m;
}

bool ChengModel::has_variable(const std::string& name) const {
  return index_by_name_.count(name) != 0;
}

int ChengModel::variable_index(const std::string& name) const {
  auto it = index_by_name_.find(name);
  if (it == index_by_name_.end())
    throw Error(ErrorCode::UnknownVariable, "unknown variable '" + name + "'");
  return it->second;
}

int ChengModel::find_edge(const std::string& source, const std::string& target,
                          Polarity polarity) const {
  for (size_t e = 0; e < edges_.size(); ++e)
    if (edges_[e].source == source && edges_[e].target == target && edges_[e].polarity == polarity)
      return static_cast<int>(e);
  return -1;
}

bool ChengModel::scope_covers(int preventive_edge, int facilitating_edge) const {
  const auto& covered = scope_edges_[preventive_edge];
  return std::find(covered.begin(), covered.end(), facilitating_edge) != covered.end();
}

std::vector<Path> directed_paths(const ChengModel& model, const std::string& from,
                                 const std::string& to) {
  int start = model.variable_index(from);
  int goal = model.variable_index(to);

  std::vector<Path> paths;
  Path current;
  // DFS over edges in declaration order; a DAG guarantees termination and
  // that every enumerated path is simple.
  auto walk = [&](auto&& self, int v) -> void {
    if (v == goal && !current.empty()) {
      paths.push_back(current);
      return;
    }
    for (int e : model.edges_out_of(v)) {
      current.push_back(e);
      self(self, model.target_index(e));
      current.pop_back();
    }
  };
  walk(walk, start);
  return paths;
}

const char* to_string(Influence influence) {
  switch (influence) {
    case Influence::None: return "None";
    case Influence::Facilitating: return "Facilitating";
    case Influence::Preventing: return "Preventing";
    case Influence::Mixed: return "Mixed";
  }
  return "None";
}

InfluenceReport influence_class(const ChengModel& model, const std::string& cause,
                                const std::string& effect) {
  auto paths = directed_paths(model, cause, effect);
  InfluenceReport report;
  if (paths.empty()) return report;

  bool any_fac = false, any_prev = false;
  for (const auto& path : paths) {
    int preventive = 0;
    for (int e : path)
      if (model.edges()[e].polarity == Polarity::Preventive) ++preventive;
    if (preventive >= 2) report.parity_extrapolated = true;
    (preventive % 2 == 1 ? any_prev : any_fac) = true;
  }

  if (any_fac && any_prev)
    report.kind = Influence::Mixed;
  else if (any_prev)
    report.kind = Influence::Preventing;
  else
    report.kind = Influence::Facilitating;
  // A mixed cause with a facilitating path always facilitates on net.
  report.net = report.kind == Influence::Mixed ? Influence::Facilitating : report.kind;
  return report;
}

}  // namespace cheng
