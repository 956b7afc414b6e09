#pragma once

// Causal-power models: a labeled DAG of binary variables where each edge is
// either facilitating (noisy-OR input) or preventive (noisy-AND gate factor)
// and carries an independent success probability q.  Preventive edges may be
// scoped to the facilitating edges they interfere with; the default scope
// gates every facilitating edge into the same target.

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cheng/errors.hpp"

namespace cheng {

enum class Polarity { Facilitating, Preventive };

// A partial 0/1 assignment to named variables, e.g. a conditioning set.
using PartialAssignment = std::map<std::string, int>;

struct VariableSpec {
  std::string name;
  bool observed = true;
  std::optional<double> base_rate;  // present iff the variable is exogenous

  bool operator==(const VariableSpec&) const = default;
};

// Which facilitating edges a preventive edge interferes with.  Members are
// (source, target) pairs of facilitating edges sharing the preventer's target.
struct Scope {
  bool all = true;
  std::vector<std::pair<std::string, std::string>> members;

  static Scope All() { return Scope{}; }
  static Scope Of(std::vector<std::pair<std::string, std::string>> m) {
    return Scope{false, std::move(m)};
  }

  bool operator==(const Scope&) const = default;
};

struct EdgeSpec {
  std::string source;
  std::string target;
  Polarity polarity = Polarity::Facilitating;
  double q = 0.0;
  Scope scope;  // meaningful only when polarity == Preventive

  bool operator==(const EdgeSpec&) const = default;
};

// Unvalidated model description, as produced by the parser or built in code.
struct ModelSpec {
  std::vector<VariableSpec> variables;
  std::vector<EdgeSpec> edges;
};

struct Diagnostic {
  ErrorCode code;
  std::string detail;
};

// A validated, immutable model.  All query operations are pure; instances may
// be shared across threads freely.
class ChengModel {
 public:
  const std::vector<VariableSpec>& variables() const { return variables_; }
  const std::vector<EdgeSpec>& edges() const { return edges_; }

  int variable_count() const { return static_cast<int>(variables_.size()); }
  bool has_variable(const std::string& name) const;
  int variable_index(const std::string& name) const;  // throws UnknownVariable
  const VariableSpec& variable(int index) const { return variables_[index]; }

  bool is_exogenous(int var_index) const { return edges_into_[var_index].empty(); }
  bool is_observed(int var_index) const { return variables_[var_index].observed; }

  // Edge indices into edges(), in declaration order.
  const std::vector<int>& edges_into(int var_index) const { return edges_into_[var_index]; }
  const std::vector<int>& edges_out_of(int var_index) const { return edges_out_of_[var_index]; }

  int source_index(int edge_index) const { return edge_source_[edge_index]; }
  int target_index(int edge_index) const { return edge_target_[edge_index]; }

  // -1 when absent.
  int find_edge(const std::string& source, const std::string& target, Polarity polarity) const;

  // True when `preventive_edge` interferes with `facilitating_edge` (both must
  // share a target; ALL scopes cover every facilitating edge into it).
  bool scope_covers(int preventive_edge, int facilitating_edge) const;

  // Directed reachability, from != to.
  bool reachable(int from, int to) const { return reach_[from][to]; }

  // Variable indices in topological order (stable: declaration order breaks ties).
  const std::vector<int>& topo_order() const { return topo_order_; }

  bool operator==(const ChengModel& other) const {
    return variables_ == other.variables_ && edges_ == other.edges_;
  }

 private:
  friend ChengModel build_model(const ModelSpec& spec);

  std::vector<VariableSpec> variables_;
  std::vector<EdgeSpec> edges_;
  std::map<std::string, int> index_by_name_;
  std::vector<std::vector<int>> edges_into_;
  std::vector<std::vector<int>> edges_out_of_;
  std::vector<int> edge_source_;
  std::vector<int> edge_target_;
  std::vector<std::vector<int>> scope_edges_;  // per preventive edge: covered fac edge indices
  std::vector<std::vector<bool>> reach_;
  std::vector<int> topo_order_;
};

// All invariant violations in `spec`, empty iff the spec builds cleanly.
std::vector<Diagnostic> validate(const ModelSpec& spec);
// Re-checks a built model; always empty for models produced by build_model.
std::vector<Diagnostic> validate(const ChengModel& model);

// Validates and freezes a model; throws Error with the first diagnostic's code.
ChengModel build_model(const ModelSpec& spec);

// A directed path as a sequence of edge indices.
using Path = std::vector<int>;

// Every directed path from `from` to `to`, duplicate-free, in a deterministic
// order.  Parallel edges of opposite polarity yield distinct paths.
std::vector<Path> directed_paths(const ChengModel& model, const std::string& from,
                                 const std::string& to);

enum class Influence { None, Facilitating, Preventing, Mixed };

const char* to_string(Influence influence);

struct InfluenceReport {
  Influence kind = Influence::None;
  // A mixed cause with at least one facilitating path nets out facilitating;
  // otherwise net == kind.
  Influence net = Influence::None;
  // Set when some path chains two or more preventive edges; the sign of such
  // a path follows the parity rule, which extrapolates beyond the base theory.
  bool parity_extrapolated = false;
};

// Classifies the cause's influence on the effect by path-polarity parity:
// a path prevents iff it contains an odd number of preventive edges.
InfluenceReport influence_class(const ChengModel& model, const std::string& cause,
                                const std::string& effect);

}  // namespace cheng
