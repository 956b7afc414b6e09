#pragma once

// Boolean structural equations of a model, kept in sum-of-gated-products
// normal form: each endogenous variable is a Boolean sum over facilitating
// parent edges of  q * source * prod (1 - q_p * preventer)  terms.  No
// simplification is performed beyond flattening nested sums/products, so the
// gate shape stays syntactically visible for estimator dispatch.

#include <map>
#include <string>
#include <vector>

#include "cheng/model.hpp"

namespace cheng {

enum class ExprKind { VarLiteral, QLiteral, Sum, Product, Complement };

class BoolExpr {
 public:
  static BoolExpr var(std::string name);
  static BoolExpr q(int edge_index);
  static BoolExpr sum(std::vector<BoolExpr> children);       // Boolean "++" (OR)
  static BoolExpr product(std::vector<BoolExpr> children);   // AND; flattens nested products
  static BoolExpr complement(BoolExpr child);                // (1 - child)

  ExprKind kind() const { return kind_; }
  const std::vector<BoolExpr>& children() const { return children_; }
  const std::string& var_name() const { return name_; }
  int edge_index() const { return edge_index_; }

  bool operator==(const BoolExpr& other) const;

 private:
  BoolExpr() = default;
  ExprKind kind_ = ExprKind::Sum;
  std::vector<BoolExpr> children_;
  std::string name_;       // VarLiteral
  int edge_index_ = -1;    // QLiteral
};

// 0/1 values for the variable and q-bit literals appearing in an expression.
struct BitAssignment {
  std::map<std::string, int> vars;
  std::map<int, int> qbits;  // keyed by edge index
};

// Structural equation of an endogenous variable.  Throws ExogenousVariable
// when v has no parents.
BoolExpr compile(const ChengModel& model, const std::string& v);

// The effect's equation with every endogenous variable other than `cause`
// recursively substituted by its own equation, leaving an expression over the
// cause, exogenous variables, and q literals.
BoolExpr reduce(const ChengModel& model, const std::string& cause, const std::string& effect);

enum class OuterForm { Sum, Product };

// Dispatch shape of a compiled/reduced equation after flattening single-child
// wrappers: Product when a complement factor gates the whole expression (the
// noisy-AND shape), Sum otherwise.
OuterForm outer_form(const BoolExpr& expr);

// Boolean evaluation; every literal must be assigned (MissingLiteral otherwise).
int evaluate(const BoolExpr& expr, const BitAssignment& assignment);

// Text rendering, e.g. "q[E,C]*C ++ q[E,D]*D*(1 - q[E,F]*F)".
std::string to_string(const BoolExpr& expr, const ChengModel& model);

}  // namespace cheng
