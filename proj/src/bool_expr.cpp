#include "cheng/bool_expr.hpp"

#include <sstream>

namespace cheng {

BoolExpr BoolExpr::var(std::string name) {
  BoolExpr e;
  e.kind_ = ExprKind::VarLiteral;
  e.name_ = std::move(name);
  return e;
}

BoolExpr BoolExpr::q(int edge_index) {
  BoolExpr e;
  e.kind_ = ExprKind::QLiteral;
  e.edge_index_ = edge_index;
  return e;
}

BoolExpr BoolExpr::sum(std::vector<BoolExpr> children) {
  BoolExpr e;
  e.kind_ = ExprKind::Sum;
  for (auto& c : children) {
    if (c.kind_ == ExprKind::Sum)
      for (auto& grand : c.children_) e.children_.push_back(std::move(grand));
    else
      e.children_.push_back(std::move(c));
  }
  return e;
}

BoolExpr BoolExpr::product(std::vector<BoolExpr> children) {
  BoolExpr e;
  e.kind_ = ExprKind::Product;
  for (auto& c : children) {
    if (c.kind_ == ExprKind::Product)
      for (auto& grand : c.children_) e.children_.push_back(std::move(grand));
    else
      e.children_.push_back(std::move(c));
  }
  return e;
}

BoolExpr BoolExpr::complement(BoolExpr child) {
  BoolExpr e;
  e.kind_ = ExprKind::Complement;
  e.children_.push_back(std::move(child));
  return e;
}

bool BoolExpr::operator==(const BoolExpr& other) const {
  return kind_ == other.kind_ && name_ == other.name_ && edge_index_ == other.edge_index_ &&
         children_ == other.children_;
}

BoolExpr compile(const ChengModel& model, const std::string& v) {
  int target = model.variable_index(v);
  if (model.is_exogenous(target))
    throw Error(ErrorCode::ExogenousVariable, "'" + v + "' is exogenous and has no equation");

  std::vector<BoolExpr> terms;
  for (int fe : model.edges_into(target)) {
    if (model.edges()[fe].polarity != Polarity::Facilitating) continue;
    std::vector<BoolExpr> factors;
    factors.push_back(BoolExpr::q(fe));
    factors.push_back(BoolExpr::var(model.edges()[fe].source));
    for (int pe : model.edges_into(target)) {
      if (model.edges()[pe].polarity != Polarity::Preventive) continue;
      if (!model.scope_covers(pe, fe)) continue;
      factors.push_back(BoolExpr::complement(
          BoolExpr::product({BoolExpr::q(pe), BoolExpr::var(model.edges()[pe].source)})));
    }
    terms.push_back(BoolExpr::product(std::move(factors)));
  }
  return BoolExpr::sum(std::move(terms));
}

namespace {

BoolExpr substitute(const ChengModel& model, const BoolExpr& expr, int cause_index,
                    std::map<int, BoolExpr>& memo);

BoolExpr expand_variable(const ChengModel& model, int var_index, int cause_index,
                         std::map<int, BoolExpr>& memo) {
  if (auto it = memo.find(var_index); it != memo.end()) return it->second;
  BoolExpr equation = compile(model, model.variable(var_index).name);
  BoolExpr expanded = substitute(model, equation, cause_index, memo);
  memo.emplace(var_index, expanded);
  return expanded;
}

BoolExpr substitute(const ChengModel& model, const BoolExpr& expr, int cause_index,
                    std::map<int, BoolExpr>& memo) {
  switch (expr.kind()) {
    case ExprKind::VarLiteral: {
      int v = model.variable_index(expr.var_name());
      if (v == cause_index || model.is_exogenous(v)) return expr;
      return expand_variable(model, v, cause_index, memo);
    }
    case ExprKind::QLiteral:
      return expr;
    case ExprKind::Sum: {
      std::vector<BoolExpr> children;
      for (const auto& c : expr.children()) children.push_back(substitute(model, c, cause_index, memo));
      return BoolExpr::sum(std::move(children));
    }
    case ExprKind::Product: {
      std::vector<BoolExpr> children;
      for (const auto& c : expr.children()) children.push_back(substitute(model, c, cause_index, memo));
      return BoolExpr::product(std::move(children));
    }
    case ExprKind::Complement:
      return BoolExpr::complement(substitute(model, expr.children()[0], cause_index, memo));
  }
  return expr;
}

}  // namespace

BoolExpr reduce(const ChengModel& model, const std::string& cause, const std::string& effect) {
  int cause_index = model.variable_index(cause);
  BoolExpr equation = compile(model, effect);
  std::map<int, BoolExpr> memo;
  return substitute(model, equation, cause_index, memo);
}

OuterForm outer_form(const BoolExpr& expr) {
  const BoolExpr* e = &expr;
  while ((e->kind() == ExprKind::Sum || e->kind() == ExprKind::Product) &&
         e->children().size() == 1)
    e = &e->children()[0];
  if (e->kind() == ExprKind::Complement) return OuterForm::Product;
  if (e->kind() == ExprKind::Product) {
    for (const auto& c : e->children())
      if (c.kind() == ExprKind::Complement) return OuterForm::Product;
    // A bare product of literals is a single facilitating term.
    return OuterForm::Sum;
  }
  return OuterForm::Sum;
}

int evaluate(const BoolExpr& expr, const BitAssignment& assignment) {
  switch (expr.kind()) {
    case ExprKind::VarLiteral: {
      auto it = assignment.vars.find(expr.var_name());
      if (it == assignment.vars.end())
        throw Error(ErrorCode::MissingLiteral, "no value for variable '" + expr.var_name() + "'");
      return it->second ? 1 : 0;
    }
    case ExprKind::QLiteral: {
      auto it = assignment.qbits.find(expr.edge_index());
      if (it == assignment.qbits.end()) {
        std::ostringstream os;
        os << "no value for q literal of edge #" << expr.edge_index();
        throw Error(ErrorCode::MissingLiteral, os.str());
      }
      return it->second ? 1 : 0;
    }
    case ExprKind::Sum: {
      int value = 0;
      for (const auto& c : expr.children()) value |= evaluate(c, assignment);
      return value;
    }
    case ExprKind::Product: {
      int value = 1;
      for (const auto& c : expr.children()) value &= evaluate(c, assignment);
      return value;
    }
    case ExprKind::Complement:
      return 1 - evaluate(expr.children()[0], assignment);
  }
  return 0;
}

namespace {

void render(const BoolExpr& expr, const ChengModel& model, std::ostream& os, bool parenthesize_sum) {
  switch (expr.kind()) {
    case ExprKind::VarLiteral:
      os << expr.var_name();
      break;
    case ExprKind::QLiteral: {
      const auto& e = model.edges()[expr.edge_index()];
      os << "q[" << e.target << ',' << e.source << ']';
      break;
    }
    case ExprKind::Sum: {
      if (parenthesize_sum && expr.children().size() > 1) os << '(';
      for (size_t i = 0; i < expr.children().size(); ++i) {
        if (i) os << " ++ ";
        render(expr.children()[i], model, os, false);
      }
      if (parenthesize_sum && expr.children().size() > 1) os << ')';
      break;
    }
    case ExprKind::Product:
      for (size_t i = 0; i < expr.children().size(); ++i) {
        if (i) os << '*';
        render(expr.children()[i], model, os, true);
      }
      break;
    case ExprKind::Complement:
      os << "(1 - ";
      render(expr.children()[0], model, os, true);
      os << ')';
      break;
  }
}

}  // namespace

std::string to_string(const BoolExpr& expr, const ChengModel& model) {
  std::ostringstream os;
  render(expr, model, os, false);
  return os.str();
}

}  // namespace cheng
