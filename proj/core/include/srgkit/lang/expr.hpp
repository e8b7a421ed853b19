#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>

#include "srgkit/geom/region.hpp"
#include "srgkit/lti/transfer_function.hpp"
#include "srgkit/nonlin/nonlinearity.hpp"

namespace srg::lang {

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
  enum class Kind { Var, Scale, Inv, Sum, Prod };
  Kind kind = Kind::Var;
  std::string name;    // Var
  double alpha = 1.0;  // Scale
  ExprPtr a, b;        // children

  static ExprPtr var(std::string n);
  static ExprPtr scale(double alpha, ExprPtr c);
  static ExprPtr inv(ExprPtr c);
  static ExprPtr sum(ExprPtr l, ExprPtr r);
  static ExprPtr prod(ExprPtr l, ExprPtr r);
};

// Name of the built-in identity operator.
inline const std::string kIdentity = "1";

// identifiers, '+', '-', juxtaposition or '*', postfix '^-1', parentheses and
// real literals; product binds tighter than sum, '^-1' tighter than product.
ExprPtr parse_expr(const std::string& text);
std::string print_expr(const ExprPtr& e);
bool expr_equal(const ExprPtr& x, const ExprPtr& y);
std::set<std::string> expr_names(const ExprPtr& e);

struct Operator {
  enum class Kind { Lti, Nonlinear, Region };
  Kind kind = Kind::Lti;
  lti::TransferFunction tf;
  nonlin::Nonlinearity nl;  // Nonlinear and Region (declared bounds)
  bool causal = true;
};

class OperatorTable {
 public:
  void add_lti(const std::string& name, lti::TransferFunction tf);
  void add_nonlinearity(const std::string& name, nonlin::Nonlinearity nl);
  void add_region(const std::string& name, const geom::Region& srg, std::optional<geom::Region> sg0 = {});

  bool has(const std::string& name) const;
  const Operator& at(const std::string& name) const;  // throws UnknownName
  const std::map<std::string, Operator>& entries() const { return ops_; }
  Operator& mutable_at(const std::string& name);

 private:
  std::map<std::string, Operator> ops_;
};

// Throws UnknownName for the first unresolved identifier.
void check_names(const ExprPtr& e, const OperatorTable& t);
bool is_pure_lti(const ExprPtr& e, const OperatorTable& t);
bool has_nonlinear(const ExprPtr& e, const OperatorTable& t);

struct Collapsed {
  ExprPtr expr;
  OperatorTable table;
};
// Folds maximal LTI-only subtrees into synthetic LTI entries.
Collapsed collapse_lti(const ExprPtr& e, const OperatorTable& t);

// Rational transfer function of a pure-LTI word.
lti::TransferFunction fold_lti(const ExprPtr& e, const OperatorTable& t);

}  // namespace srg::lang
