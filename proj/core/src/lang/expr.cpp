#include "srgkit/lang/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <sstream>

#include "srgkit/error.hpp"

namespace srg::lang {

ExprPtr Expr::var(std::string n) {
  auto e = std::make_shared<Expr>();
  e->kind = Kind::Var;
  e->name = std::move(n);
  return e;
}
ExprPtr Expr::scale(double alpha, ExprPtr c) {
  auto e = std::make_shared<Expr>();
  e->kind = Kind::Scale;
  e->alpha = alpha;
  e->a = std::move(c);
  return e;
}
ExprPtr Expr::inv(ExprPtr c) {
  auto e = std::make_shared<Expr>();
  e->kind = Kind::Inv;
  e->a = std::move(c);
  return e;
}
ExprPtr Expr::sum(ExprPtr l, ExprPtr r) {
  auto e = std::make_shared<Expr>();
  e->kind = Kind::Sum;
  e->a = std::move(l);
  e->b = std::move(r);
  return e;
}
ExprPtr Expr::prod(ExprPtr l, ExprPtr r) {
  auto e = std::make_shared<Expr>();
  e->kind = Kind::Prod;
  e->a = std::move(l);
  e->b = std::move(r);
  return e;
}

namespace {

class Parser {
 public:
  explicit Parser(const std::string& t) : t_(t) {}

  ExprPtr parse() {
    ExprPtr e = expr();
    skip();
    if (i_ < t_.size()) fail("unexpected '" + std::string(1, t_[i_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorCode::ParseError, "word '" + t_ + "': " + what + " at position " + std::to_string(i_));
  }
  void skip() {
    while (i_ < t_.size() && std::isspace(static_cast<unsigned char>(t_[i_]))) ++i_;
  }
  char peek() {
    skip();
    return i_ < t_.size() ? t_[i_] : '\0';
  }
  static bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
  static bool number_start(char c) { return std::isdigit(static_cast<unsigned char>(c)) || c == '.'; }

  ExprPtr expr() {
    ExprPtr e = term(false);
    for (;;) {
      const char c = peek();
      if (c == '+') {
        ++i_;
        e = Expr::sum(e, term(false));
      } else if (c == '-') {
        ++i_;
        e = Expr::sum(e, term(true));
      } else {
        return e;
      }
    }
  }

  // A factor is either a numeric literal or an operator subtree.
  struct Factor {
    bool literal = false;
    double value = 1.0;
    ExprPtr e;
  };

  ExprPtr term(bool negate) {
    double coef = negate ? -1.0 : 1.0;
    ExprPtr e;
    bool any = false;
    for (;;) {
      const char c = peek();
      if (any) {
        if (c == '*') {
          ++i_;
        } else if (!(c == '(' || ident_start(c) || number_start(c))) {
          break;
        }
      }
      if (!any && c == '\0') fail("unexpected end of input");
      Factor f = factor();
      any = true;
      if (f.literal) {
        coef *= f.value;
      } else {
        e = e ? Expr::prod(e, f.e) : f.e;
      }
    }
    if (!e) {
      if (coef == 1.0) return Expr::var(kIdentity);
      return Expr::scale(coef, Expr::var(kIdentity));
    }
    return coef == 1.0 ? e : Expr::scale(coef, e);
  }

  Factor factor() {
    const char c = peek();
    if (c == '-') {
      ++i_;
      Factor f = factor();
      if (f.literal) {
        f.value = -f.value;
      } else {
        f.e = Expr::scale(-1.0, f.e);
      }
      return f;
    }
    Factor f;
    if (number_start(c)) {
      const char* begin = t_.c_str() + i_;
      char* end = nullptr;
      const double v = std::strtod(begin, &end);
      if (end == begin) fail("bad number");
      i_ += std::size_t(end - begin);
      if (i_ < t_.size() && number_start(t_[i_])) fail("malformed number");
      f.literal = true;
      f.value = v;
      // a literal followed by ^-1 is its reciprocal
      while (inverse_suffix()) {
        if (f.value == 0.0) fail("inverse of zero literal");
        f.value = 1.0 / f.value;
      }
      return f;
    }
    if (ident_start(c)) {
      const std::size_t start = i_;
      while (i_ < t_.size() && (std::isalnum(static_cast<unsigned char>(t_[i_])) || t_[i_] == '_')) ++i_;
      f.e = Expr::var(t_.substr(start, i_ - start));
    } else if (c == '(') {
      ++i_;
      f.e = expr();
      if (peek() != ')') fail("expected ')'");
      ++i_;
    } else {
      fail(c == '\0' ? "unexpected end of input" : "unexpected '" + std::string(1, c) + "'");
    }
    while (inverse_suffix()) f.e = Expr::inv(f.e);
    return f;
  }

  bool inverse_suffix() {
    if (peek() != '^') return false;
    ++i_;
    skip();
    if (t_.compare(i_, 2, "-1") != 0) fail("only the exponent -1 is supported");
    i_ += 2;
    return true;
  }

  const std::string& t_;
  std::size_t i_ = 0;
};

std::string fmt(double x) {
  std::ostringstream o;
  o.precision(17);
  o << x;
  return o.str();
}

void print(std::ostream& o, const ExprPtr& e);

void print_paren(std::ostream& o, const ExprPtr& e, bool paren) {
  if (paren) o << '(';
  print(o, e);
  if (paren) o << ')';
}

// the identity literal must stay an operator inside products and inverses
bool bare_identity(const ExprPtr& e) { return e->kind == Expr::Kind::Var && e->name == kIdentity; }

void print(std::ostream& o, const ExprPtr& e) {
  using K = Expr::Kind;
  switch (e->kind) {
    case K::Var:
      o << e->name;
      break;
    case K::Scale:
      o << fmt(e->alpha);
      if (!(e->a->kind == K::Var && e->a->name == kIdentity)) {
        o << ' ';
        print_paren(o, e->a, e->a->kind != K::Var && e->a->kind != K::Inv);
      }
      break;
    case K::Inv:
      print_paren(o, e->a, (e->a->kind != K::Var && e->a->kind != K::Inv) || bare_identity(e->a));
      o << "^-1";
      break;
    case K::Sum:
      print_paren(o, e->a, false);
      o << " + ";
      print_paren(o, e->b, e->b->kind == K::Sum);
      break;
    case K::Prod:
      print_paren(o, e->a, e->a->kind == K::Sum || e->a->kind == K::Scale || bare_identity(e->a));
      o << ' ';
      print_paren(o, e->b, e->b->kind == K::Sum || e->b->kind == K::Scale || e->b->kind == K::Prod || bare_identity(e->b));
      break;
  }
}

void names(const ExprPtr& e, std::set<std::string>& out) {
  if (!e) return;
  if (e->kind == Expr::Kind::Var) out.insert(e->name);
  names(e->a, out);
  names(e->b, out);
}

}  // namespace

ExprPtr parse_expr(const std::string& text) { return Parser(text).parse(); }

std::string print_expr(const ExprPtr& e) {
  std::ostringstream o;
  print(o, e);
  return o.str();
}

bool expr_equal(const ExprPtr& x, const ExprPtr& y) {
  if (!x || !y) return x == y;
  if (x->kind != y->kind) return false;
  switch (x->kind) {
    case Expr::Kind::Var: return x->name == y->name;
    case Expr::Kind::Scale: return x->alpha == y->alpha && expr_equal(x->a, y->a);
    case Expr::Kind::Inv: return expr_equal(x->a, y->a);
    default: return expr_equal(x->a, y->a) && expr_equal(x->b, y->b);
  }
}

std::set<std::string> expr_names(const ExprPtr& e) {
  std::set<std::string> out;
  names(e, out);
  return out;
}

void OperatorTable::add_lti(const std::string& name, lti::TransferFunction tf) {
  Operator op;
  op.kind = Operator::Kind::Lti;
  if (tf.label().empty()) tf.set_label(name);
  op.tf = std::move(tf);
  ops_[name] = std::move(op);
}

void OperatorTable::add_nonlinearity(const std::string& name, nonlin::Nonlinearity nl) {
  Operator op;
  op.kind = Operator::Kind::Nonlinear;
  if (nl.label.empty()) nl.label = name;
  op.nl = std::move(nl);
  ops_[name] = std::move(op);
}

void OperatorTable::add_region(const std::string& name, const geom::Region& srg, std::optional<geom::Region> sg0) {
  Operator op;
  op.kind = Operator::Kind::Region;
  op.nl = nonlin::region_bound(srg, std::move(sg0), name);
  ops_[name] = std::move(op);
}

bool OperatorTable::has(const std::string& name) const { return name == kIdentity || ops_.count(name) > 0; }

const Operator& OperatorTable::at(const std::string& name) const {
  if (name == kIdentity) {
    static const Operator identity = [] {
      Operator op;
      op.tf = lti::TransferFunction::constant(1.0);
      op.tf.set_label(kIdentity);
      return op;
    }();
    return identity;
  }
  auto it = ops_.find(name);
  if (it == ops_.end()) throw Error(ErrorCode::UnknownName, "unknown operator '" + name + "'");
  return it->second;
}

Operator& OperatorTable::mutable_at(const std::string& name) {
  auto it = ops_.find(name);
  if (it == ops_.end()) throw Error(ErrorCode::UnknownName, "unknown operator '" + name + "'");
  return it->second;
}

void check_names(const ExprPtr& e, const OperatorTable& t) {
  for (const auto& n : expr_names(e))
    if (!t.has(n)) throw Error(ErrorCode::UnknownName, "unknown operator '" + n + "'");
}

bool is_pure_lti(const ExprPtr& e, const OperatorTable& t) {
  if (e->kind == Expr::Kind::Var) return t.at(e->name).kind == Operator::Kind::Lti;
  if (e->kind == Expr::Kind::Scale || e->kind == Expr::Kind::Inv) return is_pure_lti(e->a, t);
  return is_pure_lti(e->a, t) && is_pure_lti(e->b, t);
}

bool has_nonlinear(const ExprPtr& e, const OperatorTable& t) { return !is_pure_lti(e, t); }

lti::TransferFunction fold_lti(const ExprPtr& e, const OperatorTable& t) {
  using K = Expr::Kind;
  switch (e->kind) {
    case K::Var: {
      const auto& op = t.at(e->name);
      if (op.kind != Operator::Kind::Lti)
        throw Error(ErrorCode::NotLinearizable, "fold_lti: '" + e->name + "' is not LTI");
      return op.tf;
    }
    case K::Scale: return lti::tf_scale(fold_lti(e->a, t), e->alpha);
    case K::Inv: return lti::tf_inverse(fold_lti(e->a, t));
    case K::Sum: return lti::tf_add(fold_lti(e->a, t), fold_lti(e->b, t));
    case K::Prod: return lti::tf_mul(fold_lti(e->a, t), fold_lti(e->b, t));
  }
  return {};
}

namespace {

ExprPtr collapse(const ExprPtr& e, OperatorTable& out, int& counter) {
  using K = Expr::Kind;
  if (e->kind == K::Var) return e;
  if (is_pure_lti(e, out)) {
    const std::string name = "lti_" + std::to_string(++counter);
    lti::TransferFunction tf = fold_lti(e, out);
    tf.set_label(print_expr(e));
    out.add_lti(name, tf);
    return Expr::var(name);
  }
  switch (e->kind) {
    case K::Scale: return Expr::scale(e->alpha, collapse(e->a, out, counter));
    case K::Inv: return Expr::inv(collapse(e->a, out, counter));
    case K::Sum: return Expr::sum(collapse(e->a, out, counter), collapse(e->b, out, counter));
    case K::Prod: return Expr::prod(collapse(e->a, out, counter), collapse(e->b, out, counter));
    default: return e;
  }
}

}  // namespace

Collapsed collapse_lti(const ExprPtr& e, const OperatorTable& t) {
  check_names(e, t);
  Collapsed c{nullptr, t};
  int counter = 0;
  c.expr = collapse(e, c.table, counter);
  return c;
}

}  // namespace srg::lang
