#include "srgkit/sim/word_sim.hpp"

#include <cmath>

#include "srgkit/error.hpp"
#include "srgkit/sim/state_space.hpp"

namespace srg::sim {

struct WordSimulator::Node {
  virtual ~Node() = default;
  virtual double peek(double u) const = 0;  // output at this step, state untouched
  virtual void commit(double u) = 0;        // advance with input u
  virtual void reset() = 0;
};

namespace {

using Node = WordSimulator::Node;
using NodePtr = std::unique_ptr<Node>;

struct Identity final : Node {
  double peek(double u) const override { return u; }
  void commit(double) override {}
  void reset() override {}
};

struct Lti final : Node {
  DiscreteSystem sys;
  double peek(double u) const override { return sys.peek(u); }
  void commit(double u) override { sys.commit(u); }
  void reset() override { sys.reset(); }
};

struct Static final : Node {
  std::function<double(double)> f;
  double peek(double u) const override { return f(u); }
  void commit(double) override {}
  void reset() override {}
};

struct Scale final : Node {
  double alpha;
  NodePtr a;
  double peek(double u) const override { return alpha * a->peek(u); }
  void commit(double u) override { a->commit(u); }
  void reset() override { a->reset(); }
};

struct Sum final : Node {
  NodePtr a, b;
  double peek(double u) const override { return a->peek(u) + b->peek(u); }
  void commit(double u) override {
    a->commit(u);
    b->commit(u);
  }
  void reset() override {
    a->reset();
    b->reset();
  }
};

// a after b
struct Prod final : Node {
  NodePtr a, b;
  double peek(double u) const override { return a->peek(b->peek(u)); }
  void commit(double u) override {
    const double v = b->peek(u);
    b->commit(u);
    a->commit(v);
  }
  void reset() override {
    a->reset();
    b->reset();
  }
};

// Root of g on the real line, starting from a guess: secant steps, then
// bracketing and bisection.
double solve_scalar(const std::function<double(double)>& g, double guess, double scale) {
  const double tol = 1e-12 * (1.0 + scale);
  double x0 = guess, g0 = g(x0);
  if (std::abs(g0) <= tol) return x0;
  double x1 = guess + 1e-3 * (1.0 + std::abs(guess)), g1 = g(x1);
  for (int it = 0; it < 30; ++it) {
    if (std::abs(g1) <= tol) return x1;
    const double den = g1 - g0;
    if (den == 0.0 || !std::isfinite(den)) break;
    const double x2 = x1 - g1 * (x1 - x0) / den;
    if (!std::isfinite(x2)) break;
    x0 = x1;
    g0 = g1;
    x1 = x2;
    g1 = g(x1);
  }
  double lo = guess, hi = guess, glo = g(lo), ghi = glo;
  double w = 1.0 + std::abs(guess);
  while (glo * ghi > 0 && w < 1e12) {
    lo = guess - w;
    hi = guess + w;
    glo = g(lo);
    ghi = g(hi);
    w *= 2.0;
  }
  if (glo * ghi > 0) throw Error(ErrorCode::NonConvergence, "word simulation: no solution for an inverse at this step");
  for (int it = 0; it < 200 && hi - lo > tol; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double gm = g(mid);
    if (gm == 0.0) return mid;
    if ((gm < 0) == (glo < 0)) {
      lo = mid;
      glo = gm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

struct InvLti final : Node {
  DiscreteSystem sys;
  double peek(double u) const override { return sys.invert(u); }
  void commit(double u) override { sys.commit(sys.invert(u)); }
  void reset() override { sys.reset(); }
};

struct Inv final : Node {
  NodePtr a;
  mutable double last = 0.0;
  double peek(double u) const override {
    last = solve_scalar([&](double y) { return a->peek(y) - u; }, last, std::abs(u));
    return last;
  }
  void commit(double u) override { a->commit(peek(u)); }
  void reset() override {
    a->reset();
    last = 0.0;
  }
};

// y = B(u - A(y))
struct Feedback final : Node {
  NodePtr A, B;
  mutable double last = 0.0;
  double peek(double u) const override {
    last = solve_scalar([&](double y) { return y - B->peek(u - A->peek(y)); }, last, std::abs(u));
    return last;
  }
  void commit(double u) override {
    const double y = peek(u);
    const double e = u - A->peek(y);
    A->commit(y);
    B->commit(e);
  }
  void reset() override {
    A->reset();
    B->reset();
    last = 0.0;
  }
};

struct Builder {
  const lang::OperatorTable& t;
  double h;

  DiscreteSystem discrete(const std::string& name) const {
    const auto& tf = t.at(name).tf;
    if (!tf.is_proper())
      throw Error(ErrorCode::InvalidArgument, "word simulation: '" + name + "' is improper and cannot be realized");
    return tustin(realize_state_space(tf), h);
  }

  NodePtr build(const lang::ExprPtr& e) const {
    using K = lang::Expr::Kind;
    switch (e->kind) {
      case K::Var: {
        if (e->name == lang::kIdentity) return std::make_unique<Identity>();
        const auto& op = t.at(e->name);
        if (op.kind == lang::Operator::Kind::Lti) {
          auto n = std::make_unique<Lti>();
          n->sys = discrete(e->name);
          return n;
        }
        if (op.kind == lang::Operator::Kind::Region)
          throw Error(ErrorCode::InvalidArgument, "word simulation: '" + e->name + "' has no evaluable map");
        auto n = std::make_unique<Static>();
        n->f = op.nl.eval;
        return n;
      }
      case K::Scale: {
        auto n = std::make_unique<Scale>();
        n->alpha = e->alpha;
        n->a = build(e->a);
        return n;
      }
      case K::Sum: {
        auto n = std::make_unique<Sum>();
        n->a = build(e->a);
        n->b = build(e->b);
        return n;
      }
      case K::Prod: {
        auto n = std::make_unique<Prod>();
        n->a = build(e->a);
        n->b = build(e->b);
        return n;
      }
      case K::Inv: {
        const auto& c = e->a;
        if (c->kind == K::Inv) return build(c->a);
        if (c->kind == K::Sum && (c->a->kind == K::Inv || c->b->kind == K::Inv)) {
          const bool right = c->b->kind == K::Inv;
          auto n = std::make_unique<Feedback>();
          n->A = build(right ? c->a : c->b);
          n->B = build(right ? c->b->a : c->a->a);
          return n;
        }
        if (c->kind == K::Var && c->name != lang::kIdentity && t.at(c->name).kind == lang::Operator::Kind::Lti) {
          auto n = std::make_unique<InvLti>();
          n->sys = discrete(c->name);
          if (n->sys.Dd == 0.0)
            throw Error(ErrorCode::ZeroInverse, "word simulation: '" + c->name + "' has no discrete feedthrough");
          return n;
        }
        auto n = std::make_unique<Inv>();
        n->a = build(c);
        return n;
      }
    }
    throw Error(ErrorCode::InvalidArgument, "word simulation: malformed word");
  }
};

}  // namespace

WordSimulator::WordSimulator(const lang::ExprPtr& e, const lang::OperatorTable& t, double h) {
  lang::check_names(e, t);
  root_ = Builder{t, h}.build(e);
}

WordSimulator::~WordSimulator() = default;
WordSimulator::WordSimulator(WordSimulator&&) noexcept = default;
WordSimulator& WordSimulator::operator=(WordSimulator&&) noexcept = default;

double WordSimulator::step(double u) {
  const double y = root_->peek(u);
  root_->commit(u);
  return y;
}

std::vector<double> WordSimulator::run(const std::vector<double>& u) {
  std::vector<double> y;
  y.reserve(u.size());
  for (double x : u) {
    const double v = step(x);
    if (!std::isfinite(v) || std::abs(v) > 1e9)
      throw Error(ErrorCode::SimulationDiverged, "word simulation: output exceeded 1e9");
    y.push_back(v);
  }
  return y;
}

void WordSimulator::reset() { root_->reset(); }

}  // namespace srg::sim
