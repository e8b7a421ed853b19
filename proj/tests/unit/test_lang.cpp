#include <gtest/gtest.h>

#include <cmath>

#include "srgkit/error.hpp"
#include "srgkit/lang/expr.hpp"
#include "srgkit/lang/pipeline.hpp"
#include "srgkit/lti/transfer_function.hpp"

using namespace srg::lang;
using srg::Error;
using srg::ErrorCode;
using Kind = Expr::Kind;
using srg::lti::Complex;
using srg::lti::parse_tf;

namespace {

const Complex kProbe[] = {{0.0, 0.4}, {1.0, 2.0}, {0.3, -5.0}};

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no throw";
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST(Parser, PrecedenceInverseProductSum) {
  auto e = parse_expr("A + B C^-1");
  ASSERT_EQ(e->kind, Kind::Sum);
  EXPECT_EQ(e->a->kind, Kind::Var);
  ASSERT_EQ(e->b->kind, Kind::Prod);
  EXPECT_EQ(e->b->a->name, "B");
  ASSERT_EQ(e->b->b->kind, Kind::Inv);
  EXPECT_EQ(e->b->b->a->name, "C");
}

TEST(Parser, StarAndJuxtapositionAgree) {
  EXPECT_TRUE(expr_equal(parse_expr("A*B*C"), parse_expr("A B C")));
  EXPECT_TRUE(expr_equal(parse_expr("(A B)^-1"), parse_expr("( A  B )^-1")));
}

TEST(Parser, LiteralsBecomeScales) {
  auto e = parse_expr("2.5 A");
  ASSERT_EQ(e->kind, Kind::Scale);
  EXPECT_DOUBLE_EQ(e->alpha, 2.5);
  auto d = parse_expr("A - B");
  ASSERT_EQ(d->kind, Kind::Sum);
  ASSERT_EQ(d->b->kind, Kind::Scale);
  EXPECT_DOUBLE_EQ(d->b->alpha, -1.0);
}

TEST(Parser, PrintRoundTrips) {
  for (const char* w : {"(1+L^-1)^-1", "(1+((G^-1+phi2)^-1 phi1 K)^-1)^-1", "A + 2 B C - D", "((A)^-1)^-1",
                        "A (B + C)^-1 D"}) {
    auto e = parse_expr(w);
    EXPECT_TRUE(expr_equal(parse_expr(print_expr(e)), e)) << w << " -> " << print_expr(e);
  }
}

TEST(Parser, MalformedWords) {
  for (const char* w : {"A +", "(A", "A)", "A^-2", "A^", "", "A + * B", "1.2.3 A"}) {
    EXPECT_EQ(code_of([&] { parse_expr(w); }), ErrorCode::ParseError) << w;
  }
}

TEST(Table, UnknownNamesReported) {
  OperatorTable t;
  t.add_lti("G", parse_tf("1/(s+1)"));
  EXPECT_EQ(code_of([&] { check_names(parse_expr("G + H"), t); }), ErrorCode::UnknownName);
  EXPECT_NO_THROW(check_names(parse_expr("1 + G"), t));
  EXPECT_EQ(expr_names(parse_expr("G + H G")), (std::set<std::string>{"G", "H"}));
}

TEST(Fold, FeedbackMatchesClosedForm) {
  OperatorTable t;
  auto L = parse_tf("3/((s+1)*(s+2))");
  t.add_lti("L", L);
  auto T = fold_lti(parse_expr("(1+L^-1)^-1"), t);
  for (auto s : kProbe) EXPECT_NEAR(std::abs(T(s) - L(s) / (1.0 + L(s))), 0.0, 1e-10);
  EXPECT_TRUE(is_pure_lti(parse_expr("(1+L^-1)^-1"), t));
}

TEST(Fold, CollapseKeepsNonlinearLeaves) {
  OperatorTable t;
  t.add_lti("A", parse_tf("1/(s+1)"));
  t.add_lti("B", parse_tf("2/(s+3)"));
  t.add_nonlinearity("p", srg::nonlin::saturation());
  auto e = parse_expr("(A + B) p");
  EXPECT_TRUE(has_nonlinear(e, t));
  auto c = collapse_lti(e, t);
  EXPECT_EQ(c.expr->kind, Kind::Prod);
  EXPECT_EQ(c.expr->a->kind, Kind::Var);
  EXPECT_EQ(c.expr->b->name, "p");
}

TEST(Linearize, GainReplacesNonlinearity) {
  OperatorTable t;
  auto G = parse_tf("1/(s^2+s)");
  t.add_lti("G", G);
  t.add_nonlinearity("phi", srg::nonlin::saturation());
  auto T = linearize(parse_expr("(1+G phi)^-1"), t, {{"phi", 0.75}});
  for (auto s : kProbe) EXPECT_NEAR(std::abs(T(s) - 1.0 / (1.0 + 0.75 * G(s))), 0.0, 1e-10);
}

TEST(Linearize, DefaultKappaIsSectorCenter) {
  EXPECT_DOUBLE_EQ(default_kappa(srg::nonlin::saturation(), srg::Mode::Incremental), 0.5);
  EXPECT_DOUBLE_EQ(default_kappa(srg::nonlin::slope_increase(), srg::Mode::Incremental), 1.5);
}

TEST(Linearize, KappaOutsideSectorRejected) {
  OperatorTable t;
  t.add_lti("G", parse_tf("1/(s+1)"));
  t.add_nonlinearity("phi", srg::nonlin::saturation());
  EXPECT_EQ(code_of([&] { linearize(parse_expr("G phi"), t, {{"phi", 3.0}}); }), ErrorCode::KappaOutOfSector);
}

TEST(Bound, PureLtiFeedbackRadius) {
  OperatorTable t;
  t.add_lti("L", parse_tf("1/(s+1)"));
  // (1 + L^-1)^-1 = 1/(s+2)
  auto v = srg_bound(parse_expr("(1+L^-1)^-1"), t, srg::Mode::Incremental);
  EXPECT_NEAR(srg::geom::region_radius(v.region), 0.5, 5e-3);
}

TEST(Analyze, PitfallLoopHasNoBound) {
  OperatorTable t;
  t.add_lti("L", parse_tf("-2/(s^2+s+1)"));
  auto r = analyze_interconnection(parse_expr("(1+L^-1)^-1"), t);
  EXPECT_EQ(r.verdict, srg::analysis::Verdict::NoBound);
  ASSERT_TRUE(r.linearization.has_value());
  EXPECT_FALSE(r.linearization->stable);
}

TEST(Analyze, ReportSerializes) {
  OperatorTable t;
  t.add_lti("L", parse_tf("1/(s+1)"));
  auto r = analyze_interconnection(parse_expr("(1+L^-1)^-1"), t);
  EXPECT_EQ(r.verdict, srg::analysis::Verdict::StableBounded);
  auto js = srg::analysis::report_to_json(r);
  EXPECT_NE(js.find("STABLE_BOUNDED"), std::string::npos);
  EXPECT_NE(js.find("\"r_m\""), std::string::npos);
}
