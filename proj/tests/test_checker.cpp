#include <doctest.h>

#include "gfgcbv/bpa.hpp"
#include "gfgcbv/checker.hpp"
#include "support.hpp"

using namespace gfgcbv;

namespace {

Program sig_program() {
  return parse_program(R"(signature {
    sorts A, B, C;
    pure f : A -> B;
    effect a : 1 -> 0 |> 1;
    effect g : A -> B |> C;
    higher_order;
  })");
}

ErrKind check_kind(const Signature& sig, const Context& ctx, const std::string& term, const TypePtr& b,
                   const TypePtr& c, std::string* rule = nullptr) {
  try {
    check_comp(sig, ctx, parse_comp(term, sig), b, c);
  } catch (const TypeError& e) {
    if (rule) *rule = e.rule;
    return e.kind;
  }
  FAIL("expected a type error for " << term);
  return ErrKind::UnboundVar;
}

const TypePtr A = t_sort("A"), B = t_sort("B"), C = t_sort("C");

}  // namespace

TEST_SUITE("checker") {
  TEST_CASE("value typing") {
    Signature sig = sig_program().sig;
    CHECK(type_eq(infer_value(sig, {{"x", A}}, v_var("x")), A));
    CHECK(type_eq(infer_value(sig, {{"x", A}, {"y", B}}, v_pair(v_var("x"), v_var("y"))), t_prod(A, B)));
    CHECK(type_eq(infer_value(sig, {{"x", A}}, v_pure("f", v_var("x"))), B));
    CHECK(type_eq(infer_value(sig, {{"x", A}}, v_inl(v_var("x"), t_sum(A, B))), t_sum(A, B)));
    CHECK_NOTHROW(check_value(sig, {{"x", A}}, v_inl(v_var("x")), t_sum(A, B)));
    try {
      infer_value(sig, {{"x", A}}, v_inl(v_var("x")));
      FAIL("unannotated injection has no principal type");
    } catch (const TypeError& e) {
      CHECK(e.kind == ErrKind::AnnotationMissing);
    }
    try {
      infer_value(sig, {}, v_var("nope"));
      FAIL("unbound");
    } catch (const TypeError& e) {
      CHECK(e.kind == ErrKind::UnboundVar);
    }
    try {
      infer_value(sig, {{"y", B}}, v_pure("f", v_var("y")));
      FAIL("argument sort");
    } catch (const TypeError& e) {
      CHECK(e.kind == ErrKind::SortMismatch);
    }
  }

  TEST_CASE("return checks at every guard type") {
    Signature sig = sig_program().sig;
    for (const TypePtr& g : {A, B, t_zero(), t_unit(), t_sum(B, C), t_prod(A, A), t_nat(3)}) {
      CAPTURE(type_str(g));
      Judgement j = check_comp(sig, {{"x", A}}, c_return(v_var("x")), A, g);
      CHECK(j.derivation.rule == "return");
    }
  }

  TEST_CASE("P = P is rejected by the iteration rule") {
    Program p = parse_program(slurp("programs/pp.gfg"));
    auto reports = check_program(p);
    REQUIRE(reports.size() == 1);
    REQUIRE_FALSE(reports[0].ok);
    CHECK(reports[0].errors[0].kind == ErrKind::GuardViolation);
    CHECK(reports[0].errors[0].rule == "return-unguarded");
    CHECK(reports[0].errors[0].render().find("GuardViolation") != std::string::npos);
  }

  TEST_CASE("translated FIFO checks with guarded name exits") {
    BpaSystem sys = parse_bpa(slurp("programs/fifo.bpa"));
    BpaProgram prog = build_bpa_program(sys);
    Context ctx{{"x", t_nat(prog.n)}};
    Judgement j = check_comp(prog.sig, ctx, prog.body, t_unit(), t_sum(prog.exit_type, t_nat(prog.n)));
    CHECK(j.derivation.size() > 100);
    for (int i = 0; i < prog.n; ++i)
      CHECK_NOTHROW(check_comp(prog.sig, {{"x", t_unit()}}, prog.solve_term(i), t_unit(), prog.exit_type));
  }

  TEST_CASE("docase branches") {
    Signature sig = sig_program().sig;
    Context ctx{{"x", A}};
    // right branch must live at (C + D) |> 0
    CHECK_NOTHROW(check_comp(sig, ctx, parse_comp("docase g(x) { inl y -> return y | inr z -> return (inr z) }", sig), B,
                             C));
    std::string rule;
    CHECK(check_kind(sig, ctx, "docase g(x) { inl y -> return y | inr z -> return (inl z) }", B, C, &rule) ==
          ErrKind::SortMismatch);
    // an unguarded exit in the right branch is a guard failure
    CHECK(check_kind(sig, {{"x", t_unit()}}, "docase a(x) { inl y -> init y | inr z -> a(z) }", t_zero(), t_unit(),
                     &rule) == ErrKind::GuardViolation);
    CHECK(rule == "docase-right-branch");
  }

  TEST_CASE("weaken re-checks at A + B |> C") {
    Signature sig = sig_program().sig;
    Context ctx{{"x", A}};
    for (const TypePtr& left : {B, t_zero()}) {
      CAPTURE(type_str(left));
      TypePtr guard = t_sum(left, C);
      CPtr p = c_docase(c_eff("g", v_var("x")), "y", c_return(v_var("y")), "z", c_return(v_inr(v_inr(v_var("z")))));
      Judgement j = check_comp(sig, ctx, p, B, guard);
      CPtr w = weaken(j);
      CHECK_NOTHROW(check_comp(sig, ctx, w, t_sum(B, left), C));
      // no implicit subsumption
      CHECK_THROWS_AS(check_comp(sig, ctx, p, t_sum(B, left), C), TypeError);
    }
    Judgement flat = check_comp(sig, ctx, c_return(v_var("x")), A, B);
    CHECK_THROWS_AS(weaken(flat), TypeError);
  }

  TEST_CASE("application of a decorated arrow yields its guard") {
    Signature sig = sig_program().sig;
    CPtr t = parse_comp("app (fun (y : A) : B |> C => g(y)) x", sig);
    CHECK_NOTHROW(check_comp(sig, {{"x", A}}, t, B, C));
    CHECK_THROWS_AS(check_comp(sig, {{"x", A}}, t, B, t_sum(C, C)), TypeError);
  }

  TEST_CASE("iter checks init at A |> 0 and body at B |> C + A") {
    Signature sig = sig_program().sig;
    Context ctx{{"x", t_unit()}};
    // loop that always acts before recurring
    CPtr loop = parse_comp(
        "iter x : 1 <- return x in docase a(x) { inl y -> init y | inr z -> return (inr (inr z)) }", sig);
    CHECK_NOTHROW(check_comp(sig, ctx, loop, t_zero(), t_zero()));
    CHECK(check_kind(sig, ctx, "iter x : 1 <- return x in return (inr x)", t_zero(), t_zero()) ==
          ErrKind::GuardViolation);
  }

  TEST_CASE("checking is deterministic") {
    Program p = parse_program(slurp("programs/negate.gfg"));
    auto r1 = check_program(p), r2 = check_program(p);
    REQUIRE(r1.size() == r2.size());
    for (std::size_t i = 0; i < r1.size(); ++i) {
      REQUIRE(r1[i].ok);
      CHECK(r1[i].judgement->derivation.size() == r2[i].judgement->derivation.size());
      CHECK(r1[i].judgement->derivation.conclusion == r2[i].judgement->derivation.conclusion);
    }
  }

  TEST_CASE("branch binders shadow the context") {
    Signature sig = sig_program().sig;
    CPtr t = parse_comp("case x { inl x -> return x | inr x -> return x }", sig);
    CHECK_NOTHROW(check_comp(sig, {{"x", t_sum(A, A)}}, t, A, t_zero()));
  }
}
