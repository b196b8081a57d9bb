#include <doctest.h>

#include <random>

#include "gfgcbv/syntax.hpp"
#include "support.hpp"

using namespace gfgcbv;

namespace {

const char* kSig = R"(signature {
  sorts A, B;
  pure f : A -> A;
  effect g : A -> B |> A;
  higher_order;
})";

Signature test_sig() { return parse_program(kSig).sig; }

// Random, shadow-free terms over the constructors the printer knows.
struct TermGen {
  std::mt19937_64 rng;
  int fresh = 0;

  int pick(int n) { return static_cast<int>(rng() % static_cast<std::uint64_t>(n)); }
  std::string var() { return "v" + std::to_string(fresh++); }

  TypePtr type(int d) {
    int k = d <= 0 ? pick(3) : pick(6);
    switch (k) {
      case 0: return t_sort("A");
      case 1: return t_sort("B");
      case 2: return pick(2) ? t_unit() : t_zero();
      case 3: return t_sum(type(d - 1), type(d - 1));
      case 4: return t_prod(type(d - 1), type(d - 1));
      default: return t_nat(1 + pick(3));
    }
  }

  VPtr value(int d, const std::vector<std::string>& scope) {
    int k = d <= 0 ? 0 : pick(6);
    switch (k) {
      case 0: return v_var(scope[static_cast<std::size_t>(pick(static_cast<int>(scope.size())))]);
      case 1: return v_pure("f", value(d - 1, scope));
      case 2: return v_inl(value(d - 1, scope), pick(2) ? t_sum(type(1), type(1)) : nullptr);
      case 3: return v_inr(value(d - 1, scope));
      case 4: return v_pair(value(d - 1, scope), value(d - 1, scope));
      default: {
        auto s2 = scope;
        std::string x = var();
        s2.push_back(x);
        return v_lambda(x, t_arrow(type(1), type(1), type(1)), comp(d - 1, s2));
      }
    }
  }

  CPtr comp(int d, const std::vector<std::string>& scope) {
    int k = d <= 0 ? pick(3) : pick(9);
    auto bind1 = [&](std::string& x) {
      x = var();
      auto s2 = scope;
      s2.push_back(x);
      return s2;
    };
    CPtr out;
    switch (k) {
      case 0: out = c_return(value(d - 1, scope)); break;
      case 1: out = c_eff("g", value(d - 1, scope)); break;
      case 2: out = c_init(value(d - 1, scope)); break;
      case 3: {
        std::string x, y;
        CPtr p = comp(d - 1, scope);
        auto sx = bind1(x);
        auto sy = bind1(y);
        out = c_docase(p, x, comp(d - 1, sx), y, comp(d - 1, sy));
        break;
      }
      case 4: {
        std::string x, y;
        VPtr v = value(d - 1, scope);
        auto sx = bind1(x);
        auto sy = bind1(y);
        out = c_case(v, x, comp(d - 1, sx), y, comp(d - 1, sy));
        break;
      }
      case 5: {
        std::string x = var(), y = var();
        auto s2 = scope;
        s2.push_back(x);
        s2.push_back(y);
        out = c_pcase(value(d - 1, scope), x, y, comp(d - 1, s2));
        break;
      }
      case 6: out = c_app(value(d - 1, scope), value(d - 1, scope)); break;
      default: {
        std::string x;
        CPtr p = comp(d - 1, scope);
        auto sx = bind1(x);
        out = c_iter(x, pick(2) ? type(1) : nullptr, p, comp(d - 1, sx));
        break;
      }
    }
    if (pick(4) == 0) out = c_annotate(out, type(1), type(1));
    return out;
  }
};

}  // namespace

TEST_SUITE("syntax") {
  TEST_CASE("return parses to a Return node under its declared type") {
    Program p = parse_program(std::string(kSig) + "\ndef r (x : A) : A |> B = return x");
    REQUIRE(p.defs.size() == 1);
    const Def& d = p.defs[0];
    CHECK(d.body->kind == CompTerm::Return);
    CHECK(d.body->v->kind == ValTerm::Var);
    CHECK(d.body->v->name == "x");
    CHECK(type_str(d.b) == "A");
    CHECK(type_str(d.c) == "B");
  }

  TEST_CASE("docase keeps both binders") {
    Signature sig = test_sig();
    CPtr t = parse_comp("docase g(x) { inl y -> return y | inr z -> init z }", sig);
    REQUIRE(t->kind == CompTerm::DoCase);
    CHECK(t->x == "y");
    CHECK(t->y == "z");
    CHECK(t->p->kind == CompTerm::EffApp);
    CHECK(t->q->kind == CompTerm::Return);
    CHECK(t->r->kind == CompTerm::Init);
  }

  TEST_CASE("bit negation is a docase over get feeding put") {
    Program p = parse_program(slurp("programs/negate.gfg"));
    const Def* d = p.find("negate0");
    REQUIRE(d);
    REQUIRE(d->body->kind == CompTerm::DoCase);
    CHECK(d->body->p->kind == CompTerm::EffApp);
    CHECK(d->body->p->op == "get");
    const CPtr& left = d->body->q;
    REQUIRE(left->kind == CompTerm::Case);
    CHECK(left->q->kind == CompTerm::EffApp);
    CHECK(left->q->op == "put");
  }

  TEST_CASE("printer renders the basic forms") {
    CHECK(print_comp(c_return(v_var("x"))) == "return x");
    std::string s = print_comp(c_docase(c_eff("g", v_var("x")), "y", c_return(v_var("y")), "z", c_init(v_var("z"))));
    CHECK(s.rfind("docase g(x)", 0) == 0);
    CHECK(s.find("inl y -> (return y)") != std::string::npos);
    CHECK(s.find("inr z -> (init z)") != std::string::npos);
    CHECK(type_str(t_nat(2)) == "(0 + 1) + 1");
  }

  TEST_CASE("program files round-trip through the printer") {
    for (const char* f : {"programs/hybrid.gfg", "programs/negate.gfg", "programs/pp.gfg"}) {
      CAPTURE(f);
      Program a = parse_program(slurp(f));
      std::string printed = print_program(a);
      Program b = parse_program(printed);
      REQUIRE(a.defs.size() == b.defs.size());
      for (std::size_t i = 0; i < a.defs.size(); ++i) {
        CHECK(a.defs[i].name == b.defs[i].name);
        CHECK(comp_eq(a.defs[i].body, b.defs[i].body));
        CHECK(type_eq(a.defs[i].b, b.defs[i].b));
        CHECK(type_eq(a.defs[i].c, b.defs[i].c));
      }
      CHECK(print_program(b) == printed);
    }
  }

  TEST_CASE("generated terms round-trip") {
    Signature sig = test_sig();
    for (std::uint64_t seed = 0; seed < 300; ++seed) {
      TermGen gen{std::mt19937_64(seed)};
      CPtr t = gen.comp(4, {"x"});
      std::string s = print_comp(t);
      CAPTURE(seed);
      CAPTURE(s);
      CPtr back = parse_comp(s, sig);
      CHECK(comp_eq(t, back));
      CHECK(print_comp(back) == s);
    }
  }

  TEST_CASE("errors carry positions") {
    try {
      parse_program("signature { sorts A; }\ndef f (x : A) : A |> 0 =\n  return (x");
      FAIL("expected a parse error");
    } catch (const ParseError& e) {
      CHECK(e.span.line == 3);
    }
    CHECK_THROWS_AS(parse_program("signature { pure f : C -> C; }"), ParseError);
    CHECK_THROWS_AS(parse_program("signature { sorts A; }\ndef f (x : A) : A |> 0 = return h(x)"), ParseError);
    CHECK_THROWS_AS(parse_program("signature { sorts A; }\ndef f (x : A, x : A) : A |> 0 = return x"), ParseError);
    CHECK_THROWS_AS(parse_program("signature { sorts A; pure f : A -> A; effect f : A -> A |> A; }"), ParseError);
    CHECK_THROWS_AS(parse_program("signature { sorts A; pure f : (A -> A |> 0) -> A; }"), ParseError);
  }
}
