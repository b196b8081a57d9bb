#include <doctest.h>

#include "gfgcbv/instances.hpp"
#include "gfgcbv/interpreter.hpp"
#include "gfgcbv/syntax.hpp"
#include "support.hpp"

using namespace gfgcbv;

namespace {

EnumConfig small() { return EnumConfig{{"a"}, 2, 2, 4000, 24, {Rational(0), Rational(1, 2), Rational(1)}}; }

Tree leaf_tree(const Val& v) { return ResumptionGpm::make_tree({{TreeNode::Leaf, v, {}, nullptr}}); }
Tree step(const std::string& a, Tree t) { return ResumptionGpm::make_tree({{TreeNode::Step, Val(), a, std::move(t)}}); }

Val as_val(const Tree& t) { return Val::comp(t); }

}  // namespace

TEST_SUITE("instances") {
  TEST_CASE("trace effects") {
    auto tr = make_instance("trace", {{"a", "b"}, 4, 1});
    Val u;
    CHECK(*tr->effect("a", u) == TraceGpm::make({{TraceEntry::Guard, {"a"}, u}}));
    CHECK(*tr->effect("b", u) == TraceGpm::make({{TraceEntry::Guard, {"b"}, u}}));
    CHECK(*tr->effect("toss", u) ==
          TraceGpm::make({{TraceEntry::Done, {}, Val::inl(u)}, {TraceEntry::Done, {}, Val::inr(u)}}));
    CHECK_FALSE(tr->effect("c", u));
    CHECK(tr->has_guard(*tr->effect("a", u)));
  }

  TEST_CASE("wait is guarded exactly for positive durations") {
    auto h = make_instance("hybrid", {});
    Val zero = *h->effect("wait", Val::num(0));
    Val half = *h->effect("wait", Val::num(Rational(1, 2)));
    CHECK(HybridGpm::data(zero).kind == TimedData::Done);
    CHECK(HybridGpm::data(half).kind == TimedData::Guard);
    CHECK(HybridGpm::data(half).elapsed == Rational(1, 2));
    CHECK_FALSE(h->has_guard(zero));
    CHECK(h->has_guard(half));
    CHECK(h->to_json(half).dump() == R"({"status":"guarded","elapsed":"1/2","value":"1/2"})");
    Val inf = HybridGpm::make(TimedData::NonTerm, 0, Val(), true);
    CHECK(h->to_json(inf).dump() == R"({"status":"nonterminating","elapsed":"inf"})");
  }

  TEST_CASE("get reads and put writes") {
    StateTraceGpm st(2, 4);
    Val g = *st.effect("get", Val());
    Val p = *st.effect("put", Val::atom("11"));
    for (unsigned s = 0; s < st.num_states(); ++s) {
      const StateEntry& ge = StateTraceGpm::at(g, s);
      CHECK(ge.kind == StateEntry::Done);
      CHECK(ge.states == std::vector<unsigned>{s});
      CHECK(ge.payload == Val::atom(st.state_name(s)));
      const StateEntry& pe = StateTraceGpm::at(p, s);
      CHECK(pe.kind == StateEntry::Guard);
      CHECK(pe.states == std::vector<unsigned>{s, 3u});
    }
    CHECK(st.state_name(1) == "10");
    CHECK(st.parse_state("01") == 2u);
  }

  TEST_CASE("bit negation writes the flipped state once") {
    Program prog = parse_program(slurp("programs/negate.gfg"));
    StateTraceGpm st(2, 4);
    InterpConfig cfg;
    cfg.state_bits = 2;
    Interpreter in(prog.sig, st, cfg);
    for (int bit = 0; bit < 2; ++bit) {
      Val v = in.eval_comp({{"x", Val()}}, prog.find("negate" + std::to_string(bit))->body);
      for (unsigned s = 0; s < 4; ++s) {
        const StateEntry& e = StateTraceGpm::at(v, s);
        CHECK(e.kind == StateEntry::Guard);
        CHECK(e.states == std::vector<unsigned>{s, s ^ (1u << bit)});
      }
    }
  }

  TEST_CASE("vacuous guardedness never admits guard exits") {
    VacuousGpm vac;
    Obj Y = Obj::letter("Y", 2), Z = Obj::letter("Z", 2);
    auto vals = enumerate(Obj::guard(Obj::sum(Y, Z), Obj::empty()), vac, small());
    std::vector<Val> dom{Val::atom("X0")};
    for (const auto& v : vals) {
      bool has_z = false;
      for (const auto& e : VacuousGpm::elems(v)) has_z = has_z || e.is(Val::Kind::Inr);
      CHECK(factorize(vac, dom, [&](const Val&) { return v; }).has_value() == !has_z);
    }
    CHECK(enumerate(Obj::guard(Y, Z), vac, small()).size() == enumerate(Obj::guard(Y, Obj::empty()), vac, small()).size());
  }

  TEST_CASE("resumption values are guarded iff the root layer has no bare exit") {
    ResumptionGpm r({"a"}, 2);
    Obj Y = Obj::letter("Y", 1), Z = Obj::letter("Z", 1);
    auto vals = enumerate(Obj::guard(Obj::sum(Y, Z), Obj::empty()), r, small());
    REQUIRE(vals.size() > 10);
    int guarded = 0;
    for (const auto& v : vals) {
      bool bare = false;
      for (const auto& n : ResumptionGpm::tree(v)->nodes)
        bare = bare || (n.kind == TreeNode::Leaf && n.leaf.is(Val::Kind::Inl) && n.leaf.child().is(Val::Kind::Inr));
      CHECK(r.eps_inverse(v).has_value() == !bare);
      guarded += !bare;
    }
    CHECK(guarded > 0);
    CHECK(guarded < static_cast<int>(vals.size()));
  }

  TEST_CASE("bounded equality") {
    ResumptionGpm r({"a", "b"}, 4);
    Val x = Val::inl(Val::atom("X0"));
    Tree t1 = step("a", step("a", step("a", leaf_tree(x))));
    Tree t2 = step("a", step("a", step("b", leaf_tree(x))));
    CHECK(bounded_equal(r, as_val(t1), as_val(t1), 2));
    CHECK(bounded_equal(r, as_val(t1), as_val(t2), 2));
    CHECK_FALSE(bounded_equal(r, as_val(t1), as_val(t2), 3));
    TraceGpm tr({"a"});
    Val s1 = TraceGpm::make({{TraceEntry::Done, {"a"}, Val()}});
    Val s2 = TraceGpm::make({{TraceEntry::Done, {"a"}, Val()}, {TraceEntry::Term, {"a", "a"}, Val()}});
    CHECK_FALSE(bounded_equal(tr, s1, s2, 4));
  }

  TEST_CASE("invalid configurations are rejected") {
    CHECK_THROWS_AS(make_instance("trace", {{}, 4, 1}), std::invalid_argument);
    CHECK_THROWS_AS(make_instance("resumption", {{"a"}, 0, 1}), std::invalid_argument);
    CHECK_THROWS_AS(make_instance("state_trace", {{"a"}, 4, 0}), std::invalid_argument);
    CHECK_THROWS_AS(make_instance("nope", {}), std::invalid_argument);
    for (const auto& n : instance_names()) CHECK(make_instance(n, {})->name() == n);
  }

  TEST_CASE("serialization is stable") {
    TraceGpm tr({"a", "b"});
    Val v = TraceGpm::make({{TraceEntry::Guard, {"a", "b"}, Val::inl(Val::atom("Z0"))}, {TraceEntry::Div, {"b"}, Val()}});
    CHECK(tr.to_json(v).dump() == tr.to_json(TraceGpm::make(TraceGpm::entries(v))).dump());
    CHECK(val_json(Val::num(Rational(6, 4))).dump() == "\"3/2\"");
  }
}
