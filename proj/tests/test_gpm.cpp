#include <doctest.h>

#include "gfgcbv/gpm.hpp"
#include "gfgcbv/instances.hpp"

using namespace gfgcbv;

namespace {

// ---- a direct powerset-of-traces oracle, written against the carrier only ----

using Entries = std::vector<TraceEntry>;

Word cat(const Word& a, const Word& b) {
  Word w = a;
  w.insert(w.end(), b.begin(), b.end());
  return w;
}

// Runs `inner` on a nested trace set and prefixes the outer word.
template <class F>
void graft(Entries& out, const TraceEntry& e, F&& relabel) {
  for (const auto& ie : TraceGpm::entries(e.payload)) {
    TraceEntry r = ie;
    r.word = cat(e.word, ie.word);
    relabel(r, ie);
    out.push_back(r);
  }
}

Val oracle_xi(const Val& v) {
  Entries out;
  for (const auto& e : TraceGpm::entries(v)) {
    if (e.kind == TraceEntry::Done) {
      graft(out, e, [](TraceEntry& r, const TraceEntry& ie) {
        if (ie.kind == TraceEntry::Guard) r.payload = Val::inl(ie.payload);
      });
    } else if (e.kind == TraceEntry::Guard) {
      out.push_back({TraceEntry::Guard, e.word, Val::inr(e.payload)});
    } else {
      out.push_back(e);
    }
  }
  return TraceGpm::make(out);
}

Val oracle_zeta(const Val& v) {
  Entries out;
  for (const auto& e : TraceGpm::entries(v)) {
    if (e.kind == TraceEntry::Guard) {
      graft(out, e, [](TraceEntry& r, const TraceEntry& ie) {
        if (ie.kind == TraceEntry::Done) r = {TraceEntry::Guard, r.word, Val::inl(ie.payload)};
        if (ie.kind == TraceEntry::Guard) r.payload = Val::inr(ie.payload);
      });
    } else {
      out.push_back(e);
    }
  }
  return TraceGpm::make(out);
}

Val oracle_upsilon(const Val& v) {
  Entries out;
  for (auto e : TraceGpm::entries(v)) {
    if (e.kind == TraceEntry::Done) e.payload = Val::inl(e.payload);
    if (e.kind == TraceEntry::Guard) {
      if (e.payload.is(Val::Kind::Inl))
        e = {TraceEntry::Done, e.word, Val::inr(e.payload.child())};
      else
        e.payload = e.payload.child();
    }
    out.push_back(e);
  }
  return TraceGpm::make(out);
}

// Kleisli multiplication of the trace monad (X ± Y) ± Y → X ± Y.
Val oracle_mult(const Val& v) {
  Entries out;
  for (const auto& e : TraceGpm::entries(v)) {
    if (e.kind == TraceEntry::Done)
      graft(out, e, [](TraceEntry&, const TraceEntry&) {});
    else
      out.push_back(e);
  }
  return TraceGpm::make(out);
}

EnumConfig small() { return EnumConfig{{"a"}, 2, 2, 4000, 24, {Rational(0), Rational(1, 2), Rational(1)}}; }

Obj L(const std::string& b, int n) { return Obj::letter(b, n); }

Val hyb(TimedData::Kind k, Rational t, Val p) { return HybridGpm::make(k, std::move(t), std::move(p)); }

}  // namespace

TEST_SUITE("gpm") {
  TEST_CASE("units") {
    TraceGpm tr({"a"});
    Val a = Val::atom("a0");
    CHECK(tr.eta(a) == TraceGpm::make({{TraceEntry::Done, {}, a}}));
    HybridGpm h;
    CHECK(h.eta(a) == hyb(TimedData::Done, 0, a));
    VacuousGpm vac;
    CHECK(vac.eta(a) == VacuousGpm::make({a}));
  }

  TEST_CASE("map is functorial and relabels payloads only") {
    TraceGpm tr({"a"});
    auto vals = enumerate(Obj::guard(L("A", 2), L("B", 2)), tr, small());
    REQUIRE(vals.size() > 10);
    Fn swapA = [](const Val& v) { return Val::atom(v.name() == "A0" ? "A1" : "A0"); };
    for (const auto& v : vals) {
      CHECK(tr.map(id_fn, id_fn, v) == v);
      CHECK(tr.map(swapA, id_fn, tr.map(swapA, id_fn, v)) == v);
      Val m = tr.map(swapA, id_fn, v);
      REQUIRE(TraceGpm::entries(m).size() == TraceGpm::entries(v).size());
    }
    HybridGpm h;
    Val g = hyb(TimedData::Guard, Rational(3, 2), Val::atom("B0"));
    Fn toB1 = [](const Val&) { return Val::atom("B1"); };
    CHECK(h.map(id_fn, toB1, g) == hyb(TimedData::Guard, Rational(3, 2), Val::atom("B1")));
  }

  TEST_CASE("trace primitives agree with the powerset-of-traces oracle") {
    TraceGpm tr({"a"});
    EnumConfig cfg = small();
    auto nested = enumerate(Obj::guard(Obj::guard(L("A", 1), L("B", 1)), L("C", 1)), tr, cfg);
    for (const auto& v : nested) CHECK(tr.xi(v) == oracle_xi(v));
    auto inner = enumerate(Obj::guard(L("A", 1), Obj::guard(L("B", 1), L("C", 1))), tr, cfg);
    for (const auto& v : inner) CHECK(tr.zeta(v) == oracle_zeta(v));
    auto split = enumerate(Obj::guard(L("A", 1), Obj::sum(L("B", 1), L("C", 1))), tr, cfg);
    for (const auto& v : split) CHECK(tr.upsilon(v) == oracle_upsilon(v));
    auto twice = enumerate(Obj::guard(Obj::guard(L("X", 1), L("Y", 1)), L("Y", 1)), tr, cfg);
    for (const auto& v : twice) CHECK(tr.mult(v) == oracle_mult(v));
    CHECK(nested.size() > 20);
    CHECK(twice.size() > 20);
  }

  TEST_CASE("xi of nested units is a unit") {
    for (const auto& n : instance_names()) {
      CAPTURE(n);
      auto inst = make_instance(n, {});
      Val a = Val::atom("A0");
      CHECK(inst->xi(inst->eta(inst->eta(a))) == inst->eta(a));
      CHECK(inst->zeta(inst->map(id_fn, [&](const Val& v) { return inst->eta(v); }, inst->eta(a))) == inst->eta(a));
    }
  }

  TEST_CASE("hybrid structure adds times and keeps guards positive") {
    HybridGpm h;
    Val b = Val::atom("B0");
    CHECK(h.xi(hyb(TimedData::Done, Rational(1, 2), hyb(TimedData::Guard, Rational(1), b))) ==
          hyb(TimedData::Guard, Rational(3, 2), Val::inl(b)));
    CHECK(h.xi(hyb(TimedData::Guard, Rational(1, 3), b)) == hyb(TimedData::Guard, Rational(1, 3), Val::inr(b)));
    CHECK(h.upsilon(hyb(TimedData::Guard, Rational(1, 2), Val::inl(b))) ==
          hyb(TimedData::Done, Rational(1, 2), Val::inr(b)));
    CHECK(h.eps(hyb(TimedData::Guard, Rational(2), b)) == hyb(TimedData::Done, Rational(2), Val::inr(b)));
    Val x = Val::atom("X0");
    CHECK(h.wave_tau(x, hyb(TimedData::Guard, Rational(1), b)) ==
          hyb(TimedData::Guard, Rational(1), Val::pair(x, b)));
  }

  TEST_CASE("chi is the copairing of the two injections") {
    for (const auto& n : instance_names()) {
      CAPTURE(n);
      InstanceConfig ic;
      ic.depth = 2;
      auto inst = make_instance(n, ic);
      Obj side = Obj::guard(L("A", 1), L("B", 1));
      auto vals = enumerate(Obj::sum(side, side), *inst, small());
      REQUIRE_FALSE(vals.empty());
      for (const auto& v : vals) {
        Val c = inst->chi(v);
        CHECK(inst->map(codiag, codiag, c) == codiag(v));
        const Val& inner = v.child();
        if (v.is(Val::Kind::Inl))
          CHECK(c == inst->map(inl_fn, inl_fn, inner));
        else
          CHECK(c == inst->map(inr_fn, inr_fn, inner));
      }
    }
  }

  TEST_CASE("strength pairs into both coordinates") {
    TraceGpm tr({"a"});
    Val x = Val::atom("X0"), y = Val::atom("Y0");
    CHECK(tr.wave_tau(x, tr.eta(y)) == tr.eta(Val::pair(x, y)));
    Val v = TraceGpm::make({{TraceEntry::Done, {"a"}, y}, {TraceEntry::Guard, {"a", "a"}, Val::atom("Z0")}});
    Val expect = TraceGpm::make(
        {{TraceEntry::Done, {"a"}, Val::pair(x, y)}, {TraceEntry::Guard, {"a", "a"}, Val::pair(x, Val::atom("Z0"))}});
    CHECK(tr.wave_tau(x, v) == expect);
  }

  TEST_CASE("eps is injective on enumerated carriers") {
    for (const auto& n : instance_names()) {
      CAPTURE(n);
      InstanceConfig ic;
      ic.depth = 2;
      auto inst = make_instance(n, ic);
      auto vals = enumerate(Obj::guard(L("A", 2), L("B", 2)), *inst, small());
      std::vector<Val> images;
      for (const auto& v : vals) images.push_back(inst->eps(v));
      std::sort(images.begin(), images.end());
      CHECK(std::adjacent_find(images.begin(), images.end()) == images.end());
      CHECK(inst->eps(inst->eta(Val::atom("A0"))) == inst->eta(Val::inl(Val::atom("A0"))));
    }
  }

  TEST_CASE("factorization through eps") {
    std::vector<Val> dom{Val::atom("X0")};
    Val z = Val::atom("Z0");
    HybridGpm h;
    auto ok = factorize(h, dom, [&](const Val&) { return hyb(TimedData::Done, Rational(1, 2), Val::inr(z)); });
    REQUIRE(ok);
    CHECK((*ok)[0].second == hyb(TimedData::Guard, Rational(1, 2), z));
    CHECK_FALSE(factorize(h, dom, [&](const Val&) { return hyb(TimedData::Done, 0, Val::inr(z)); }));

    TraceGpm tr({"a"});
    CHECK_FALSE(factorize(tr, dom, [&](const Val&) { return TraceGpm::make({{TraceEntry::Done, {}, Val::inr(z)}}); }));
    auto t = factorize(tr, dom, [&](const Val&) { return TraceGpm::make({{TraceEntry::Done, {"a"}, Val::inr(z)}}); });
    REQUIRE(t);
    CHECK((*t)[0].second == TraceGpm::make({{TraceEntry::Guard, {"a"}, z}}));
  }

  TEST_CASE("factorization round-trips and matches exhaustive search") {
    for (const auto& n : instance_names()) {
      CAPTURE(n);
      InstanceConfig ic;
      ic.depth = 2;
      auto inst = make_instance(n, ic);
      auto cands = enumerate(Obj::guard(L("Y", 1), L("Z", 1)), *inst, small());
      std::vector<Val> dom{Val::atom("X0")};
      for (const auto& g : cands) {
        Fn f = [&](const Val&) { return inst->eps(g); };
        auto direct = factorize(*inst, dom, f);
        REQUIRE(direct);
        CHECK((*direct)[0].second == g);
        auto searched = factorize_search(*inst, dom, f, cands);
        REQUIRE(searched);
        CHECK((*searched)[0].second == g);
      }
    }
  }

  TEST_CASE("iterate reproduces the hybrid behaviour classes") {
    HybridGpm h;
    Fn dec = [&](const Val& x) {
      if (x.rat() == 0) return h.eta(x);
      return hyb(TimedData::Guard, x.rat(), Val::num(x.rat() >= 1 ? Rational(x.rat() - 1) : Rational(0)));
    };
    // expected elapsed: sum of the waits along the orbit
    Rational waited = 0;
    for (Rational x = 3; x > 0; x -= 1) waited += x;
    IterResult r = h.iterate(dec, Val::num(3), 10);
    CHECK_FALSE(r.exhausted);
    CHECK(HybridGpm::data(r.value).kind == TimedData::Done);
    CHECK(HybridGpm::data(r.value).elapsed == waited);
    CHECK(HybridGpm::data(r.value).payload == Val::num(0));

    Fn half = [&](const Val& x) { return hyb(TimedData::Guard, x.rat(), Val::num(x.rat() / 2)); };
    Rational geo = 0, term = 1;
    for (int k = 0; k < 20; ++k, term /= 2) geo += term;
    IterResult z = h.iterate(half, Val::num(1), 20);
    CHECK(z.exhausted);
    CHECK(HybridGpm::data(z.value).kind == TimedData::NonTerm);
    CHECK(HybridGpm::data(z.value).elapsed == geo);
    mpz_class two19 = 1;
    two19 <<= 19;
    CHECK(geo == Rational(2) - Rational(1) / Rational(two19));

    IterResult once = h.iterate([&](const Val&) { return h.eta(Val::atom("Y0")); }, Val::num(1), 5);
    CHECK_FALSE(once.exhausted);
    CHECK(once.steps == 1);
    CHECK(once.value == h.eta(Val::atom("Y0")));
  }

  TEST_CASE("iterate unrolls once per extra unit of fuel") {
    for (std::string n : {"trace", "hybrid", "vacuous"}) {
      CAPTURE(n);
      auto inst = make_instance(n, {});
      Obj X = L("X", 2);
      auto vals = enumerate(Obj::guard(L("Y", 1), X), *inst, small());
      REQUIRE(vals.size() >= 2);
      std::size_t tried = 0;
      for (std::size_t i = 0; i < vals.size() && tried < 60; i += 3, ++tried) {
        const Val& v0 = vals[i];
        const Val& v1 = vals[(i * 7 + 1) % vals.size()];
        Fn body = [&](const Val& x) { return x.name() == "X0" ? v0 : v1; };
        for (int fuel = 1; fuel <= 3; ++fuel) {
          CAPTURE(fuel);
          Fn rest = [&](const Val& x) { return inst->iterate(body, x, fuel).value; };
          Val once = inst->map(codiag, absurd, inst->upsilon(inst->zeta(inst->map(id_fn, rest, body(Val::atom("X0"))))));
          CHECK(inst->iterate(body, Val::atom("X0"), fuel + 1).value == once);
        }
      }
    }
  }
}
