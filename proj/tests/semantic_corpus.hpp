#pragma once

// Docase and weaken terms over a small signature, evaluated on the trace
// instance with every effect table drawn from enumerated carriers.

#include <string>
#include <vector>

#include "gfgcbv/checker.hpp"
#include "gfgcbv/instances.hpp"
#include "gfgcbv/interpreter.hpp"

namespace corpus {

using namespace gfgcbv;

inline const char* kSignature = R"(signature {
  sorts A, B, C, D;
  pure f : A -> B;
  effect g : A -> B |> C;
  effect h : B -> D |> C;
  effect k : C -> D |> 0;
  effect m : A -> 0 |> C;
  effect w : A -> B |> D + C;
})";

struct Case {
  std::string term;
  std::string b, c;  // expected B |> C
};

inline std::vector<Case> docase_cases() {
  return {
      {"docase g(x) { inl y -> return y | inr z -> return (inr z) }", "B", "C"},
      {"docase g(x) { inl y -> h(y) | inr z -> return (inr z) }", "D", "C"},
      {"docase g(x) { inl y -> h(y) | inr z -> docase k(z) { inl d -> return (inl d) | inr e -> init e } }", "D", "C"},
      {"docase (return f(x) : B |> C) { inl y -> h(y) | inr z -> return (inr z) }", "D", "C"},
      {"docase m(x) { inl y -> init y | inr z -> return (inr z) }", "D", "C"},
      {"docase g(x) { inl y -> docase h(y) { inl d -> return d | inr c -> return (inr c) } | inr z -> return (inr z) }",
       "D", "C"},
  };
}

inline const std::vector<Val>& letters_A() {
  static const Obj A = Obj::letter("A", 2);
  return A.elems();
}

struct Tally {
  std::size_t checked = 0, mismatches = 0;
  std::string first_failure;
};

struct Model {
  Program prog = parse_program(kSignature);
  TraceGpm inst{{"a"}};
  EnumConfig enumc{{"a"}, 2, 2, 4000, 24, {}};
  std::map<std::string, std::vector<Val>> pool;  // effect op ↦ candidate results
  std::map<std::string, Obj> dom;

  Model() {
    Obj A = Obj::letter("A", 2), B = Obj::letter("B", 2), C = Obj::letter("C", 2), D = Obj::letter("D", 2);
    pool["g"] = thin(enumerate(Obj::guard(B, C), inst, enumc), 40);
    pool["h"] = thin(enumerate(Obj::guard(D, C), inst, enumc), 40);
    pool["k"] = thin(enumerate(Obj::guard(D, Obj::empty()), inst, enumc), 40);
    pool["m"] = thin(enumerate(Obj::guard(Obj::empty(), C), inst, enumc), 40);
    pool["w"] = thin(enumerate(Obj::guard(B, Obj::sum(D, C)), inst, enumc), 40);
    dom = {{"g", A}, {"h", B}, {"k", C}, {"m", A}, {"w", A}};
  }

  // Effect table number `t`: each (op, argument) picks a pool entry by a fixed stride.
  InterpConfig table(std::size_t t) const {
    InterpConfig cfg;
    cfg.pure["f"] = [](const Val& a) { return Val::atom("B" + a.name().substr(1)); };
    std::size_t salt = 0;
    for (const auto& [op, vals] : pool) {
      std::vector<Val> args = dom.at(op).elems();
      std::map<Val, Val> tab;
      for (std::size_t i = 0; i < args.size(); ++i, ++salt)
        tab.emplace(args[i], vals[(t * (2 * salt + 3) + 5 * salt) % vals.size()]);
      cfg.effects[op] = [tab](const Val& a) { return tab.at(a); };
    }
    return cfg;
  }
};

inline Tally docase_crosscheck(std::size_t tables) {
  Model md;
  Tally out;
  const Signature& sig = md.prog.sig;
  Context ctx{{"x", t_sort("A")}};
  for (const auto& c : docase_cases()) {
    CPtr t = parse_comp(c.term, sig);
    check_comp(sig, ctx, t, parse_type(c.b, sig), parse_type(c.c, sig));
    for (std::size_t tab = 0; tab < tables; ++tab) {
      Interpreter in(sig, md.inst, md.table(tab));
      for (const auto& a : letters_A()) {
        Env env{{"x", a}};
        ++out.checked;
        if (!(in.docase_composite(env, t) == in.eval_comp(env, t))) {
          ++out.mismatches;
          if (out.first_failure.empty()) out.first_failure = c.term + " at x = " + a.str();
        }
      }
    }
  }
  return out;
}

// ε ∘ ⟦weaken p⟧ = T(assoc) ∘ ε ∘ ⟦p⟧ for p : B |> (D + C).
inline Tally weaken_coherence(std::size_t tables) {
  Model md;
  Tally out;
  const Signature& sig = md.prog.sig;
  Context ctx{{"x", t_sort("A")}};
  std::vector<std::string> terms{
      "w(x)",
      "docase w(x) { inl y -> return y | inr z -> return (inr z) }",
      "docase g(x) { inl y -> return y | inr z -> return (inr (inr z)) }",
  };
  TypePtr guard = t_sum(t_sort("D"), t_sort("C"));
  Fn assoc = [](const Val& v) -> Val {
    if (v.is(Val::Kind::Inl)) return Val::inl(Val::inl(v.child()));
    const Val& r = v.child();
    return r.is(Val::Kind::Inl) ? Val::inl(Val::inr(r.child())) : Val::inr(r.child());
  };
  for (const auto& s : terms) {
    CPtr p = parse_comp(s, sig);
    Judgement j = check_comp(sig, ctx, p, t_sort("B"), guard);
    CPtr wk = weaken(j);
    check_comp(sig, ctx, wk, t_sum(t_sort("B"), t_sort("D")), t_sort("C"));
    for (std::size_t tab = 0; tab < tables; ++tab) {
      Interpreter in(sig, md.inst, md.table(tab));
      for (const auto& a : letters_A()) {
        Env env{{"x", a}};
        ++out.checked;
        Val lhs = md.inst.eps(in.eval_comp(env, wk));
        Val rhs = md.inst.map(assoc, absurd, md.inst.eps(in.eval_comp(env, p)));
        if (!(lhs == rhs)) {
          ++out.mismatches;
          if (out.first_failure.empty()) out.first_failure = s + " at x = " + a.str();
        }
      }
    }
  }
  return out;
}

}  // namespace corpus
