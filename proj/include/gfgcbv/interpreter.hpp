#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "gfgcbv/gpm.hpp"
#include "gfgcbv/syntax.hpp"

namespace gfgcbv {

using Env = std::vector<std::pair<std::string, Val>>;

struct Closure {
  Env env;
  std::string binder;
  CPtr body;
  TypePtr arrow;
};

/// A pure op on values, e.g. is0 : Q -> Q + Q.
using PureFn = std::function<Val(const Val&)>;
/// A generic effect: argument ↦ element of B ± C.
using EffectFn = std::function<Val(const Val&)>;

/// Built-in pure ops: is0, dec, half, one (hybrid) and iszero_i, set_i, clear_i
/// on bitstring states of the given width.
std::map<std::string, PureFn> builtin_pure_ops(int state_bits);

/// ⟦A⟧ for a type; sorts come from `sorts` (defaults: 1 ↦ {*}, Q ↦ rationals,
/// S ↦ states of width `state_bits`, anything else ↦ a two-element set).
Obj type_obj(const TypePtr& t, const std::map<std::string, Obj>& sorts, int state_bits);

struct InterpConfig {
  int fuel = 16;
  int state_bits = 1;
  std::map<std::string, PureFn> pure;      // overrides builtins
  std::map<std::string, EffectFn> effects;  // overrides the instance's generic effects
};

class Interpreter {
 public:
  Interpreter(const Signature& sig, const Gpm& inst, InterpConfig cfg = {});

  Val eval_value(const Env& env, const VPtr& v) const;
  /// Element of ⟦B⟧ ± ⟦C⟧.
  Val eval_comp(const Env& env, const CPtr& p) const;
  Val apply_closure(const Val& f, const Val& arg) const;

  /// The iteration body a ↦ υ(⟦q⟧(env, x ↦ a)) : A → (B + C) ± A.
  Fn iter_body(const Env& env, const std::string& x, const CPtr& q) const;

  /// The literal docase chain ⟨id,h⟩; τ̃; h₁±h₂; ζ; (id±inr)±[id,!]; μ; υ; ∇±id,
  /// with environments encoded as values by `env_val` / `val_env`.
  Val docase_composite(const Env& env, const CPtr& docase) const;
  static Fn docase_chain(const Gpm& inst, const Fn& h, const Fn& h1, const Fn& h2);

  /// Set when some Iter ran out of fuel since the last reset.
  bool exhausted() const { return exhausted_; }
  void reset() const { exhausted_ = false; }
  const Gpm& instance() const { return inst_; }

 private:
  Val effect(const std::string& op, const Val& arg) const;
  const Signature& sig_;
  const Gpm& inst_;
  InterpConfig cfg_;
  std::map<std::string, PureFn> pure_;
  mutable bool exhausted_ = false;
};

/// Environments as right-nested pairs ending in the unit, for the docase chain.
Val env_val(const Env& env);
Env val_env(const Val& v, const Env& shape);

}  // namespace gfgcbv
