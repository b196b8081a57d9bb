#include "gfgcbv/interpreter.hpp"

#include <stdexcept>

namespace gfgcbv {

namespace {

std::string bits_name(unsigned s, int bits) {
  std::string out;
  for (int i = 0; i < bits; ++i) out += ((s >> i) & 1u) ? '1' : '0';
  return out;
}

std::string with_bit(std::string s, int i, char b) {
  if (i >= static_cast<int>(s.size())) throw std::invalid_argument("bit index out of range for state " + s);
  s[i] = b;
  return s;
}

}  // namespace

std::map<std::string, PureFn> builtin_pure_ops(int state_bits) {
  std::map<std::string, PureFn> ops;
  ops["is0"] = [](const Val& x) { return sgn(x.rat()) == 0 ? Val::inl(x) : Val::inr(x); };
  ops["dec"] = [](const Val& x) { return Val::num(x.rat() >= 1 ? Rational(x.rat() - 1) : Rational(0)); };
  ops["half"] = [](const Val& x) { return Val::num(x.rat() / 2); };
  ops["one"] = [](const Val&) { return Val::num(1); };
  for (int i = 0; i < state_bits; ++i) {
    std::string k = std::to_string(i);
    ops["iszero_" + k] = [i](const Val& s) { return s.name()[i] == '0' ? Val::inl(s) : Val::inr(s); };
    ops["set_" + k] = [i](const Val& s) { return Val::atom(with_bit(s.name(), i, '1')); };
    ops["clear_" + k] = [i](const Val& s) { return Val::atom(with_bit(s.name(), i, '0')); };
  }
  return ops;
}

Obj type_obj(const TypePtr& t, const std::map<std::string, Obj>& sorts, int state_bits) {
  switch (t->kind) {
    case Type::Sort: {
      auto it = sorts.find(t->name);
      if (it != sorts.end()) return it->second;
      if (t->name == "1") return Obj::unit();
      if (t->name == "Q") return Obj::rat();
      if (t->name == "S") {
        std::vector<Val> es;
        for (unsigned s = 0; s < (1u << state_bits); ++s) es.push_back(Val::atom(bits_name(s, state_bits)));
        return Obj::finite(std::move(es));
      }
      return Obj::letter(t->name, 2);
    }
    case Type::Zero: return Obj::empty();
    case Type::Sum: return Obj::sum(type_obj(t->a, sorts, state_bits), type_obj(t->b, sorts, state_bits));
    case Type::Prod: return Obj::prod(type_obj(t->a, sorts, state_bits), type_obj(t->b, sorts, state_bits));
    case Type::Arrow: return Obj::fn();
  }
  throw std::logic_error("unknown type kind");
}

Interpreter::Interpreter(const Signature& sig, const Gpm& inst, InterpConfig cfg)
    : sig_(sig), inst_(inst), cfg_(std::move(cfg)), pure_(builtin_pure_ops(cfg_.state_bits)) {
  for (const auto& [k, f] : cfg_.pure) pure_[k] = f;
}

Val Interpreter::eval_value(const Env& env, const VPtr& v) const {
  switch (v->kind) {
    case ValTerm::Var:
      for (auto it = env.rbegin(); it != env.rend(); ++it)
        if (it->first == v->name) return it->second;
      throw std::runtime_error("unbound variable at runtime: " + v->name);
    case ValTerm::PureApp: {
      auto it = pure_.find(v->name);
      if (it == pure_.end()) throw std::runtime_error("missing binding for pure op '" + v->name + "'");
      return it->second(eval_value(env, v->a));
    }
    case ValTerm::Inl: return Val::inl(eval_value(env, v->a));
    case ValTerm::Inr: return Val::inr(eval_value(env, v->a));
    case ValTerm::Pair: return Val::pair(eval_value(env, v->a), eval_value(env, v->b));
    case ValTerm::Lambda: return Val::closure(std::make_shared<const Closure>(Closure{env, v->name, v->body, v->ann}));
  }
  throw std::logic_error("unknown value kind");
}

Val Interpreter::effect(const std::string& op, const Val& arg) const {
  auto it = cfg_.effects.find(op);
  if (it != cfg_.effects.end()) return it->second(arg);
  if (auto r = inst_.effect(op, arg)) return *r;
  throw std::runtime_error("missing binding for effect '" + op + "' in instance " + inst_.name());
}

Val Interpreter::apply_closure(const Val& f, const Val& arg) const {
  const Closure& c = f.clo();
  Env env = c.env;
  env.emplace_back(c.binder, arg);
  return eval_comp(env, c.body);
}

Fn Interpreter::iter_body(const Env& env, const std::string& x, const CPtr& q) const {
  return [this, env, x, q](const Val& a) {
    Env e = env;
    e.emplace_back(x, a);
    return inst_.upsilon(eval_comp(e, q));
  };
}

Val Interpreter::eval_comp(const Env& env, const CPtr& p) const {
  auto bound = [&env](const std::string& x, const Val& a) {
    Env e = env;
    e.emplace_back(x, a);
    return e;
  };
  switch (p->kind) {
    case CompTerm::Return: return inst_.unit(eval_value(env, p->v));
    case CompTerm::Init:  // ⟦init v⟧ = !; no element of 0 reaches here
      return absurd(eval_value(env, p->v));
    case CompTerm::EffApp: return effect(p->op, eval_value(env, p->v));
    case CompTerm::DoCase: {
      // Kleisli route through −±0: ε⁻¹(ε(h) >>= [ε∘h₁, h₂]).
      Val scrut = inst_.eps(eval_comp(env, p->p));
      Fn k = [&](const Val& s) {
        if (s.is(Val::Kind::Inl)) return inst_.eps(eval_comp(bound(p->x, s.child()), p->q));
        return eval_comp(bound(p->y, s.child()), p->r);
      };
      Val joined = inst_.bind(scrut, k);
      auto out = inst_.eps_inverse(joined);
      if (!out) throw std::logic_error("docase result is not guarded: " + inst_.to_json(joined).dump());
      return *out;
    }
    case CompTerm::Case: {
      Val s = eval_value(env, p->v);
      Val branch = s.is(Val::Kind::Inl) ? Val::inl(eval_comp(bound(p->x, s.child()), p->q))
                                        : Val::inr(eval_comp(bound(p->y, s.child()), p->r));
      return inst_.map(codiag, codiag, inst_.chi(branch));
    }
    case CompTerm::PCase: {
      Val s = eval_value(env, p->v);
      Env e = bound(p->x, s.fst());
      e.emplace_back(p->y, s.snd());
      return eval_comp(e, p->q);
    }
    case CompTerm::App: return apply_closure(eval_value(env, p->v), eval_value(env, p->w));
    case CompTerm::Iter: {
      Fn body = iter_body(env, p->x, p->q);
      Val init = eval_comp(env, p->p);
      Val joined = inst_.bind(init, [&](const Val& a) {
        IterResult r = inst_.iterate(body, a, cfg_.fuel);
        exhausted_ = exhausted_ || r.exhausted;
        return r.value;
      });
      auto out = inst_.eps_inverse(joined);
      if (!out) throw std::logic_error("iteration result is not guarded: " + inst_.to_json(joined).dump());
      return *out;
    }
  }
  throw std::logic_error("unknown computation kind");
}

Fn Interpreter::docase_chain(const Gpm& inst, const Fn& h, const Fn& h1, const Fn& h2) {
  return [&inst, h, h1, h2](const Val& g) {
    Val s1 = Val::pair(g, h(g));                      // ⟨id, h⟩
    Val s2 = inst.wave_tau(s1.fst(), s1.snd());       // τ̃
    Val s3 = inst.map(h1, h2, s2);                    // h₁ ± h₂
    Val s4 = inst.zeta(s3);                           // ζ
    Fn inner = [&inst](const Val& u) { return inst.map(id_fn, inr_fn, u); };
    Val s5 = inst.map(inner, cotuple(id_fn, absurd), s4);  // (id ± inr) ± [id, !]
    Val s6 = inst.mult(s5);                           // μ
    Val s7 = inst.upsilon(s6);                        // υ
    return inst.map(codiag, id_fn, s7);               // ∇ ± id
  };
}

Val Interpreter::docase_composite(const Env& env, const CPtr& d) const {
  if (d->kind != CompTerm::DoCase) throw std::invalid_argument("docase_composite needs a docase term");
  Fn h = [this, &env, d](const Val& g) { return eval_comp(val_env(g, env), d->p); };
  auto branch = [this, &env](const std::string& x, const CPtr& body) -> Fn {
    return [this, &env, x, body](const Val& ga) {
      Env e = val_env(ga.fst(), env);
      e.emplace_back(x, ga.snd());
      return eval_comp(e, body);
    };
  };
  return docase_chain(inst_, h, branch(d->x, d->q), branch(d->y, d->r))(env_val(env));
}

Val env_val(const Env& env) {
  Val v;
  for (auto it = env.rbegin(); it != env.rend(); ++it) v = Val::pair(it->second, v);
  return v;
}

Env val_env(const Val& v, const Env& shape) {
  Env out;
  Val cur = v;
  for (const auto& [name, _] : shape) {
    out.emplace_back(name, cur.fst());
    cur = cur.snd();
  }
  return out;
}

}  // namespace gfgcbv
