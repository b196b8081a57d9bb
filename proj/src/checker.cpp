#include "gfgcbv/checker.hpp"

namespace gfgcbv {

std::string err_kind_str(ErrKind k) {
  switch (k) {
    case ErrKind::UnboundVar: return "UnboundVar";
    case ErrKind::SortMismatch: return "SortMismatch";
    case ErrKind::GuardViolation: return "GuardViolation";
    case ErrKind::ArityMismatch: return "ArityMismatch";
    case ErrKind::AnnotationMissing: return "AnnotationMissing";
  }
  return "?";
}

TypeError::TypeError(ErrKind k, std::string rule_, Span s, std::string detail_, TypePtr eb, TypePtr ec, TypePtr ab,
                     TypePtr ac)
    : std::runtime_error(err_kind_str(k) + " [" + rule_ + "]: " + detail_),
      kind(k),
      rule(std::move(rule_)),
      span(s),
      exp_b(std::move(eb)),
      exp_c(std::move(ec)),
      act_b(std::move(ab)),
      act_c(std::move(ac)),
      detail(std::move(detail_)) {}

namespace {

std::string judgement_type(const TypePtr& b, const TypePtr& c) {
  return c ? type_str(b) + " |> " + type_str(c) : type_str(b);
}

}  // namespace

std::string TypeError::render() const {
  std::string s = span.str() + ": " + err_kind_str(kind) + " [" + rule + "]: " + detail;
  if (exp_b) s += "; expected " + judgement_type(exp_b, exp_c);
  if (act_b) s += ", actual " + judgement_type(act_b, act_c);
  return s;
}

size_t Derivation::size() const {
  size_t n = 1;
  for (const auto& p : premises) n += p.size();
  return n;
}

namespace {

const char* comp_keyword(CompTerm::Kind k) {
  switch (k) {
    case CompTerm::EffApp: return "effect";
    case CompTerm::Return: return "return";
    case CompTerm::DoCase: return "docase";
    case CompTerm::Init: return "init";
    case CompTerm::Case: return "case";
    case CompTerm::PCase: return "pcase";
    case CompTerm::App: return "app";
    case CompTerm::Iter: return "iter";
  }
  return "?";
}

struct Checker {
  const Signature& sig;

  static Context extend(const Context& ctx, const std::string& x, TypePtr t) {
    Context out = ctx;
    out.emplace_back(x, std::move(t));
    return out;
  }

  static const TypePtr* lookup(const Context& ctx, const std::string& x) {
    for (auto it = ctx.rbegin(); it != ctx.rend(); ++it)
      if (it->first == x) return &it->second;
    return nullptr;
  }

  // ---- values ----

  TypePtr infer(const Context& ctx, const VPtr& v, Derivation& d) {
    switch (v->kind) {
      case ValTerm::Var: {
        const TypePtr* t = lookup(ctx, v->name);
        if (!t) throw TypeError(ErrKind::UnboundVar, "var", v->span, "unbound variable '" + v->name + "'");
        d = {"var", v->name + " : " + type_str(*t), {}};
        return *t;
      }
      case ValTerm::PureApp: {
        auto it = sig.pure_ops.find(v->name);
        if (it == sig.pure_ops.end())
          throw TypeError(ErrKind::UnboundVar, "pure", v->span, "unknown pure op '" + v->name + "'");
        d = {"pure", v->name + "(..) : " + type_str(it->second.result), {value(ctx, v->a, it->second.arg)}};
        return it->second.result;
      }
      case ValTerm::Pair: {
        Derivation da, db;
        TypePtr a = infer(ctx, v->a, da);
        TypePtr b = infer(ctx, v->b, db);
        TypePtr t = t_prod(a, b);
        d = {"pair", "<..> : " + type_str(t), {da, db}};
        return t;
      }
      case ValTerm::Inl:
      case ValTerm::Inr:
        if (!v->ann)
          throw TypeError(ErrKind::AnnotationMissing, v->kind == ValTerm::Inl ? "inl" : "inr", v->span,
                          "injection needs its sum type from context or an ascription");
        d = value(ctx, v, v->ann);
        return v->ann;
      case ValTerm::Lambda: {
        if (!sig.higher_order)
          throw TypeError(ErrKind::SortMismatch, "lambda", v->span, "function values need higher_order");
        const TypePtr& t = v->ann;
        d = {"lambda", "fun : " + type_str(t), {comp(extend(ctx, v->name, t->a), v->body, t->b, t->c)}};
        return t;
      }
    }
    throw std::logic_error("unknown value kind");
  }

  Derivation value(const Context& ctx, const VPtr& v, const TypePtr& a) {
    switch (v->kind) {
      case ValTerm::Inl:
      case ValTerm::Inr: {
        const char* rule = v->kind == ValTerm::Inl ? "inl" : "inr";
        if (v->ann && !type_eq(v->ann, a))
          throw TypeError(ErrKind::SortMismatch, rule, v->span, "ascription disagrees", a, nullptr, v->ann);
        if (a->kind != Type::Sum)
          throw TypeError(ErrKind::SortMismatch, rule, v->span, "injection into a non-sum type", a);
        Derivation sub = value(ctx, v->a, v->kind == ValTerm::Inl ? a->a : a->b);
        return {rule, std::string(rule) + " : " + type_str(a), {sub}};
      }
      case ValTerm::Pair: {
        if (a->kind != Type::Prod) throw TypeError(ErrKind::SortMismatch, "pair", v->span, "pair at a non-product", a);
        return {"pair", "<..> : " + type_str(a), {value(ctx, v->a, a->a), value(ctx, v->b, a->b)}};
      }
      default: {
        Derivation d;
        TypePtr t = infer(ctx, v, d);
        if (!type_eq(t, a))
          throw TypeError(ErrKind::SortMismatch, d.rule, v->span, "value has the wrong type", a, nullptr, t);
        return d;
      }
    }
  }

  // ---- computations ----

  std::pair<TypePtr, TypePtr> synth(const Context& ctx, const CPtr& p, const std::string& rule) {
    if (p->ann_b) return {p->ann_b, p->ann_c};
    switch (p->kind) {
      case CompTerm::EffApp: {
        auto it = sig.effect_ops.find(p->op);
        if (it != sig.effect_ops.end()) return {it->second.result, it->second.guard};
        break;
      }
      case CompTerm::App: {
        Derivation d;
        TypePtr f = infer(ctx, p->v, d);
        if (f->kind == Type::Arrow) return {f->b, f->c};
        break;
      }
      case CompTerm::Return: {
        Derivation d;
        try {
          return {infer(ctx, p->v, d), t_zero()};
        } catch (const TypeError& e) {
          if (e.kind != ErrKind::AnnotationMissing) throw;
        }
        break;
      }
      default: break;
    }
    throw TypeError(ErrKind::AnnotationMissing, rule, p->span,
                    std::string("cannot determine the type of this ") + comp_keyword(p->kind) + "; ascribe it");
  }

  static TypeError mismatch(const std::string& rule, const CPtr& p, const TypePtr& b, const TypePtr& c,
                            const TypePtr& ab, const TypePtr& ac) {
    bool guard_only = type_eq(b, ab) && !type_eq(c, ac);
    return TypeError(guard_only ? ErrKind::GuardViolation : ErrKind::SortMismatch, rule, p->span,
                     guard_only ? "guard component does not match" : "computation type does not match", b, c, ab,
                     ac);
  }

  bool checks(const Context& ctx, const CPtr& p, const TypePtr& b, const TypePtr& c) {
    try {
      comp(ctx, p, b, c);
      return true;
    } catch (const TypeError&) {
      return false;
    }
  }

  Derivation comp(const Context& ctx, const CPtr& p, const TypePtr& b, const TypePtr& c) {
    if (p->ann_b && !(type_eq(p->ann_b, b) && type_eq(p->ann_c, c))) throw mismatch("ascription", p, b, c, p->ann_b, p->ann_c);
    std::string concl = std::string(comp_keyword(p->kind)) + " : " + judgement_type(b, c);
    switch (p->kind) {
      case CompTerm::Return: {
        try {
          return {"return", concl, {value(ctx, p->v, b)}};
        } catch (const TypeError& e) {
          if (e.kind == ErrKind::UnboundVar) throw;
          Derivation d;
          bool unguarded = false;
          try {
            value(ctx, p->v, c);
            unguarded = true;
          } catch (const TypeError&) {
          }
          if (unguarded)
            throw TypeError(ErrKind::GuardViolation, "return-unguarded", p->span,
                            "return exits into the guard position without a guarding effect", b, c);
          throw;
        }
      }
      case CompTerm::Init: return {"init", concl, {value(ctx, p->v, t_zero())}};
      case CompTerm::EffApp: {
        auto it = sig.effect_ops.find(p->op);
        if (it == sig.effect_ops.end())
          throw TypeError(ErrKind::UnboundVar, "effect", p->span, "unknown effect op '" + p->op + "'");
        const EffectSig& op = it->second;
        Derivation arg = value(ctx, p->v, op.arg);
        if (!type_eq(op.result, b) || !type_eq(op.guard, c)) throw mismatch("effect", p, b, c, op.result, op.guard);
        return {"effect", p->op + " : " + judgement_type(b, c), {arg}};
      }
      case CompTerm::DoCase: {
        auto [a, g] = synth(ctx, p->p, "docase-scrutinee");
        Derivation d{"docase", concl, {}};
        d.premises.push_back(comp(ctx, p->p, a, g));
        d.premises.push_back(comp(extend(ctx, p->x, a), p->q, b, c));
        Context rctx = extend(ctx, p->y, g);
        try {
          d.premises.push_back(comp(rctx, p->r, t_sum(b, c), t_zero()));
        } catch (const TypeError& e) {
          if (e.kind != ErrKind::GuardViolation && checks(rctx, p->r, b, c))
            throw TypeError(ErrKind::GuardViolation, "docase-right-branch", p->r->span,
                            "right branch must resolve at (C + D) |> 0", t_sum(b, c), t_zero(), b, c);
          throw;
        }
        return d;
      }
      case CompTerm::Case: {
        Derivation dv;
        TypePtr t = infer(ctx, p->v, dv);
        if (t->kind != Type::Sum)
          throw TypeError(ErrKind::ArityMismatch, "case", p->span, "case on a non-sum value", nullptr, nullptr, t);
        return {"case",
                concl,
                {dv, comp(extend(ctx, p->x, t->a), p->q, b, c), comp(extend(ctx, p->y, t->b), p->r, b, c)}};
      }
      case CompTerm::PCase: {
        Derivation dv;
        TypePtr t = infer(ctx, p->v, dv);
        if (t->kind != Type::Prod)
          throw TypeError(ErrKind::ArityMismatch, "pcase", p->span, "pcase on a non-product value", nullptr, nullptr,
                          t);
        return {"pcase", concl, {dv, comp(extend(extend(ctx, p->x, t->a), p->y, t->b), p->q, b, c)}};
      }
      case CompTerm::App: {
        Derivation df;
        TypePtr f = infer(ctx, p->v, df);
        if (f->kind != Type::Arrow)
          throw TypeError(ErrKind::ArityMismatch, "app", p->span, "application of a non-function", nullptr, nullptr,
                          f);
        Derivation da = value(ctx, p->w, f->a);
        if (!type_eq(f->b, b) || !type_eq(f->c, c)) throw mismatch("app", p, b, c, f->b, f->c);
        return {"app", concl, {df, da}};
      }
      case CompTerm::Iter: {
        TypePtr a = p->bind_ty ? p->bind_ty : synth(ctx, p->p, "iter-init").first;
        Derivation d{"iter", concl, {}};
        d.premises.push_back(comp(ctx, p->p, a, t_zero()));
        Context bctx = extend(ctx, p->x, a);
        try {
          d.premises.push_back(comp(bctx, p->q, b, t_sum(c, a)));
        } catch (const TypeError& e) {
          if (e.kind != ErrKind::GuardViolation && checks(bctx, p->q, t_sum(b, a), c))
            throw TypeError(ErrKind::GuardViolation, "iter-body", p->q->span,
                            "recursive exit is not guarded", b, t_sum(c, a), t_sum(b, a), c);
          throw;
        }
        return d;
      }
    }
    throw std::logic_error("unknown computation kind");
  }
};

}  // namespace

TypePtr infer_value(const Signature& sig, const Context& ctx, const VPtr& v, Derivation* d) {
  Derivation tmp;
  TypePtr t = Checker{sig}.infer(ctx, v, tmp);
  if (d) *d = std::move(tmp);
  return t;
}

Derivation check_value(const Signature& sig, const Context& ctx, const VPtr& v, const TypePtr& a) {
  return Checker{sig}.value(ctx, v, a);
}

Judgement check_comp(const Signature& sig, const Context& ctx, const CPtr& p, const TypePtr& b, const TypePtr& c) {
  Derivation d = Checker{sig}.comp(ctx, p, b, c);
  return {ctx, p, b, c, std::move(d)};
}

CPtr weaken(const Judgement& j) {
  if (!j.c || j.c->kind != Type::Sum)
    throw TypeError(ErrKind::ArityMismatch, "weaken", j.term->span, "guard type is not a sum", nullptr, nullptr, j.b,
                    j.c);
  CPtr scrutinee = c_annotate(j.term, j.b, j.c);
  CPtr right = c_case(v_var("z"), "x", c_return(v_inl(v_inr(v_var("x")))), "y", c_return(v_inr(v_var("y"))));
  return c_docase(scrutinee, "x", c_return(v_inl(v_var("x"))), "z", right);
}

std::vector<DefReport> check_program(const Program& prog) {
  std::vector<DefReport> out;
  for (const auto& d : prog.defs) {
    DefReport r{d.name, true, {}, std::nullopt};
    try {
      r.judgement = check_comp(prog.sig, d.params, d.body, d.b, d.c);
    } catch (const TypeError& e) {
      r.ok = false;
      r.errors.push_back(e);
    }
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace gfgcbv
