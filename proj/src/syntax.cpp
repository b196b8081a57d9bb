#include <algorithm>

#include "gfgcbv/syntax.hpp"

namespace gfgcbv {

TypePtr t_sort(std::string name) { return std::make_shared<const Type>(Type{Type::Sort, std::move(name), {}, {}, {}}); }

TypePtr t_zero() {
  static const TypePtr z = std::make_shared<const Type>(Type{Type::Zero, "", {}, {}, {}});
  return z;
}

TypePtr t_unit() {
  static const TypePtr u = t_sort("1");
  return u;
}

TypePtr t_sum(TypePtr a, TypePtr b) {
  return std::make_shared<const Type>(Type{Type::Sum, "", std::move(a), std::move(b), {}});
}

TypePtr t_prod(TypePtr a, TypePtr b) {
  return std::make_shared<const Type>(Type{Type::Prod, "", std::move(a), std::move(b), {}});
}

TypePtr t_arrow(TypePtr dom, TypePtr cod, TypePtr guard) {
  return std::make_shared<const Type>(Type{Type::Arrow, "", std::move(dom), std::move(cod), std::move(guard)});
}

TypePtr t_nat(int n) {
  TypePtr t = t_zero();
  for (int k = 0; k < n; ++k) t = t_sum(t, t_unit());
  return t;
}

bool type_eq(const TypePtr& x, const TypePtr& y) {
  if (x == y) return true;
  if (!x || !y || x->kind != y->kind) return false;
  switch (x->kind) {
    case Type::Sort: return x->name == y->name;
    case Type::Zero: return true;
    case Type::Sum:
    case Type::Prod: return type_eq(x->a, y->a) && type_eq(x->b, y->b);
    case Type::Arrow: return type_eq(x->a, y->a) && type_eq(x->b, y->b) && type_eq(x->c, y->c);
  }
  return false;
}

namespace {

std::string type_child(const TypePtr& t) {
  if (t->kind == Type::Sum || t->kind == Type::Prod) return "(" + type_str(t) + ")";
  return type_str(t);
}

}  // namespace

std::string type_str(const TypePtr& t) {
  if (!t) return "?";
  switch (t->kind) {
    case Type::Sort: return t->name;
    case Type::Zero: return "0";
    case Type::Sum: return type_child(t->a) + " + " + type_child(t->b);
    case Type::Prod: return type_child(t->a) + " * " + type_child(t->b);
    case Type::Arrow: return "(" + type_str(t->a) + " -> " + type_str(t->b) + " |> " + type_str(t->c) + ")";
  }
  return "?";
}

// ---- term constructors ----

VPtr v_var(std::string x, Span s) {
  return std::make_shared<const ValTerm>(ValTerm{ValTerm::Var, std::move(x), {}, {}, {}, {}, s});
}

VPtr v_pure(std::string op, VPtr a, Span s) {
  return std::make_shared<const ValTerm>(ValTerm{ValTerm::PureApp, std::move(op), std::move(a), {}, {}, {}, s});
}

VPtr v_inl(VPtr a, TypePtr ann, Span s) {
  return std::make_shared<const ValTerm>(ValTerm{ValTerm::Inl, "", std::move(a), {}, std::move(ann), {}, s});
}

VPtr v_inr(VPtr a, TypePtr ann, Span s) {
  return std::make_shared<const ValTerm>(ValTerm{ValTerm::Inr, "", std::move(a), {}, std::move(ann), {}, s});
}

VPtr v_pair(VPtr a, VPtr b, Span s) {
  return std::make_shared<const ValTerm>(ValTerm{ValTerm::Pair, "", std::move(a), std::move(b), {}, {}, s});
}

VPtr v_lambda(std::string x, TypePtr arrow, CPtr body, Span s) {
  return std::make_shared<const ValTerm>(
      ValTerm{ValTerm::Lambda, std::move(x), {}, {}, std::move(arrow), std::move(body), s});
}

VPtr v_inj(int i, int n, VPtr a, Span s) {
  if (i < 0 || i >= n) throw std::invalid_argument("injection index out of range");
  VPtr v = v_inr(std::move(a), nullptr, s);
  for (int k = 0; k < n - 1 - i; ++k) v = v_inl(v, nullptr, s);
  return v;
}

namespace {

CPtr mk(CompTerm t) { return std::make_shared<const CompTerm>(std::move(t)); }

}  // namespace

CPtr c_eff(std::string op, VPtr a, Span s) {
  CompTerm t{};
  t.kind = CompTerm::EffApp;
  t.op = std::move(op);
  t.v = std::move(a);
  t.span = s;
  return mk(std::move(t));
}

CPtr c_return(VPtr a, Span s) {
  CompTerm t{};
  t.kind = CompTerm::Return;
  t.v = std::move(a);
  t.span = s;
  return mk(std::move(t));
}

CPtr c_init(VPtr a, Span s) {
  CompTerm t{};
  t.kind = CompTerm::Init;
  t.v = std::move(a);
  t.span = s;
  return mk(std::move(t));
}

CPtr c_docase(CPtr p, std::string x, CPtr q, std::string y, CPtr r, Span s) {
  CompTerm t{};
  t.kind = CompTerm::DoCase;
  t.p = std::move(p);
  t.x = std::move(x);
  t.q = std::move(q);
  t.y = std::move(y);
  t.r = std::move(r);
  t.span = s;
  return mk(std::move(t));
}

CPtr c_case(VPtr v, std::string x, CPtr q, std::string y, CPtr r, Span s) {
  CompTerm t{};
  t.kind = CompTerm::Case;
  t.v = std::move(v);
  t.x = std::move(x);
  t.q = std::move(q);
  t.y = std::move(y);
  t.r = std::move(r);
  t.span = s;
  return mk(std::move(t));
}

CPtr c_pcase(VPtr v, std::string x, std::string y, CPtr q, Span s) {
  CompTerm t{};
  t.kind = CompTerm::PCase;
  t.v = std::move(v);
  t.x = std::move(x);
  t.y = std::move(y);
  t.q = std::move(q);
  t.span = s;
  return mk(std::move(t));
}

CPtr c_app(VPtr f, VPtr a, Span s) {
  CompTerm t{};
  t.kind = CompTerm::App;
  t.v = std::move(f);
  t.w = std::move(a);
  t.span = s;
  return mk(std::move(t));
}

CPtr c_iter(std::string x, TypePtr bind_ty, CPtr p, CPtr q, Span s) {
  CompTerm t{};
  t.kind = CompTerm::Iter;
  t.x = std::move(x);
  t.bind_ty = std::move(bind_ty);
  t.p = std::move(p);
  t.q = std::move(q);
  t.span = s;
  return mk(std::move(t));
}

CPtr c_annotate(const CPtr& p, TypePtr b, TypePtr c) {
  CompTerm t = *p;
  t.ann_b = std::move(b);
  t.ann_c = std::move(c);
  return mk(std::move(t));
}

// ---- equality ----

namespace {

bool opt_type_eq(const TypePtr& x, const TypePtr& y) {
  if (!x || !y) return !x && !y;
  return type_eq(x, y);
}

}  // namespace

bool val_eq(const VPtr& x, const VPtr& y) {
  if (x == y) return true;
  if (!x || !y || x->kind != y->kind || x->name != y->name) return false;
  return val_eq(x->a, y->a) && val_eq(x->b, y->b) && opt_type_eq(x->ann, y->ann) && comp_eq(x->body, y->body);
}

bool comp_eq(const CPtr& x, const CPtr& y) {
  if (x == y) return true;
  if (!x || !y || x->kind != y->kind) return false;
  return x->op == y->op && x->x == y->x && x->y == y->y && val_eq(x->v, y->v) && val_eq(x->w, y->w) &&
         comp_eq(x->p, y->p) && comp_eq(x->q, y->q) && comp_eq(x->r, y->r) && opt_type_eq(x->ann_b, y->ann_b) &&
         opt_type_eq(x->ann_c, y->ann_c) && opt_type_eq(x->bind_ty, y->bind_ty);
}

bool Signature::has_sort(const std::string& s) const {
  return s == "1" || std::find(sorts.begin(), sorts.end(), s) != sorts.end();
}

const Def* Program::find(const std::string& name) const {
  for (const auto& d : defs)
    if (d.name == name) return &d;
  return nullptr;
}

// ---- printing ----

namespace {

bool value_atomic(const VPtr& v) {
  return v->kind == ValTerm::Var || v->kind == ValTerm::PureApp || v->kind == ValTerm::Pair;
}

std::string value_child(const VPtr& v) {
  std::string s = print_value(v);
  bool wrapped = (v->kind == ValTerm::Inl || v->kind == ValTerm::Inr) && v->ann;
  return value_atomic(v) || wrapped ? s : "(" + s + ")";
}

bool comp_atomic(const CPtr& p) {
  return (p->kind == CompTerm::EffApp || p->kind == CompTerm::App) && !p->ann_b;
}

std::string comp_child(const CPtr& p) {
  std::string s = print_comp(p);
  bool wrapped = p->ann_b && p->kind != CompTerm::Return && p->kind != CompTerm::Init;
  return comp_atomic(p) || wrapped ? s : "(" + s + ")";
}

std::string ascription(const CPtr& p) { return " : " + type_str(p->ann_b) + " |> " + type_str(p->ann_c); }

std::string comp_bare(const CPtr& p) {
  switch (p->kind) {
    case CompTerm::EffApp: return p->op + "(" + print_value(p->v) + ")";
    case CompTerm::Return: return "return " + value_child(p->v);
    case CompTerm::Init: return "init " + value_child(p->v);
    case CompTerm::DoCase:
      return "docase " + comp_child(p->p) + " { inl " + p->x + " -> " + comp_child(p->q) + " | inr " + p->y + " -> " +
             comp_child(p->r) + " }";
    case CompTerm::Case:
      return "case " + value_child(p->v) + " { inl " + p->x + " -> " + comp_child(p->q) + " | inr " + p->y + " -> " +
             comp_child(p->r) + " }";
    case CompTerm::PCase:
      return "pcase " + value_child(p->v) + " { <" + p->x + ", " + p->y + "> -> " + comp_child(p->q) + " }";
    case CompTerm::App: return "app " + value_child(p->v) + " " + value_child(p->w);
    case CompTerm::Iter:
      return "iter " + p->x + (p->bind_ty ? " : " + type_str(p->bind_ty) : std::string()) + " <- " +
             comp_child(p->p) + " in " + comp_child(p->q);
  }
  return "?";
}

}  // namespace

std::string print_value(const VPtr& v) {
  switch (v->kind) {
    case ValTerm::Var: return v->name;
    case ValTerm::PureApp: return v->name + "(" + print_value(v->a) + ")";
    case ValTerm::Inl:
    case ValTerm::Inr: {
      std::string s = (v->kind == ValTerm::Inl ? "inl " : "inr ") + value_child(v->a);
      return v->ann ? "(" + s + " : " + type_str(v->ann) + ")" : s;
    }
    case ValTerm::Pair: return "<" + print_value(v->a) + ", " + print_value(v->b) + ">";
    case ValTerm::Lambda:
      return "fun (" + v->name + " : " + type_str(v->ann->a) + ") : " + type_str(v->ann->b) + " |> " +
             type_str(v->ann->c) + " => " + comp_child(v->body);
  }
  return "?";
}

std::string print_comp(const CPtr& p) {
  if (!p->ann_b) return comp_bare(p);
  if (p->kind == CompTerm::Return || p->kind == CompTerm::Init) return comp_bare(p) + ascription(p);
  return "(" + comp_bare(p) + ascription(p) + ")";
}

std::string print_signature(const Signature& sig) {
  std::string s = "signature {\n";
  if (!sig.sorts.empty()) {
    s += "  sorts ";
    for (size_t i = 0; i < sig.sorts.size(); ++i) s += (i ? ", " : "") + sig.sorts[i];
    s += ";\n";
  }
  for (const auto& [name, op] : sig.pure_ops)
    s += "  pure " + name + " : " + type_str(op.arg) + " -> " + type_str(op.result) + ";\n";
  for (const auto& [name, op] : sig.effect_ops)
    s += "  effect " + name + " : " + type_str(op.arg) + " -> " + type_str(op.result) + " |> " +
         type_str(op.guard) + ";\n";
  if (sig.higher_order) s += "  higher_order;\n";
  return s + "}\n";
}

std::string print_program(const Program& prog) {
  std::string s = print_signature(prog.sig);
  for (const auto& d : prog.defs) {
    s += "\ndef " + d.name + " (";
    for (size_t i = 0; i < d.params.size(); ++i)
      s += (i ? ", " : "") + d.params[i].first + " : " + type_str(d.params[i].second);
    s += ") : " + type_str(d.b) + " |> " + type_str(d.c) + " =\n  " + print_comp(d.body) + "\n";
  }
  return s;
}

}  // namespace gfgcbv
