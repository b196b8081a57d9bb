#pragma once

#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace gfgcbv {

struct Span {
  int line = 0;
  int col = 0;
  std::string str() const { return std::to_string(line) + ":" + std::to_string(col); }
};

// ---- types ----

struct Type;
using TypePtr = std::shared_ptr<const Type>;

struct Type {
  enum Kind : unsigned char { Sort, Zero, Sum, Prod, Arrow } kind;
  std::string name;  // Sort
  TypePtr a, b, c;   // Sum/Prod: a, b.  Arrow: a -> b |> c
};

TypePtr t_sort(std::string name);
TypePtr t_zero();
TypePtr t_unit();  // the sort 1
TypePtr t_sum(TypePtr a, TypePtr b);
TypePtr t_prod(TypePtr a, TypePtr b);
TypePtr t_arrow(TypePtr dom, TypePtr cod, TypePtr guard);
/// nat(0) = 0, nat(k+1) = nat(k) + 1
TypePtr t_nat(int n);
bool type_eq(const TypePtr& x, const TypePtr& y);
std::string type_str(const TypePtr& t);

// ---- terms ----

struct ValTerm;
struct CompTerm;
using VPtr = std::shared_ptr<const ValTerm>;
using CPtr = std::shared_ptr<const CompTerm>;

struct ValTerm {
  enum Kind : unsigned char { Var, PureApp, Inl, Inr, Pair, Lambda } kind;
  std::string name;  // Var name, PureApp op, Lambda binder
  VPtr a, b;
  TypePtr ann;  // Inl/Inr: optional sum annotation.  Lambda: the decorated arrow.
  CPtr body;    // Lambda
  Span span;
};

struct CompTerm {
  enum Kind : unsigned char { EffApp, Return, DoCase, Init, Case, PCase, App, Iter } kind = Return;
  std::string op;       // EffApp
  std::string x, y;     // branch / pcase / iter binders
  VPtr v, w;            // scrutinee value, App argument
  CPtr p, q, r;         // DoCase: p {x -> q | y -> r}.  Case: {x -> q | y -> r}.  PCase: q.  Iter: x <- p in q
  TypePtr ann_b, ann_c; // optional ascription B |> C of this node
  TypePtr bind_ty;      // Iter binder type, optional
  Span span;
};

VPtr v_var(std::string x, Span s = {});
VPtr v_pure(std::string op, VPtr a, Span s = {});
VPtr v_inl(VPtr a, TypePtr ann = nullptr, Span s = {});
VPtr v_inr(VPtr a, TypePtr ann = nullptr, Span s = {});
VPtr v_pair(VPtr a, VPtr b, Span s = {});
VPtr v_lambda(std::string x, TypePtr arrow, CPtr body, Span s = {});
/// inj(i, n) v = inl^{n-1-i} (inr v), an injection into nat(n).
VPtr v_inj(int i, int n, VPtr a, Span s = {});

CPtr c_eff(std::string op, VPtr a, Span s = {});
CPtr c_return(VPtr a, Span s = {});
CPtr c_init(VPtr a, Span s = {});
CPtr c_docase(CPtr p, std::string x, CPtr q, std::string y, CPtr r, Span s = {});
CPtr c_case(VPtr v, std::string x, CPtr q, std::string y, CPtr r, Span s = {});
CPtr c_pcase(VPtr v, std::string x, std::string y, CPtr q, Span s = {});
CPtr c_app(VPtr f, VPtr a, Span s = {});
CPtr c_iter(std::string x, TypePtr bind_ty, CPtr p, CPtr q, Span s = {});
/// Copy of `p` ascribed with B |> C.
CPtr c_annotate(const CPtr& p, TypePtr b, TypePtr c);

bool val_eq(const VPtr& x, const VPtr& y);  // ignores spans
bool comp_eq(const CPtr& x, const CPtr& y);

// ---- programs ----

struct PureSig {
  TypePtr arg, result;
};
struct EffectSig {
  TypePtr arg, result, guard;
};

struct Signature {
  std::vector<std::string> sorts;  // declared order; "1" is implicit
  std::map<std::string, PureSig> pure_ops;
  std::map<std::string, EffectSig> effect_ops;
  bool higher_order = false;
  bool has_sort(const std::string& s) const;
};

using Context = std::vector<std::pair<std::string, TypePtr>>;

struct Def {
  std::string name;
  Context params;
  TypePtr b, c;
  CPtr body;
  Span span;
};

struct Program {
  Signature sig;
  std::vector<Def> defs;
  const Def* find(const std::string& name) const;
};

struct ParseError : std::runtime_error {
  Span span;
  ParseError(Span s, const std::string& msg) : std::runtime_error(s.str() + ": " + msg), span(s) {}
};

Program parse_program(const std::string& text);
/// Parse a standalone computation against an existing signature.
CPtr parse_comp(const std::string& text, const Signature& sig);
VPtr parse_value(const std::string& text, const Signature& sig);
TypePtr parse_type(const std::string& text, const Signature& sig);

std::string print_value(const VPtr& v);
std::string print_comp(const CPtr& p);
std::string print_signature(const Signature& sig);
std::string print_program(const Program& prog);

}  // namespace gfgcbv
