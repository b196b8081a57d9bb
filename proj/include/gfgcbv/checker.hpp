#pragma once

#include <string>
#include <vector>

#include "gfgcbv/syntax.hpp"

namespace gfgcbv {

enum class ErrKind { UnboundVar, SortMismatch, GuardViolation, ArityMismatch, AnnotationMissing };
std::string err_kind_str(ErrKind k);

struct TypeError : std::runtime_error {
  ErrKind kind;
  std::string rule;
  Span span;
  TypePtr exp_b, exp_c;  // expected (exp_c null for value judgements)
  TypePtr act_b, act_c;  // actual, when known
  std::string detail;
  TypeError(ErrKind k, std::string rule, Span s, std::string detail, TypePtr eb = nullptr, TypePtr ec = nullptr,
            TypePtr ab = nullptr, TypePtr ac = nullptr);
  /// "line:col: Kind [rule]: detail; expected B |> C, actual B' |> C'"
  std::string render() const;
};

struct Derivation {
  std::string rule;
  std::string conclusion;  // "term : B |> C" or "value : A"
  std::vector<Derivation> premises;
  size_t size() const;
};

struct Judgement {
  Context ctx;
  CPtr term;
  TypePtr b, c;
  Derivation derivation;
};

TypePtr infer_value(const Signature& sig, const Context& ctx, const VPtr& v, Derivation* d = nullptr);
Derivation check_value(const Signature& sig, const Context& ctx, const VPtr& v, const TypePtr& a);
Judgement check_comp(const Signature& sig, const Context& ctx, const CPtr& p, const TypePtr& b, const TypePtr& c);

/// p : A |> (B + C)  ~>  docase-term : (A + B) |> C
CPtr weaken(const Judgement& j);

struct DefReport {
  std::string name;
  bool ok;
  std::vector<TypeError> errors;  // at most one per definition
  std::optional<Judgement> judgement;
};
std::vector<DefReport> check_program(const Program& prog);

}  // namespace gfgcbv
