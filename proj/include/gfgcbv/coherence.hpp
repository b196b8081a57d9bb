#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "gfgcbv/gpm.hpp"

namespace gfgcbv {

// ---- object expressions over (⊗, I) and ± ----

struct ObjNode;
using ObjExpr = std::shared_ptr<const ObjNode>;

struct ObjNode {
  enum Kind : unsigned char { Letter, UnitI, Tensor, Guard } kind;
  std::string name;  // Letter
  ObjExpr a, b;
};

ObjExpr o_letter(std::string name);
ObjExpr o_unit();
ObjExpr o_tensor(ObjExpr a, ObjExpr b);
ObjExpr o_guard(ObjExpr a, ObjExpr b);

bool obj_eq(const ObjExpr& x, const ObjExpr& y);
/// Non-atomic children are parenthesized: "A ± (I ⊗ (B ⊗ I))".
std::string obj_str(const ObjExpr& e);
/// Letters in left-to-right order, with repetitions.
std::vector<std::string> obj_letters(const ObjExpr& e);
bool letters_unique(const ObjExpr& e);
int obj_depth(const ObjExpr& e);
bool has_guard(const ObjExpr& e);

struct ExprParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Letters are identifiers other than `I`. `⊗` or `(x)`, `±` or `(+)`;
/// ± binds tighter than ⊗ and both associate to the left.
ObjExpr parse_obj(const std::string& text);

ObjExpr nf1(const ObjExpr& e);
ObjExpr nf2(const ObjExpr& e);
ObjExpr nf(const ObjExpr& e);
/// E ± E' with neither side containing ±.
bool is_normal(const ObjExpr& e);

// ---- morphism expressions ----

struct MorNode;
using MorExpr = std::shared_ptr<const MorNode>;

struct MorNode {
  enum Kind : unsigned char {
    Id, Eta, Xi, Upsilon, Zeta, Chi,
    Assoc,      // α : A ⊗ (B ⊗ C) → (A ⊗ B) ⊗ C
    AssocInv,
    Unitor,     // ρ : A ⊗ I → A
    UnitorInv,
    Braid,      // γ : A ⊗ B → B ⊗ A
    Compose,    // a ∘ b
    TensorPair, // a ⊗ b
    GuardPair   // a ± b
  } kind;
  std::vector<ObjExpr> objs;  // primitive components
  MorExpr a, b;
};

MorExpr m_id(ObjExpr a);
MorExpr m_eta(ObjExpr a);
MorExpr m_xi(ObjExpr a, ObjExpr b, ObjExpr c);
MorExpr m_upsilon(ObjExpr a, ObjExpr b, ObjExpr c);
MorExpr m_zeta(ObjExpr a, ObjExpr b, ObjExpr c);
MorExpr m_chi(ObjExpr a, ObjExpr b, ObjExpr c, ObjExpr d);
MorExpr m_assoc(ObjExpr a, ObjExpr b, ObjExpr c);
MorExpr m_assoc_inv(ObjExpr a, ObjExpr b, ObjExpr c);
MorExpr m_rho(ObjExpr a);
MorExpr m_rho_inv(ObjExpr a);
MorExpr m_gamma(ObjExpr a, ObjExpr b);
MorExpr m_comp(MorExpr f, MorExpr g);  // f ∘ g
/// Right-to-left chain: m_chain({f3, f2, f1}) = f3 ∘ f2 ∘ f1.
MorExpr m_chain(std::vector<MorExpr> fs);
MorExpr m_tensor(MorExpr f, MorExpr g);
MorExpr m_guard(MorExpr f, MorExpr g);

/// Prefix syntax, e.g. comp(xi(A, B, C), guardpair(eta(A), id(C))).
std::string mor_str(const MorExpr& m);
MorExpr parse_mor(const std::string& text);

struct MorTypeError : std::runtime_error {
  std::string where;  // offending sub-expression
  MorTypeError(const std::string& msg, std::string where_)
      : std::runtime_error(msg + " in " + where_), where(std::move(where_)) {}
};

std::pair<ObjExpr, ObjExpr> infer_mor_type(const MorExpr& m);
/// No η, ξ, υ, ζ, χ.
bool is_iso_expr(const MorExpr& m);
/// Inverse of an isomorphism expression.
MorExpr inverse(const MorExpr& m);
/// An isomorphism expression X → Y between ±-free expressions over the same
/// letters, or between X₁ ± X₂ and Y₁ ± Y₂ componentwise.
MorExpr canon_iso(const ObjExpr& x, const ObjExpr& y);

/// nm(E) : E → nf(E)
MorExpr nm(const ObjExpr& e);

/// The expansion (ρ ± id) ∘ υ_{A,I,B} ∘ (id ± γ_{B,I}) ∘ (id ± ρ⁻¹) of id_{A±B}.
MorExpr identity_expansion(const ObjExpr& a, const ObjExpr& b);

// ---- finite models ----

using Assignment = std::map<std::string, Obj>;

/// ⊗ ↦ +, I ↦ 0, ± ↦ the instance's carrier.
Obj eval_obj(const ObjExpr& e, const Assignment& as);
Fn eval_mor(const MorExpr& m, const Gpm& inst);

struct CoherenceConfig {
  std::vector<int> carrier_sizes{1, 2};  // uniform letter carrier sizes tried
  EnumConfig enumc{{"a"}, 1, 2, 600, 10, {}};
  bool check_shape = true;
};

struct CoherenceVerdict {
  bool equal = true;
  std::string error;  // shape or typing failure
  std::size_t points = 0;
  Json witness;       // on mismatch: assignment, input, both outputs
};

/// Pointwise comparison of f and g in the finite models.
CoherenceVerdict coherence_check(const MorExpr& f, const MorExpr& g, const Gpm& inst,
                                 const CoherenceConfig& cfg = {});

struct GenConfig {
  int max_depth = 6;
  int max_letters = 4;
  int max_steps = 4;
};

/// Two morphism expressions E₁ → E₂ ± E₂' (normal, letters at most once)
/// built along different random routes.
std::pair<MorExpr, MorExpr> gen_mor(std::uint64_t seed, const GenConfig& cfg = {});
/// Random object expression for normalizer tests.
ObjExpr gen_obj(std::uint64_t seed, int max_depth = 6, int max_letters = 4);
/// Counts of η, ξ, υ, ζ, χ occurrences.
std::map<std::string, int> primitive_counts(const MorExpr& m);

}  // namespace gfgcbv
