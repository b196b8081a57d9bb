#pragma once

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gfgcbv/checker.hpp"
#include "gfgcbv/gpm.hpp"
#include "gfgcbv/syntax.hpp"

namespace gfgcbv {

struct BpaNode;
using BpaTerm = std::shared_ptr<const BpaNode>;

struct BpaNode {
  enum Kind : unsigned char { Act, Name, Choice, Seq } kind;
  std::string name;  // Act / Name
  BpaTerm a, b;
};

BpaTerm bpa_act(std::string a);
BpaTerm bpa_name(std::string n);
BpaTerm bpa_choice(BpaTerm p, BpaTerm q);
BpaTerm bpa_seq(BpaTerm p, BpaTerm q);
std::string bpa_str(const BpaTerm& t);

struct BpaSystem {
  std::vector<std::string> actions;
  std::vector<std::pair<std::string, BpaTerm>> equations;  // declaration order
  std::vector<std::string> free_names;
  /// Defined names first, then free names.
  std::vector<std::string> names() const;
  int index(const std::string& name) const;  // into names(), or -1
  const BpaTerm* rhs(const std::string& name) const;
  bool is_action(const std::string& s) const;
};

struct BpaParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// actions in0, in1;  free Q;  proc B0 = in0 . B1 + in1 . B0;
/// `.` is sequencing and binds tighter than `+`; `#` starts a comment.
BpaSystem parse_bpa(const std::string& text);

/// Every path to the occurrence passes an action first.
bool must_act(const BpaTerm& t);

struct UnguardedOccurrence {
  std::string equation;
  std::string name;
};
struct GuardednessVerdict {
  bool guarded = true;
  std::vector<std::string> unguarded_equations;
  std::vector<UnguardedOccurrence> witnesses;
};
GuardednessVerdict syntactic_guardedness(const BpaSystem& sys);

/// Σc for the system: a : 1 -> 0 |> 1 per action, toss : 1 -> 1 + 1 |> 0.
Signature bpa_signature(const BpaSystem& sys);

/// x : 1 ⊢ T(P) : V |> 1 + nat(k), with V = 0 when every exit of P follows an
/// action and V = 1 otherwise; k = names.size().
CPtr translate(const BpaTerm& t, const std::vector<std::string>& names);
/// x : nat(n) ⊢ p̂ : 1 |> 1 + nat(k) from equations already at 1 |> 1 + nat(k).
CPtr assemble(const std::vector<CPtr>& terms);

struct BpaProgram {
  Signature sig;
  int n = 0;  // defined names
  int m = 0;  // free names
  std::vector<CPtr> equations;  // coerced to 1 |> 1 + nat(n + m)
  CPtr assembled;               // x : nat(n) ⊢ 1 |> 1 + nat(n + m)
  /// x : nat(n) ⊢ q : 1 |> (1 + nat(m)) + nat(n), the iteration body.
  CPtr body;
  TypePtr exit_type;  // 1 + nat(m)
  /// x : 1 ⊢ iter x : nat(n) <- return (inj_i x) in body : 1 |> 1 + nat(m)
  CPtr solve_term(int i) const;
};

BpaProgram build_bpa_program(const BpaSystem& sys);

struct SolveEntry {
  std::string name;
  Val value;  // 1 ± (1 + nat(m)) with residual exits cut
  Val raw;    // before cutting
  bool exhausted = false;
  int steps = 0;
};

struct Solution {
  bool ok = false;
  GuardednessVerdict guardedness;
  std::optional<TypeError> type_error;
  std::vector<SolveEntry> entries;
  const SolveEntry* find(const std::string& name) const;
};

/// Refuses unguarded systems, typechecks every solve term and iterates with
/// the given fuel (body applications).
Solution solve(const BpaSystem& sys, const Gpm& inst, int fuel);

enum class TraceAnswer { Present, Absent, BoundTooSmall };
std::string trace_answer_str(TraceAnswer a);

/// Is `word` a root path (resumption) or trace prefix (trace) of the entry?
TraceAnswer has_trace(const Gpm& inst, const SolveEntry& e, const std::vector<std::string>& word);

Json solution_json(const Gpm& inst, const Solution& s);

}  // namespace gfgcbv
