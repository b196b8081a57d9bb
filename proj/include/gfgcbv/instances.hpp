#pragma once

#include <memory>
#include <string>
#include <vector>

#include "gfgcbv/gpm.hpp"

namespace gfgcbv {

struct InstanceConfig {
  std::vector<std::string> alphabet{"a"};
  int depth = 4;       // resumption tree depth / state-trace write bound
  int state_bits = 1;
};

/// One of trace, hybrid, resumption, state_trace, vacuous.
std::unique_ptr<Gpm> make_instance(const std::string& name, const InstanceConfig& cfg);
/// Trace instance whose υ re-emits C-exits with a doubled word. Used to show
/// the law suite catches a broken instance.
std::unique_ptr<Gpm> make_mutant_upsilon(const InstanceConfig& cfg);
const std::vector<std::string>& instance_names();

/// Equality after truncating trees (or state traces) to `depth`.
bool bounded_equal(const Gpm& inst, const Val& a, const Val& b, int depth);

// ---- finite traces: Pfin(A*×(X+1) + A⁺×Y + A*) ----

using Word = std::vector<std::string>;

struct TraceEntry {
  enum Kind : unsigned char { Done, Term, Guard, Div } kind;
  Word word;
  Val payload;  // Done / Guard only
};

struct TraceData final : CompData {
  std::vector<TraceEntry> entries;  // sorted, duplicate-free
  int tag() const override { return 1; }
  int cmp_same(const CompData& o) const override;
};

class TraceGpm : public Gpm {
 public:
  explicit TraceGpm(std::vector<std::string> alphabet) : alphabet_(std::move(alphabet)) {}
  std::string name() const override { return "trace"; }
  Val eta(const Val& a) const override;
  Val map(const Fn& f, const Fn& g, const Val& v) const override;
  Val xi(const Val& v) const override;
  Val upsilon(const Val& v) const override;
  Val zeta(const Val& v) const override;
  Val wave_tau(const Val& x, const Val& v) const override;
  std::optional<Val> eps_inverse(const Val& v) const override;
  bool valid(const Val& v, const Obj& y, const Obj& z) const override;
  std::vector<Val> enumerate(const Obj& y, const Obj& z, const EnumConfig& cfg) const override;
  bool has_guard(const Val& v) const override;
  Val cut(const Val& v, const std::function<std::optional<Val>(const Val&)>& keep) const override;
  std::optional<Val> effect(const std::string& op, const Val& arg) const override;
  bool knows_effect(const std::string& op) const override;
  Json to_json(const Val& v) const override;

  static Val make(std::vector<TraceEntry> es);
  static const std::vector<TraceEntry>& entries(const Val& v) { return v.as<TraceData>().entries; }
  /// Some entry's word has `w` as a prefix.
  static bool has_prefix(const Val& v, const Word& w);

 protected:
  std::vector<std::string> alphabet_;
};

// ---- hybrid time: Q≥0×X + Q>0×Y + Q̄≥0 ----

struct TimedData final : CompData {
  enum Kind : unsigned char { Done, Guard, NonTerm } kind;
  Rational elapsed;
  bool infinite = false;  // NonTerm only
  Val payload;
  int tag() const override { return 2; }
  int cmp_same(const CompData& o) const override;
};

class HybridGpm : public Gpm {
 public:
  std::string name() const override { return "hybrid"; }
  Val eta(const Val& a) const override;
  Val map(const Fn& f, const Fn& g, const Val& v) const override;
  Val xi(const Val& v) const override;
  Val upsilon(const Val& v) const override;
  Val zeta(const Val& v) const override;
  Val wave_tau(const Val& x, const Val& v) const override;
  std::optional<Val> eps_inverse(const Val& v) const override;
  bool valid(const Val& v, const Obj& y, const Obj& z) const override;
  std::vector<Val> enumerate(const Obj& y, const Obj& z, const EnumConfig& cfg) const override;
  bool has_guard(const Val& v) const override;
  Val cut(const Val& v, const std::function<std::optional<Val>(const Val&)>& keep) const override;
  std::optional<Val> effect(const std::string& op, const Val& arg) const override;
  bool knows_effect(const std::string& op) const override;
  Json to_json(const Val& v) const override;

  static Val make(TimedData::Kind k, Rational t, Val payload, bool infinite = false);
  static const TimedData& data(const Val& v) { return v.as<TimedData>(); }
};

// ---- resumption trees: Pfin(X + 1 + A × T(X+Y)), depth-bounded ----

struct TreeData;
using Tree = std::shared_ptr<const TreeData>;

struct TreeNode {
  enum Kind : unsigned char { Leaf, Term, Step, Cut } kind;
  Val leaf;            // Leaf
  std::string action;  // Step
  Tree next;           // Step
};

struct TreeData final : CompData {
  std::vector<TreeNode> nodes;  // sorted, duplicate-free
  int tag() const override { return 3; }
  int cmp_same(const CompData& o) const override;
};

/// An element of X ± Y is stored as a tree over X + Y whose root layer has
/// only inl leaves.
class ResumptionGpm : public Gpm {
 public:
  ResumptionGpm(std::vector<std::string> alphabet, int depth) : alphabet_(std::move(alphabet)), depth_(depth) {}
  std::string name() const override { return "resumption"; }
  Val eta(const Val& a) const override;
  Val map(const Fn& f, const Fn& g, const Val& v) const override;
  Val xi(const Val& v) const override;
  Val upsilon(const Val& v) const override;
  Val zeta(const Val& v) const override;
  Val wave_tau(const Val& x, const Val& v) const override;
  std::optional<Val> eps_inverse(const Val& v) const override;
  bool valid(const Val& v, const Obj& y, const Obj& z) const override;
  std::vector<Val> enumerate(const Obj& y, const Obj& z, const EnumConfig& cfg) const override;
  bool has_guard(const Val& v) const override;
  Val cut(const Val& v, const std::function<std::optional<Val>(const Val&)>& keep) const override;
  std::optional<Val> effect(const std::string& op, const Val& arg) const override;
  bool knows_effect(const std::string& op) const override;
  Json to_json(const Val& v) const override;

  int depth() const { return depth_; }
  static Tree make_tree(std::vector<TreeNode> nodes);
  static Tree tree(const Val& v);
  static Tree truncate(const Tree& t, int remaining);
  /// Root path spelling `w` exists.
  static bool has_path(const Tree& t, const Word& w);
  /// Leaf payloads reachable at the end of path `w`.
  static std::vector<Val> leaves_after(const Tree& t, const Word& w);

 private:
  std::vector<std::string> alphabet_;
  int depth_;
};

// ---- state traces: S → (S⁺×X + S⁺×Y + S⁺) ----

struct StateEntry {
  enum Kind : unsigned char { Done, Guard, Trunc } kind;
  std::vector<unsigned> states;
  Val payload;
};

struct StateData final : CompData {
  std::vector<StateEntry> by_state;  // indexed by initial state
  int tag() const override { return 4; }
  int cmp_same(const CompData& o) const override;
};

class StateTraceGpm : public Gpm {
 public:
  StateTraceGpm(int bits, int max_writes) : bits_(bits), max_writes_(max_writes) {}
  std::string name() const override { return "state_trace"; }
  Val eta(const Val& a) const override;
  Val map(const Fn& f, const Fn& g, const Val& v) const override;
  Val xi(const Val& v) const override;
  Val upsilon(const Val& v) const override;
  Val zeta(const Val& v) const override;
  Val wave_tau(const Val& x, const Val& v) const override;
  std::optional<Val> eps_inverse(const Val& v) const override;
  bool valid(const Val& v, const Obj& y, const Obj& z) const override;
  std::vector<Val> enumerate(const Obj& y, const Obj& z, const EnumConfig& cfg) const override;
  bool has_guard(const Val& v) const override;
  Val cut(const Val& v, const std::function<std::optional<Val>(const Val&)>& keep) const override;
  std::optional<Val> effect(const std::string& op, const Val& arg) const override;
  bool knows_effect(const std::string& op) const override;
  Json to_json(const Val& v) const override;

  int bits() const { return bits_; }
  unsigned num_states() const { return 1u << bits_; }
  std::string state_name(unsigned s) const;
  unsigned parse_state(const std::string& s) const;
  Obj state_obj() const;
  static const StateEntry& at(const Val& v, unsigned s) { return v.as<StateData>().by_state[s]; }
  Val truncate(const Val& v, int max_writes) const;

 private:
  Val make(std::vector<StateEntry> es) const;
  StateEntry clip(StateEntry e) const;
  int bits_;
  int max_writes_;
};

// ---- vacuous guardedness: X ± Y = Pfin(X) ----

struct SetData final : CompData {
  std::vector<Val> elems;  // sorted, duplicate-free
  int tag() const override { return 5; }
  int cmp_same(const CompData& o) const override;
};

class VacuousGpm : public Gpm {
 public:
  std::string name() const override { return "vacuous"; }
  Val eta(const Val& a) const override;
  Val map(const Fn& f, const Fn& g, const Val& v) const override;
  Val xi(const Val& v) const override;
  Val upsilon(const Val& v) const override;
  Val zeta(const Val& v) const override;
  Val wave_tau(const Val& x, const Val& v) const override;
  std::optional<Val> eps_inverse(const Val& v) const override;
  bool valid(const Val& v, const Obj& y, const Obj& z) const override;
  std::vector<Val> enumerate(const Obj& y, const Obj& z, const EnumConfig& cfg) const override;
  bool has_guard(const Val& v) const override;
  Val cut(const Val& v, const std::function<std::optional<Val>(const Val&)>& keep) const override;
  std::optional<Val> effect(const std::string& op, const Val& arg) const override;
  bool knows_effect(const std::string& op) const override;
  Json to_json(const Val& v) const override;

  static Val make(std::vector<Val> xs);
  static const std::vector<Val>& elems(const Val& v) { return v.as<SetData>().elems; }
};

}  // namespace gfgcbv
