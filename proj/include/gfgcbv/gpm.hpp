#pragma once

#include <json.hpp>

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gfgcbv/value.hpp"

namespace gfgcbv {

using Json = nlohmann::ordered_json;

/// Bounds for enumerating carriers. Sets are enumerated up to `max_set`
/// elements; a result longer than `cap` is thinned to `cap` evenly spaced
/// elements (nested carriers use `inner_cap`).
struct EnumConfig {
  std::vector<std::string> alphabet{"a"};
  int max_word = 2;
  int max_set = 2;
  std::size_t cap = 4000;
  std::size_t inner_cap = 24;
  std::vector<Rational> times{Rational(0), Rational(1, 2), Rational(1)};

  EnumConfig inner() const;
  static std::size_t env_cap(std::size_t fallback);  // GFGCBV_MAX_ENUM
};

std::vector<Val> thin(std::vector<Val> xs, std::size_t cap);
std::vector<std::vector<Val>> subsets_upto(const std::vector<Val>& items, int max_size);

class Gpm;

/// Elements of a carrier; Guard objects are delegated to the instance.
std::vector<Val> enumerate(const Obj& o, const Gpm& inst, const EnumConfig& cfg);
bool member(const Val& v, const Obj& o, const Gpm& inst);

struct IterResult {
  Val value;       // Y ± 0, residual exits marked by the instance
  Val raw;         // Y ± X after the last unfolding, before cutting
  bool exhausted;  // guarded X-exits remained when fuel ran out
  int steps;
};

/// Strong guarded parametrized monad over (V, +, 0).
class Gpm {
 public:
  virtual ~Gpm() = default;
  virtual std::string name() const = 0;

  /// η : A → A ± 0
  virtual Val eta(const Val& a) const = 0;
  /// f ± g
  virtual Val map(const Fn& f, const Fn& g, const Val& v) const = 0;
  /// ξ : (A ± B) ± C → A ± (B + C)
  virtual Val xi(const Val& v) const = 0;
  /// υ : A ± (B + C) → (A + B) ± C
  virtual Val upsilon(const Val& v) const = 0;
  /// ζ : A ± (B ± C) → A ± (B + C)
  virtual Val zeta(const Val& v) const = 0;
  /// χ : (A ± B) + (C ± D) → (A + C) ± (B + D)
  virtual Val chi(const Val& v) const;
  /// τ̃ : X × (Y ± Z) → (X × Y) ± (X × Z)
  virtual Val wave_tau(const Val& x, const Val& v) const = 0;

  /// Structural inverse of ε on (Y + Z) ± 0; absent when the value has an
  /// unguarded Z-outcome.
  virtual std::optional<Val> eps_inverse(const Val& v) const = 0;
  virtual bool valid(const Val& v, const Obj& y, const Obj& z) const = 0;
  virtual std::vector<Val> enumerate(const Obj& y, const Obj& z, const EnumConfig& cfg) const = 0;
  virtual bool has_guard(const Val& v) const = 0;
  /// Rewrites every guard exit z: keep(z) = w retargets it to w, nullopt
  /// turns it into the instance's residual marker.
  virtual Val cut(const Val& v, const std::function<std::optional<Val>(const Val&)>& keep) const = 0;
  /// Generic effect table; nullopt when `op` is not bound by this instance.
  virtual std::optional<Val> effect(const std::string& op, const Val& arg) const;
  virtual bool knows_effect(const std::string& op) const;
  virtual Json to_json(const Val& v) const = 0;

  // Derived structure; never overridden.
  Val eps(const Val& v) const;                 // X ± Y → (X + Y) ± 0
  Val unit(const Val& a) const;                // X → X ± Y
  Val mult(const Val& v) const;                // (X ± Y) ± Y → X ± Y
  Val bind(const Val& v, const Fn& k) const;   // Kleisli extension
  Val unfold(const Val& cur, const Fn& body) const;  // one guarded unrolling
  IterResult iterate(const Fn& body, const Val& x0, int fuel) const;
};

using Table = std::vector<std::pair<Val, Val>>;

/// f♯ with ε ∘ f♯ = f on `domain`, when f is guarded.
std::optional<Table> factorize(const Gpm& inst, const std::vector<Val>& domain, const Fn& f);
bool is_guarded(const Gpm& inst, const std::vector<Val>& domain, const Fn& f);
/// Search-based factorization: the unique candidate g with ε(g) = f(x).
/// Returns nullopt on no candidate; throws if two candidates exist.
std::optional<Table> factorize_search(const Gpm& inst, const std::vector<Val>& domain, const Fn& f,
                                      const std::vector<Val>& candidates);

Json val_json(const Val& v, const Gpm* inst = nullptr);

}  // namespace gfgcbv
