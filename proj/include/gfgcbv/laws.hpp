#pragma once

#include <string>
#include <utility>
#include <vector>

#include "gfgcbv/coherence.hpp"
#include "gfgcbv/gpm.hpp"

namespace gfgcbv {

struct Diagram {
  std::string id;
  MorExpr f, g;
};

/// The guarded parametrized monad axioms as pairs of parallel morphism expressions.
std::vector<Diagram> gpm_diagrams();

struct LawConfig {
  EnumConfig enumc{{"a"}, 2, 2, 4000, 24, {Rational(0), Rational(1, 2), Rational(1)}};
  std::vector<int> carrier_sizes{1, 2};
  std::size_t sample_cap = 16;  // per-argument cap for laws quantifying over functions
};

struct LawResult {
  explicit LawResult(std::string id_ = {}) : id(std::move(id_)) {}
  std::string id;
  bool pass = true;
  std::size_t checked = 0;
  std::string error;
  Json witness;  // null unless failed
  Json to_json() const;
};

std::vector<LawResult> run_laws(const Gpm& inst, const LawConfig& cfg = {});

}  // namespace gfgcbv
