#include <stdexcept>

#include "gfgcbv/instances.hpp"

namespace gfgcbv {

namespace {

class MutantUpsilonGpm final : public TraceGpm {
 public:
  using TraceGpm::TraceGpm;
  std::string name() const override { return "mutant_upsilon"; }
  Val upsilon(const Val& v) const override {
    std::vector<TraceEntry> out;
    for (const auto& e : entries(v)) {
      switch (e.kind) {
        case TraceEntry::Done: out.push_back({e.kind, e.word, Val::inl(e.payload)}); break;
        case TraceEntry::Guard:
          if (e.payload.is(Val::Kind::Inl)) {
            out.push_back({TraceEntry::Done, e.word, Val::inr(e.payload.child())});
          } else {
            Word w = e.word;
            w.insert(w.end(), e.word.begin(), e.word.end());
            out.push_back({TraceEntry::Guard, w, e.payload.child()});
          }
          break;
        default: out.push_back(e);
      }
    }
    return make(std::move(out));
  }
};

}  // namespace

const std::vector<std::string>& instance_names() {
  static const std::vector<std::string> names{"trace", "hybrid", "resumption", "state_trace", "vacuous"};
  return names;
}

std::unique_ptr<Gpm> make_instance(const std::string& name, const InstanceConfig& cfg) {
  bool alphabetic = name == "trace" || name == "resumption" || name == "mutant_upsilon";
  if (alphabetic && cfg.alphabet.empty()) throw std::invalid_argument(name + ": empty alphabet");
  if ((name == "resumption" || name == "state_trace") && cfg.depth < 1)
    throw std::invalid_argument(name + ": depth bound must be positive");
  if (name == "state_trace" && (cfg.state_bits < 1 || cfg.state_bits > 16))
    throw std::invalid_argument("state_trace: state width must be between 1 and 16");
  if (name == "trace") return std::make_unique<TraceGpm>(cfg.alphabet);
  if (name == "hybrid") return std::make_unique<HybridGpm>();
  if (name == "resumption") return std::make_unique<ResumptionGpm>(cfg.alphabet, cfg.depth);
  if (name == "state_trace") return std::make_unique<StateTraceGpm>(cfg.state_bits, cfg.depth);
  if (name == "vacuous") return std::make_unique<VacuousGpm>();
  if (name == "mutant_upsilon") return make_mutant_upsilon(cfg);
  throw std::invalid_argument("unknown instance: " + name);
}

std::unique_ptr<Gpm> make_mutant_upsilon(const InstanceConfig& cfg) {
  return std::make_unique<MutantUpsilonGpm>(cfg.alphabet);
}

bool bounded_equal(const Gpm& inst, const Val& a, const Val& b, int depth) {
  if (const auto* r = dynamic_cast<const ResumptionGpm*>(&inst)) {
    (void)r;
    auto ta = ResumptionGpm::truncate(ResumptionGpm::tree(a), depth);
    auto tb = ResumptionGpm::truncate(ResumptionGpm::tree(b), depth);
    return ta->cmp_same(*tb) == 0;
  }
  if (const auto* s = dynamic_cast<const StateTraceGpm*>(&inst)) return s->truncate(a, depth) == s->truncate(b, depth);
  return a == b;
}

}  // namespace gfgcbv
