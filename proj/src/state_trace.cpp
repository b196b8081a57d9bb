#include <algorithm>
#include <stdexcept>

#include "gfgcbv/instances.hpp"

namespace gfgcbv {

namespace {

int cmp_entry(const StateEntry& a, const StateEntry& b) {
  if (a.kind != b.kind) return a.kind < b.kind ? -1 : 1;
  if (a.states != b.states) return a.states < b.states ? -1 : 1;
  if (a.kind == StateEntry::Trunc) return 0;
  return compare(a.payload, b.payload);
}

std::vector<unsigned> splice(const std::vector<unsigned>& a, const std::vector<unsigned>& b) {
  // b starts at the last state of a.
  std::vector<unsigned> out = a;
  out.insert(out.end(), b.begin() + 1, b.end());
  return out;
}

}  // namespace

int StateData::cmp_same(const CompData& o) const {
  const auto& b = static_cast<const StateData&>(o).by_state;
  if (by_state.size() != b.size()) return by_state.size() < b.size() ? -1 : 1;
  for (size_t i = 0; i < b.size(); ++i)
    if (int c = cmp_entry(by_state[i], b[i])) return c;
  return 0;
}

std::string StateTraceGpm::state_name(unsigned s) const {
  std::string out;
  for (int i = 0; i < bits_; ++i) out += ((s >> i) & 1u) ? '1' : '0';
  return out;
}

unsigned StateTraceGpm::parse_state(const std::string& s) const {
  if (static_cast<int>(s.size()) != bits_) throw std::invalid_argument("state width mismatch: " + s);
  unsigned v = 0;
  for (int i = 0; i < bits_; ++i) {
    if (s[i] == '1')
      v |= 1u << i;
    else if (s[i] != '0')
      throw std::invalid_argument("bad state: " + s);
  }
  return v;
}

Obj StateTraceGpm::state_obj() const {
  std::vector<Val> es;
  for (unsigned s = 0; s < num_states(); ++s) es.push_back(Val::atom(state_name(s)));
  return Obj::finite(std::move(es));
}

StateEntry StateTraceGpm::clip(StateEntry e) const {
  if (static_cast<int>(e.states.size()) > max_writes_ + 1) {
    e.states.resize(max_writes_ + 1);
    e.kind = StateEntry::Trunc;
  }
  if (e.kind == StateEntry::Trunc) e.payload = Val();
  return e;
}

Val StateTraceGpm::make(std::vector<StateEntry> es) const {
  auto d = std::make_shared<StateData>();
  for (auto& e : es) d->by_state.push_back(clip(std::move(e)));
  return Val::comp(std::move(d));
}

Val StateTraceGpm::eta(const Val& a) const {
  std::vector<StateEntry> es;
  for (unsigned s = 0; s < num_states(); ++s) es.push_back({StateEntry::Done, {s}, a});
  return make(std::move(es));
}

Val StateTraceGpm::map(const Fn& f, const Fn& g, const Val& v) const {
  std::vector<StateEntry> es;
  for (unsigned s = 0; s < num_states(); ++s) {
    StateEntry e = at(v, s);
    if (e.kind == StateEntry::Done) e.payload = f(e.payload);
    if (e.kind == StateEntry::Guard) e.payload = g(e.payload);
    es.push_back(std::move(e));
  }
  return make(std::move(es));
}

Val StateTraceGpm::xi(const Val& v) const {
  std::vector<StateEntry> es;
  for (unsigned s = 0; s < num_states(); ++s) {
    const StateEntry& e = at(v, s);
    if (e.kind == StateEntry::Done) {
      const StateEntry& u = at(e.payload, e.states.back());
      auto ss = splice(e.states, u.states);
      switch (u.kind) {
        case StateEntry::Done: es.push_back({StateEntry::Done, ss, u.payload}); break;
        case StateEntry::Guard: es.push_back({StateEntry::Guard, ss, Val::inl(u.payload)}); break;
        default: es.push_back({StateEntry::Trunc, ss, Val()});
      }
    } else if (e.kind == StateEntry::Guard) {
      es.push_back({StateEntry::Guard, e.states, Val::inr(e.payload)});
    } else {
      es.push_back(e);
    }
  }
  return make(std::move(es));
}

Val StateTraceGpm::upsilon(const Val& v) const {
  std::vector<StateEntry> es;
  for (unsigned s = 0; s < num_states(); ++s) {
    const StateEntry& e = at(v, s);
    switch (e.kind) {
      case StateEntry::Done: es.push_back({StateEntry::Done, e.states, Val::inl(e.payload)}); break;
      case StateEntry::Guard:
        if (e.payload.is(Val::Kind::Inl))
          es.push_back({StateEntry::Done, e.states, Val::inr(e.payload.child())});
        else
          es.push_back({StateEntry::Guard, e.states, e.payload.child()});
        break;
      default: es.push_back(e);
    }
  }
  return make(std::move(es));
}

Val StateTraceGpm::zeta(const Val& v) const {
  std::vector<StateEntry> es;
  for (unsigned s = 0; s < num_states(); ++s) {
    const StateEntry& e = at(v, s);
    if (e.kind != StateEntry::Guard) {
      es.push_back(e);
      continue;
    }
    const StateEntry& u = at(e.payload, e.states.back());
    auto ss = splice(e.states, u.states);
    switch (u.kind) {
      case StateEntry::Done: es.push_back({StateEntry::Guard, ss, Val::inl(u.payload)}); break;
      case StateEntry::Guard: es.push_back({StateEntry::Guard, ss, Val::inr(u.payload)}); break;
      default: es.push_back({StateEntry::Trunc, ss, Val()});
    }
  }
  return make(std::move(es));
}

Val StateTraceGpm::wave_tau(const Val& x, const Val& v) const {
  std::vector<StateEntry> es;
  for (unsigned s = 0; s < num_states(); ++s) {
    StateEntry e = at(v, s);
    if (e.kind != StateEntry::Trunc) e.payload = Val::pair(x, e.payload);
    es.push_back(std::move(e));
  }
  return make(std::move(es));
}

std::optional<Val> StateTraceGpm::eps_inverse(const Val& v) const {
  std::vector<StateEntry> es;
  for (unsigned s = 0; s < num_states(); ++s) {
    const StateEntry& e = at(v, s);
    switch (e.kind) {
      case StateEntry::Done:
        if (e.payload.is(Val::Kind::Inl)) {
          es.push_back({StateEntry::Done, e.states, e.payload.child()});
        } else {
          if (e.states.size() < 2) return std::nullopt;
          es.push_back({StateEntry::Guard, e.states, e.payload.child()});
        }
        break;
      case StateEntry::Guard: return std::nullopt;
      default: es.push_back(e);
    }
  }
  return make(std::move(es));
}

bool StateTraceGpm::valid(const Val& v, const Obj& y, const Obj& z) const {
  if (!v.is(Val::Kind::Comp) || v.data().tag() != 4) return false;
  const auto& d = v.as<StateData>();
  if (d.by_state.size() != num_states()) return false;
  for (unsigned s = 0; s < num_states(); ++s) {
    const auto& e = d.by_state[s];
    if (e.states.empty() || e.states.front() != s) return false;
    if (static_cast<int>(e.states.size()) > max_writes_ + 1) return false;
    for (auto t : e.states)
      if (t >= num_states()) return false;
    if (e.kind == StateEntry::Done && !member(e.payload, y, *this)) return false;
    if (e.kind == StateEntry::Guard && (e.states.size() < 2 || !member(e.payload, z, *this))) return false;
  }
  return true;
}

std::vector<Val> StateTraceGpm::enumerate(const Obj& y, const Obj& z, const EnumConfig& cfg) const {
  auto ys = gfgcbv::enumerate(y, *this, cfg.inner());
  auto zs = gfgcbv::enumerate(z, *this, cfg.inner());
  std::vector<std::vector<StateEntry>> per_state;
  for (unsigned s = 0; s < num_states(); ++s) {
    std::vector<std::vector<unsigned>> lists{{s}};
    std::vector<std::vector<unsigned>> layer{{s}};
    for (int k = 0; k < max_writes_; ++k) {
      std::vector<std::vector<unsigned>> next;
      for (const auto& l : layer)
        for (unsigned t = 0; t < num_states(); ++t) {
          auto m = l;
          m.push_back(t);
          next.push_back(m);
        }
      lists.insert(lists.end(), next.begin(), next.end());
      layer = std::move(next);
    }
    std::vector<StateEntry> es;
    for (const auto& l : lists) {
      for (const auto& a : ys) es.push_back({StateEntry::Done, l, a});
      if (l.size() >= 2)
        for (const auto& b : zs) es.push_back({StateEntry::Guard, l, b});
      es.push_back({StateEntry::Trunc, l, Val()});
    }
    per_state.push_back(std::move(es));
  }
  // Product over initial states.
  std::vector<std::vector<StateEntry>> rows{{}};
  for (const auto& choices : per_state) {
    std::vector<std::vector<StateEntry>> next;
    for (const auto& r : rows)
      for (const auto& c : choices) {
        auto m = r;
        m.push_back(c);
        next.push_back(std::move(m));
        if (next.size() > 4 * cfg.cap + 16) break;
      }
    rows = std::move(next);
  }
  std::vector<Val> out;
  for (auto& r : rows) out.push_back(make(std::move(r)));
  return out;
}

bool StateTraceGpm::has_guard(const Val& v) const {
  for (const auto& e : v.as<StateData>().by_state)
    if (e.kind == StateEntry::Guard) return true;
  return false;
}

Val StateTraceGpm::cut(const Val& v, const std::function<std::optional<Val>(const Val&)>& keep) const {
  std::vector<StateEntry> es;
  for (const auto& e : v.as<StateData>().by_state) {
    if (e.kind != StateEntry::Guard) {
      es.push_back(e);
    } else if (auto w = keep(e.payload)) {
      es.push_back({StateEntry::Guard, e.states, *w});
    } else {
      es.push_back({StateEntry::Trunc, e.states, Val()});
    }
  }
  return make(std::move(es));
}

Val StateTraceGpm::truncate(const Val& v, int max_writes) const {
  std::vector<StateEntry> es;
  for (auto e : v.as<StateData>().by_state) {
    if (static_cast<int>(e.states.size()) > max_writes + 1) {
      e.states.resize(max_writes + 1);
      e.kind = StateEntry::Trunc;
      e.payload = Val();
    }
    es.push_back(std::move(e));
  }
  auto d = std::make_shared<StateData>();
  d->by_state = std::move(es);
  return Val::comp(std::move(d));
}

bool StateTraceGpm::knows_effect(const std::string& op) const { return op == "get" || op == "put"; }

std::optional<Val> StateTraceGpm::effect(const std::string& op, const Val& arg) const {
  std::vector<StateEntry> es;
  if (op == "get") {
    for (unsigned s = 0; s < num_states(); ++s) es.push_back({StateEntry::Done, {s}, Val::atom(state_name(s))});
  } else if (op == "put") {
    unsigned t = parse_state(arg.name());
    for (unsigned s = 0; s < num_states(); ++s) es.push_back({StateEntry::Guard, {s, t}, Val()});
  } else {
    return std::nullopt;
  }
  return make(std::move(es));
}

Json StateTraceGpm::to_json(const Val& v) const {
  Json arr = Json::array();
  const auto& d = v.as<StateData>();
  for (unsigned s = 0; s < d.by_state.size(); ++s) {
    const auto& e = d.by_state[s];
    Json j;
    j["init"] = state_name(s);
    j["status"] = e.kind == StateEntry::Done ? "done" : (e.kind == StateEntry::Guard ? "guarded" : "truncated");
    Json ss = Json::array();
    for (auto t : e.states) ss.push_back(state_name(t));
    j["states"] = ss;
    if (e.kind != StateEntry::Trunc) j["value"] = val_json(e.payload, this);
    arr.push_back(j);
  }
  return arr;
}

}  // namespace gfgcbv
