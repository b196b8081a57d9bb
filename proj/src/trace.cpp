#include <algorithm>
#include <stdexcept>

#include "gfgcbv/instances.hpp"

namespace gfgcbv {

namespace {

int cmp_word(const Word& a, const Word& b) {
  if (a < b) return -1;
  if (b < a) return 1;
  return 0;
}

int cmp_entry(const TraceEntry& a, const TraceEntry& b) {
  if (a.kind != b.kind) return a.kind < b.kind ? -1 : 1;
  if (int c = cmp_word(a.word, b.word)) return c;
  if (a.kind == TraceEntry::Done || a.kind == TraceEntry::Guard) return compare(a.payload, b.payload);
  return 0;
}

Word concat(const Word& a, const Word& b) {
  Word w = a;
  w.insert(w.end(), b.begin(), b.end());
  return w;
}

std::string word_str(const Word& w) {
  std::string s;
  for (size_t i = 0; i < w.size(); ++i) s += (i ? "." : "") + w[i];
  return s;
}

std::vector<Word> words_upto(const std::vector<std::string>& alphabet, int n) {
  std::vector<Word> out{{}};
  std::vector<Word> layer{{}};
  for (int k = 1; k <= n; ++k) {
    std::vector<Word> next;
    for (const auto& w : layer)
      for (const auto& a : alphabet) {
        Word x = w;
        x.push_back(a);
        next.push_back(x);
      }
    out.insert(out.end(), next.begin(), next.end());
    layer = std::move(next);
  }
  return out;
}

}  // namespace

int TraceData::cmp_same(const CompData& o) const {
  const auto& b = static_cast<const TraceData&>(o).entries;
  size_t n = std::min(entries.size(), b.size());
  for (size_t i = 0; i < n; ++i)
    if (int c = cmp_entry(entries[i], b[i])) return c;
  if (entries.size() != b.size()) return entries.size() < b.size() ? -1 : 1;
  return 0;
}

Val TraceGpm::make(std::vector<TraceEntry> es) {
  std::sort(es.begin(), es.end(), [](const TraceEntry& a, const TraceEntry& b) { return cmp_entry(a, b) < 0; });
  es.erase(std::unique(es.begin(), es.end(),
                       [](const TraceEntry& a, const TraceEntry& b) { return cmp_entry(a, b) == 0; }),
           es.end());
  auto d = std::make_shared<TraceData>();
  d->entries = std::move(es);
  return Val::comp(std::move(d));
}

Val TraceGpm::eta(const Val& a) const { return make({{TraceEntry::Done, {}, a}}); }

Val TraceGpm::map(const Fn& f, const Fn& g, const Val& v) const {
  std::vector<TraceEntry> out;
  for (const auto& e : entries(v)) {
    switch (e.kind) {
      case TraceEntry::Done: out.push_back({e.kind, e.word, f(e.payload)}); break;
      case TraceEntry::Guard: out.push_back({e.kind, e.word, g(e.payload)}); break;
      default: out.push_back(e);
    }
  }
  return make(std::move(out));
}

Val TraceGpm::xi(const Val& v) const {
  std::vector<TraceEntry> out;
  for (const auto& e : entries(v)) {
    switch (e.kind) {
      case TraceEntry::Done:
        for (const auto& u : entries(e.payload)) {
          Word w = concat(e.word, u.word);
          switch (u.kind) {
            case TraceEntry::Done: out.push_back({TraceEntry::Done, w, u.payload}); break;
            case TraceEntry::Guard: out.push_back({TraceEntry::Guard, w, Val::inl(u.payload)}); break;
            default: out.push_back({u.kind, w, Val()});
          }
        }
        break;
      case TraceEntry::Guard: out.push_back({TraceEntry::Guard, e.word, Val::inr(e.payload)}); break;
      default: out.push_back(e);
    }
  }
  return make(std::move(out));
}

Val TraceGpm::upsilon(const Val& v) const {
  std::vector<TraceEntry> out;
  for (const auto& e : entries(v)) {
    switch (e.kind) {
      case TraceEntry::Done: out.push_back({TraceEntry::Done, e.word, Val::inl(e.payload)}); break;
      case TraceEntry::Guard:
        if (e.payload.is(Val::Kind::Inl))
          out.push_back({TraceEntry::Done, e.word, Val::inr(e.payload.child())});
        else
          out.push_back({TraceEntry::Guard, e.word, e.payload.child()});
        break;
      default: out.push_back(e);
    }
  }
  return make(std::move(out));
}

Val TraceGpm::zeta(const Val& v) const {
  std::vector<TraceEntry> out;
  for (const auto& e : entries(v)) {
    if (e.kind != TraceEntry::Guard) {
      out.push_back(e);
      continue;
    }
    for (const auto& u : entries(e.payload)) {
      Word w = concat(e.word, u.word);
      switch (u.kind) {
        case TraceEntry::Done: out.push_back({TraceEntry::Guard, w, Val::inl(u.payload)}); break;
        case TraceEntry::Guard: out.push_back({TraceEntry::Guard, w, Val::inr(u.payload)}); break;
        default: out.push_back({u.kind, w, Val()});
      }
    }
  }
  return make(std::move(out));
}

Val TraceGpm::wave_tau(const Val& x, const Val& v) const {
  std::vector<TraceEntry> out;
  for (const auto& e : entries(v)) {
    if (e.kind == TraceEntry::Done || e.kind == TraceEntry::Guard)
      out.push_back({e.kind, e.word, Val::pair(x, e.payload)});
    else
      out.push_back(e);
  }
  return make(std::move(out));
}

std::optional<Val> TraceGpm::eps_inverse(const Val& v) const {
  std::vector<TraceEntry> out;
  for (const auto& e : entries(v)) {
    switch (e.kind) {
      case TraceEntry::Done:
        if (e.payload.is(Val::Kind::Inl)) {
          out.push_back({TraceEntry::Done, e.word, e.payload.child()});
        } else {
          if (e.word.empty()) return std::nullopt;
          out.push_back({TraceEntry::Guard, e.word, e.payload.child()});
        }
        break;
      case TraceEntry::Guard: return std::nullopt;
      default: out.push_back(e);
    }
  }
  return make(std::move(out));
}

bool TraceGpm::valid(const Val& v, const Obj& y, const Obj& z) const {
  if (!v.is(Val::Kind::Comp) || v.data().tag() != 1) return false;
  for (const auto& e : entries(v)) {
    for (const auto& a : e.word)
      if (std::find(alphabet_.begin(), alphabet_.end(), a) == alphabet_.end()) return false;
    if (e.kind == TraceEntry::Done && !member(e.payload, y, *this)) return false;
    if (e.kind == TraceEntry::Guard && (e.word.empty() || !member(e.payload, z, *this))) return false;
  }
  return true;
}

std::vector<Val> TraceGpm::enumerate(const Obj& y, const Obj& z, const EnumConfig& cfg) const {
  auto ws = words_upto(cfg.alphabet, cfg.max_word);
  auto ys = gfgcbv::enumerate(y, *this, cfg.inner());
  auto zs = gfgcbv::enumerate(z, *this, cfg.inner());
  // Entries are indexed through an atom so subsets can reuse subsets_upto.
  std::vector<TraceEntry> pool;
  for (const auto& w : ws) {
    for (const auto& a : ys) pool.push_back({TraceEntry::Done, w, a});
    pool.push_back({TraceEntry::Term, w, Val()});
    if (!w.empty())
      for (const auto& b : zs) pool.push_back({TraceEntry::Guard, w, b});
    pool.push_back({TraceEntry::Div, w, Val()});
  }
  std::vector<Val> idx;
  for (size_t i = 0; i < pool.size(); ++i) idx.push_back(Val::num(Rational(static_cast<long>(i))));
  std::vector<Val> out;
  for (const auto& s : subsets_upto(idx, cfg.max_set)) {
    std::vector<TraceEntry> es;
    for (const auto& i : s) es.push_back(pool[i.rat().get_num().get_ui()]);
    out.push_back(make(std::move(es)));
  }
  return out;
}

bool TraceGpm::has_guard(const Val& v) const {
  for (const auto& e : entries(v))
    if (e.kind == TraceEntry::Guard) return true;
  return false;
}

Val TraceGpm::cut(const Val& v, const std::function<std::optional<Val>(const Val&)>& keep) const {
  std::vector<TraceEntry> out;
  for (const auto& e : entries(v)) {
    if (e.kind != TraceEntry::Guard) {
      out.push_back(e);
      continue;
    }
    if (auto w = keep(e.payload))
      out.push_back({TraceEntry::Guard, e.word, *w});
    else
      out.push_back({TraceEntry::Div, e.word, Val()});
  }
  return make(std::move(out));
}

bool TraceGpm::knows_effect(const std::string& op) const {
  return op == "toss" || std::find(alphabet_.begin(), alphabet_.end(), op) != alphabet_.end();
}

std::optional<Val> TraceGpm::effect(const std::string& op, const Val& arg) const {
  if (op == "toss") return make({{TraceEntry::Done, {}, Val::inl(arg)}, {TraceEntry::Done, {}, Val::inr(arg)}});
  if (std::find(alphabet_.begin(), alphabet_.end(), op) != alphabet_.end())
    return make({{TraceEntry::Guard, {op}, arg}});
  return std::nullopt;
}

Json TraceGpm::to_json(const Val& v) const {
  Json arr = Json::array();
  for (const auto& e : entries(v)) {
    switch (e.kind) {
      case TraceEntry::Done: arr.push_back(Json::array({"done", word_str(e.word), val_json(e.payload, this)})); break;
      case TraceEntry::Term: arr.push_back(Json::array({"term", word_str(e.word)})); break;
      case TraceEntry::Guard: arr.push_back(Json::array({"guard", word_str(e.word), val_json(e.payload, this)})); break;
      case TraceEntry::Div: arr.push_back(Json::array({"div", word_str(e.word)})); break;
    }
  }
  return arr;
}

bool TraceGpm::has_prefix(const Val& v, const Word& w) {
  for (const auto& e : entries(v))
    if (e.word.size() >= w.size() && std::equal(w.begin(), w.end(), e.word.begin())) return true;
  return false;
}

}  // namespace gfgcbv
