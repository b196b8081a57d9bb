#include "gfgcbv/gpm.hpp"

#include <cstdlib>
#include <stdexcept>

namespace gfgcbv {

EnumConfig EnumConfig::inner() const {
  EnumConfig c = *this;
  c.cap = inner_cap;
  return c;
}

std::size_t EnumConfig::env_cap(std::size_t fallback) {
  if (const char* s = std::getenv("GFGCBV_MAX_ENUM")) {
    long n = std::strtol(s, nullptr, 10);
    if (n > 0) return static_cast<std::size_t>(n);
  }
  return fallback;
}

std::vector<Val> thin(std::vector<Val> xs, std::size_t cap) {
  if (xs.size() <= cap || cap == 0) return xs;
  std::vector<Val> out;
  out.reserve(cap);
  // Evenly spaced, always keeping the first and last element.
  for (std::size_t i = 0; i < cap; ++i) {
    std::size_t j = cap == 1 ? 0 : i * (xs.size() - 1) / (cap - 1);
    out.push_back(xs[j]);
  }
  return out;
}

std::vector<std::vector<Val>> subsets_upto(const std::vector<Val>& items, int max_size) {
  std::vector<std::vector<Val>> out{{}};
  std::vector<std::size_t> idx;
  // Lexicographic enumeration of index combinations of each size.
  for (int k = 1; k <= max_size && k <= static_cast<int>(items.size()); ++k) {
    idx.assign(k, 0);
    for (int i = 0; i < k; ++i) idx[i] = i;
    while (true) {
      std::vector<Val> s;
      for (auto i : idx) s.push_back(items[i]);
      out.push_back(std::move(s));
      int i = k - 1;
      while (i >= 0 && idx[i] == items.size() - k + i) --i;
      if (i < 0) break;
      ++idx[i];
      for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  return out;
}

std::vector<Val> enumerate(const Obj& o, const Gpm& inst, const EnumConfig& cfg) {
  std::vector<Val> out;
  switch (o.kind()) {
    case Obj::Kind::Finite: out = o.elems(); break;
    case Obj::Kind::Empty: break;
    case Obj::Kind::Rat:
      for (const auto& t : cfg.times) out.push_back(Val::num(t));
      break;
    case Obj::Kind::Sum:
      for (auto& v : enumerate(o.left(), inst, cfg)) out.push_back(Val::inl(v));
      for (auto& v : enumerate(o.right(), inst, cfg)) out.push_back(Val::inr(v));
      break;
    case Obj::Kind::Prod: {
      auto ls = enumerate(o.left(), inst, cfg);
      auto rs = enumerate(o.right(), inst, cfg);
      for (auto& a : ls)
        for (auto& b : rs) out.push_back(Val::pair(a, b));
      break;
    }
    case Obj::Kind::Guard: out = inst.enumerate(o.left(), o.right(), cfg); break;
    case Obj::Kind::Fn: throw std::invalid_argument("function carriers are not enumerable");
  }
  return thin(std::move(out), cfg.cap);
}

bool member(const Val& v, const Obj& o, const Gpm& inst) {
  switch (o.kind()) {
    case Obj::Kind::Finite:
      for (const auto& e : o.elems())
        if (e == v) return true;
      return false;
    case Obj::Kind::Empty: return false;
    case Obj::Kind::Rat: return v.is(Val::Kind::Num) && sgn(v.rat()) >= 0;
    case Obj::Kind::Sum:
      if (v.is(Val::Kind::Inl)) return member(v.child(), o.left(), inst);
      if (v.is(Val::Kind::Inr)) return member(v.child(), o.right(), inst);
      return false;
    case Obj::Kind::Prod:
      return v.is(Val::Kind::Pair) && member(v.fst(), o.left(), inst) && member(v.snd(), o.right(), inst);
    case Obj::Kind::Guard: return v.is(Val::Kind::Comp) && inst.valid(v, o.left(), o.right());
    case Obj::Kind::Fn: return v.is(Val::Kind::Closure);
  }
  return false;
}

Val Gpm::chi(const Val& v) const {
  if (v.is(Val::Kind::Inl)) return map(inl_fn, inl_fn, v.child());
  if (v.is(Val::Kind::Inr)) return map(inr_fn, inr_fn, v.child());
  throw std::logic_error("chi on non-sum");
}

std::optional<Val> Gpm::effect(const std::string&, const Val&) const { return std::nullopt; }
bool Gpm::knows_effect(const std::string&) const { return false; }

Val Gpm::eps(const Val& v) const { return upsilon(map(id_fn, inl_fn, v)); }

Val Gpm::unit(const Val& a) const { return map(id_fn, absurd, eta(a)); }

Val Gpm::mult(const Val& v) const { return map(id_fn, codiag, xi(v)); }

Val Gpm::bind(const Val& v, const Fn& k) const { return mult(map(k, id_fn, v)); }

Val Gpm::unfold(const Val& cur, const Fn& body) const {
  return map(codiag, id_fn, upsilon(zeta(map(id_fn, body, cur))));
}

IterResult Gpm::iterate(const Fn& body, const Val& x0, int fuel) const {
  if (fuel < 1) throw std::invalid_argument("fuel must be positive");
  Val cur = body(x0);
  int steps = 1;
  while (steps < fuel && has_guard(cur)) {
    cur = unfold(cur, body);
    ++steps;
  }
  bool ex = has_guard(cur);
  Val out = cut(cur, [](const Val&) -> std::optional<Val> { return std::nullopt; });
  return IterResult{out, cur, ex, steps};
}

std::optional<Table> factorize(const Gpm& inst, const std::vector<Val>& domain, const Fn& f) {
  Table t;
  for (const auto& x : domain) {
    Val y = f(x);
    auto g = inst.eps_inverse(y);
    if (!g || !(inst.eps(*g) == y)) return std::nullopt;
    t.emplace_back(x, *g);
  }
  return t;
}

bool is_guarded(const Gpm& inst, const std::vector<Val>& domain, const Fn& f) {
  return factorize(inst, domain, f).has_value();
}

std::optional<Table> factorize_search(const Gpm& inst, const std::vector<Val>& domain, const Fn& f,
                                      const std::vector<Val>& candidates) {
  Table t;
  for (const auto& x : domain) {
    Val y = f(x);
    std::optional<Val> hit;
    for (const auto& g : candidates) {
      if (inst.eps(g) == y) {
        if (hit && !(*hit == g)) throw std::logic_error("eps is not injective at " + y.str());
        hit = g;
      }
    }
    if (!hit) return std::nullopt;
    t.emplace_back(x, *hit);
  }
  return t;
}

Json val_json(const Val& v, const Gpm* inst) {
  switch (v.kind()) {
    case Val::Kind::Atom: return v.name();
    case Val::Kind::Num: return rat_str(v.rat());
    case Val::Kind::Inl: return Json{{"inl", val_json(v.child(), inst)}};
    case Val::Kind::Inr: return Json{{"inr", val_json(v.child(), inst)}};
    case Val::Kind::Pair: return Json::array({val_json(v.fst(), inst), val_json(v.snd(), inst)});
    case Val::Kind::Closure: return "<closure>";
    case Val::Kind::Comp: return inst ? inst->to_json(v) : Json("<comp>");
  }
  return nullptr;
}

}  // namespace gfgcbv
