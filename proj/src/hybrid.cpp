#include <stdexcept>

#include "gfgcbv/instances.hpp"

namespace gfgcbv {

int TimedData::cmp_same(const CompData& o) const {
  const auto& b = static_cast<const TimedData&>(o);
  if (kind != b.kind) return kind < b.kind ? -1 : 1;
  if (infinite != b.infinite) return infinite ? 1 : -1;
  if (!infinite) {
    int c = cmp(elapsed, b.elapsed);
    if (c) return c < 0 ? -1 : 1;
  }
  if (kind == NonTerm) return 0;
  return compare(payload, b.payload);
}

Val HybridGpm::make(TimedData::Kind k, Rational t, Val payload, bool infinite) {
  auto d = std::make_shared<TimedData>();
  d->kind = k;
  t.canonicalize();
  d->elapsed = infinite ? Rational(0) : t;
  d->infinite = infinite;
  d->payload = k == TimedData::NonTerm ? Val() : std::move(payload);
  return Val::comp(std::move(d));
}

Val HybridGpm::eta(const Val& a) const { return make(TimedData::Done, 0, a); }

Val HybridGpm::map(const Fn& f, const Fn& g, const Val& v) const {
  const auto& d = data(v);
  switch (d.kind) {
    case TimedData::Done: return make(d.kind, d.elapsed, f(d.payload));
    case TimedData::Guard: return make(d.kind, d.elapsed, g(d.payload));
    default: return v;
  }
}

namespace {

// Prefixes a duration onto an inner outcome, relabelling its payload.
Val delay(const Rational& r, const Val& inner, TimedData::Kind done_as, const Fn& on_done, const Fn& on_guard) {
  const auto& u = HybridGpm::data(inner);
  switch (u.kind) {
    case TimedData::Done: return HybridGpm::make(done_as, r + u.elapsed, on_done(u.payload));
    case TimedData::Guard: return HybridGpm::make(TimedData::Guard, r + u.elapsed, on_guard(u.payload));
    default: return HybridGpm::make(TimedData::NonTerm, r + u.elapsed, Val(), u.infinite);
  }
}

}  // namespace

Val HybridGpm::xi(const Val& v) const {
  const auto& d = data(v);
  switch (d.kind) {
    case TimedData::Done: return delay(d.elapsed, d.payload, TimedData::Done, id_fn, inl_fn);
    case TimedData::Guard: return make(TimedData::Guard, d.elapsed, Val::inr(d.payload));
    default: return v;
  }
}

Val HybridGpm::upsilon(const Val& v) const {
  const auto& d = data(v);
  switch (d.kind) {
    case TimedData::Done: return make(TimedData::Done, d.elapsed, Val::inl(d.payload));
    case TimedData::Guard:
      if (d.payload.is(Val::Kind::Inl)) return make(TimedData::Done, d.elapsed, Val::inr(d.payload.child()));
      return make(TimedData::Guard, d.elapsed, d.payload.child());
    default: return v;
  }
}

Val HybridGpm::zeta(const Val& v) const {
  const auto& d = data(v);
  if (d.kind != TimedData::Guard) return v;
  return delay(d.elapsed, d.payload, TimedData::Guard, inl_fn, inr_fn);
}

Val HybridGpm::wave_tau(const Val& x, const Val& v) const {
  const auto& d = data(v);
  if (d.kind == TimedData::NonTerm) return v;
  return make(d.kind, d.elapsed, Val::pair(x, d.payload));
}

std::optional<Val> HybridGpm::eps_inverse(const Val& v) const {
  const auto& d = data(v);
  switch (d.kind) {
    case TimedData::Done:
      if (d.payload.is(Val::Kind::Inl)) return make(TimedData::Done, d.elapsed, d.payload.child());
      if (sgn(d.elapsed) <= 0) return std::nullopt;
      return make(TimedData::Guard, d.elapsed, d.payload.child());
    case TimedData::Guard: return std::nullopt;
    default: return v;
  }
}

bool HybridGpm::valid(const Val& v, const Obj& y, const Obj& z) const {
  if (!v.is(Val::Kind::Comp) || v.data().tag() != 2) return false;
  const auto& d = data(v);
  if (sgn(d.elapsed) < 0) return false;
  switch (d.kind) {
    case TimedData::Done: return member(d.payload, y, *this);
    case TimedData::Guard: return sgn(d.elapsed) > 0 && member(d.payload, z, *this);
    default: return true;
  }
}

std::vector<Val> HybridGpm::enumerate(const Obj& y, const Obj& z, const EnumConfig& cfg) const {
  std::vector<Val> out;
  auto ys = gfgcbv::enumerate(y, *this, cfg.inner());
  auto zs = gfgcbv::enumerate(z, *this, cfg.inner());
  for (const auto& t : cfg.times) {
    for (const auto& a : ys) out.push_back(make(TimedData::Done, t, a));
    if (sgn(t) > 0)
      for (const auto& b : zs) out.push_back(make(TimedData::Guard, t, b));
    out.push_back(make(TimedData::NonTerm, t, Val()));
  }
  out.push_back(make(TimedData::NonTerm, 0, Val(), true));
  return out;
}

bool HybridGpm::has_guard(const Val& v) const { return data(v).kind == TimedData::Guard; }

Val HybridGpm::cut(const Val& v, const std::function<std::optional<Val>(const Val&)>& keep) const {
  const auto& d = data(v);
  if (d.kind != TimedData::Guard) return v;
  if (auto w = keep(d.payload)) return make(TimedData::Guard, d.elapsed, *w);
  return make(TimedData::NonTerm, d.elapsed, Val());
}

bool HybridGpm::knows_effect(const std::string& op) const { return op == "wait"; }

std::optional<Val> HybridGpm::effect(const std::string& op, const Val& arg) const {
  if (op != "wait") return std::nullopt;
  if (!arg.is(Val::Kind::Num) || sgn(arg.rat()) < 0) throw std::invalid_argument("wait expects a nonnegative rational");
  if (sgn(arg.rat()) == 0) return make(TimedData::Done, 0, arg);
  return make(TimedData::Guard, arg.rat(), arg);
}

Json HybridGpm::to_json(const Val& v) const {
  const auto& d = data(v);
  Json j;
  switch (d.kind) {
    case TimedData::Done: j["status"] = "done"; break;
    case TimedData::Guard: j["status"] = "guarded"; break;
    default: j["status"] = "nonterminating";
  }
  j["elapsed"] = d.infinite ? std::string("inf") : rat_str(d.elapsed);
  if (d.kind != TimedData::NonTerm) j["value"] = val_json(d.payload, this);
  return j;
}

}  // namespace gfgcbv
