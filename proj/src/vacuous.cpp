#include <algorithm>

#include "gfgcbv/instances.hpp"

namespace gfgcbv {

int SetData::cmp_same(const CompData& o) const {
  const auto& b = static_cast<const SetData&>(o).elems;
  size_t n = std::min(elems.size(), b.size());
  for (size_t i = 0; i < n; ++i)
    if (int c = compare(elems[i], b[i])) return c;
  if (elems.size() != b.size()) return elems.size() < b.size() ? -1 : 1;
  return 0;
}

Val VacuousGpm::make(std::vector<Val> xs) {
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  auto d = std::make_shared<SetData>();
  d->elems = std::move(xs);
  return Val::comp(std::move(d));
}

Val VacuousGpm::eta(const Val& a) const { return make({a}); }

Val VacuousGpm::map(const Fn& f, const Fn&, const Val& v) const {
  std::vector<Val> out;
  for (const auto& x : elems(v)) out.push_back(f(x));
  return make(std::move(out));
}

Val VacuousGpm::xi(const Val& v) const {
  std::vector<Val> out;
  for (const auto& inner : elems(v))
    for (const auto& x : elems(inner)) out.push_back(x);
  return make(std::move(out));
}

Val VacuousGpm::upsilon(const Val& v) const {
  std::vector<Val> out;
  for (const auto& x : elems(v)) out.push_back(Val::inl(x));
  return make(std::move(out));
}

Val VacuousGpm::zeta(const Val& v) const { return v; }

Val VacuousGpm::wave_tau(const Val& x, const Val& v) const {
  std::vector<Val> out;
  for (const auto& y : elems(v)) out.push_back(Val::pair(x, y));
  return make(std::move(out));
}

std::optional<Val> VacuousGpm::eps_inverse(const Val& v) const {
  std::vector<Val> out;
  for (const auto& x : elems(v)) {
    if (!x.is(Val::Kind::Inl)) return std::nullopt;
    out.push_back(x.child());
  }
  return make(std::move(out));
}

bool VacuousGpm::valid(const Val& v, const Obj& y, const Obj&) const {
  if (!v.is(Val::Kind::Comp) || v.data().tag() != 5) return false;
  for (const auto& x : elems(v))
    if (!member(x, y, *this)) return false;
  return true;
}

std::vector<Val> VacuousGpm::enumerate(const Obj& y, const Obj&, const EnumConfig& cfg) const {
  auto ys = gfgcbv::enumerate(y, *this, cfg.inner());
  std::vector<Val> out;
  for (auto& s : subsets_upto(ys, cfg.max_set)) out.push_back(make(std::move(s)));
  return thin(std::move(out), cfg.cap);
}

bool VacuousGpm::has_guard(const Val&) const { return false; }

Val VacuousGpm::cut(const Val& v, const std::function<std::optional<Val>(const Val&)>&) const { return v; }

bool VacuousGpm::knows_effect(const std::string& op) const {
  return op == "toss" || op == "choose" || op == "fail";
}

std::optional<Val> VacuousGpm::effect(const std::string& op, const Val&) const {
  if (op == "toss" || op == "choose") return make({Val::inl(Val()), Val::inr(Val())});
  if (op == "fail") return make({});
  return std::nullopt;
}

Json VacuousGpm::to_json(const Val& v) const {
  Json arr = Json::array();
  for (const auto& x : elems(v)) arr.push_back(val_json(x, this));
  return arr;
}

}  // namespace gfgcbv
