#include "gfgcbv/value.hpp"

#include <sstream>
#include <stdexcept>

namespace gfgcbv {

std::string rat_str(const Rational& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rational parse_rat(const std::string& s) {
  Rational q;
  if (q.set_str(s, 10) != 0) throw std::invalid_argument("bad rational: " + s);
  q.canonicalize();
  return q;
}

Val::Val() {
  static const auto star = std::make_shared<const Node>(Node{Kind::Atom, std::string("*")});
  node_ = star;
}

Val Val::atom(std::string s) { return Val(std::make_shared<const Node>(Node{Kind::Atom, std::move(s)})); }

Val Val::num(Rational q) {
  q.canonicalize();
  return Val(std::make_shared<const Node>(Node{Kind::Num, std::move(q)}));
}

Val Val::inl(Val v) {
  return Val(std::make_shared<const Node>(Node{Kind::Inl, std::array<Val, 2>{std::move(v), Val()}}));
}

Val Val::inr(Val v) {
  return Val(std::make_shared<const Node>(Node{Kind::Inr, std::array<Val, 2>{std::move(v), Val()}}));
}

Val Val::pair(Val a, Val b) {
  return Val(std::make_shared<const Node>(Node{Kind::Pair, std::array<Val, 2>{std::move(a), std::move(b)}}));
}

Val Val::closure(std::shared_ptr<const Closure> c) {
  return Val(std::make_shared<const Node>(Node{Kind::Closure, std::move(c)}));
}

Val Val::comp(std::shared_ptr<const CompData> c) {
  return Val(std::make_shared<const Node>(Node{Kind::Comp, std::move(c)}));
}

const std::string& Val::name() const { return std::get<std::string>(node_->data); }
const Rational& Val::rat() const { return std::get<Rational>(node_->data); }
const Val& Val::child() const { return std::get<std::array<Val, 2>>(node_->data)[0]; }
const Val& Val::fst() const { return std::get<std::array<Val, 2>>(node_->data)[0]; }
const Val& Val::snd() const { return std::get<std::array<Val, 2>>(node_->data)[1]; }
const Closure& Val::clo() const { return *std::get<std::shared_ptr<const Closure>>(node_->data); }
const CompData& Val::data() const { return *std::get<std::shared_ptr<const CompData>>(node_->data); }
std::shared_ptr<const CompData> Val::data_ptr() const { return std::get<std::shared_ptr<const CompData>>(node_->data); }

int compare(const Val& a, const Val& b) {
  if (a.node_ == b.node_) return 0;
  if (a.kind() != b.kind()) return a.kind() < b.kind() ? -1 : 1;
  switch (a.kind()) {
    case Val::Kind::Atom: {
      int c = a.name().compare(b.name());
      return c < 0 ? -1 : (c > 0 ? 1 : 0);
    }
    case Val::Kind::Num: {
      int c = cmp(a.rat(), b.rat());
      return c < 0 ? -1 : (c > 0 ? 1 : 0);
    }
    case Val::Kind::Inl:
    case Val::Kind::Inr:
      return compare(a.child(), b.child());
    case Val::Kind::Pair: {
      int c = compare(a.fst(), b.fst());
      return c != 0 ? c : compare(a.snd(), b.snd());
    }
    case Val::Kind::Closure: {
      auto pa = &a.clo(), pb = &b.clo();
      return pa == pb ? 0 : (pa < pb ? -1 : 1);
    }
    case Val::Kind::Comp: {
      const CompData& da = a.data();
      const CompData& db = b.data();
      if (da.tag() != db.tag()) return da.tag() < db.tag() ? -1 : 1;
      return da.cmp_same(db);
    }
  }
  return 0;
}

std::string Val::str() const {
  switch (kind()) {
    case Kind::Atom: return name();
    case Kind::Num: return rat_str(rat());
    case Kind::Inl: return "inl(" + child().str() + ")";
    case Kind::Inr: return "inr(" + child().str() + ")";
    case Kind::Pair: return "<" + fst().str() + "," + snd().str() + ">";
    case Kind::Closure: return "<closure>";
    case Kind::Comp: return "<comp>";
  }
  return "?";
}

Val id_fn(const Val& v) { return v; }
Val inl_fn(const Val& v) { return Val::inl(v); }
Val inr_fn(const Val& v) { return Val::inr(v); }

Val codiag(const Val& v) {
  if (!v.is(Val::Kind::Inl) && !v.is(Val::Kind::Inr)) throw std::logic_error("codiagonal on non-sum " + v.str());
  return v.child();
}

Val absurd(const Val& v) { throw std::logic_error("element of the empty carrier: " + v.str()); }

Fn sum_map(Fn f, Fn g) {
  return [f = std::move(f), g = std::move(g)](const Val& v) {
    if (v.is(Val::Kind::Inl)) return Val::inl(f(v.child()));
    if (v.is(Val::Kind::Inr)) return Val::inr(g(v.child()));
    throw std::logic_error("sum map on non-sum " + v.str());
  };
}

Fn cotuple(Fn f, Fn g) {
  return [f = std::move(f), g = std::move(g)](const Val& v) {
    if (v.is(Val::Kind::Inl)) return f(v.child());
    if (v.is(Val::Kind::Inr)) return g(v.child());
    throw std::logic_error("cotuple on non-sum " + v.str());
  };
}

Fn compose(Fn f, Fn g) {
  return [f = std::move(f), g = std::move(g)](const Val& v) { return f(g(v)); };
}

Obj::Obj() : node_(std::make_shared<const Node>(Node{Kind::Empty, {}, nullptr, nullptr})) {}

Obj Obj::finite(std::vector<Val> elems) {
  return Obj(std::make_shared<const Node>(Node{Kind::Finite, std::move(elems), nullptr, nullptr}));
}

Obj Obj::letter(const std::string& base, int size) {
  std::vector<Val> es;
  for (int i = 0; i < size; ++i) es.push_back(Val::atom(base + std::to_string(i)));
  return finite(std::move(es));
}

Obj Obj::unit() { return finite({Val()}); }
Obj Obj::rat() { return Obj(std::make_shared<const Node>(Node{Kind::Rat, {}, nullptr, nullptr})); }
Obj Obj::empty() { return Obj(); }

Obj Obj::sum(Obj a, Obj b) {
  return Obj(std::make_shared<const Node>(
      Node{Kind::Sum, {}, std::make_shared<const Obj>(std::move(a)), std::make_shared<const Obj>(std::move(b))}));
}

Obj Obj::prod(Obj a, Obj b) {
  return Obj(std::make_shared<const Node>(
      Node{Kind::Prod, {}, std::make_shared<const Obj>(std::move(a)), std::make_shared<const Obj>(std::move(b))}));
}

Obj Obj::guard(Obj y, Obj z) {
  return Obj(std::make_shared<const Node>(
      Node{Kind::Guard, {}, std::make_shared<const Obj>(std::move(y)), std::make_shared<const Obj>(std::move(z))}));
}

Obj Obj::fn() { return Obj(std::make_shared<const Node>(Node{Kind::Fn, {}, nullptr, nullptr})); }

bool Obj::finite_enum() const {
  switch (kind()) {
    case Kind::Finite:
    case Kind::Empty: return true;
    case Kind::Sum:
    case Kind::Prod: return left().finite_enum() && right().finite_enum();
    default: return false;
  }
}

std::string Obj::str() const {
  switch (kind()) {
    case Kind::Finite: {
      std::ostringstream os;
      os << "{";
      for (size_t i = 0; i < elems().size(); ++i) os << (i ? "," : "") << elems()[i].str();
      os << "}";
      return os.str();
    }
    case Kind::Rat: return "Q";
    case Kind::Empty: return "0";
    case Kind::Sum: return "(" + left().str() + "+" + right().str() + ")";
    case Kind::Prod: return "(" + left().str() + "*" + right().str() + ")";
    case Kind::Guard: return "(" + left().str() + "±" + right().str() + ")";
    case Kind::Fn: return "Fn";
  }
  return "?";
}

}  // namespace gfgcbv
