#include "gfgcbv/coherence.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <random>

namespace gfgcbv {

// ---- object expressions ----

ObjExpr o_letter(std::string name) { return std::make_shared<const ObjNode>(ObjNode{ObjNode::Letter, std::move(name), {}, {}}); }
ObjExpr o_unit() {
  static const ObjExpr u = std::make_shared<const ObjNode>(ObjNode{ObjNode::UnitI, "", {}, {}});
  return u;
}
ObjExpr o_tensor(ObjExpr a, ObjExpr b) {
  return std::make_shared<const ObjNode>(ObjNode{ObjNode::Tensor, "", std::move(a), std::move(b)});
}
ObjExpr o_guard(ObjExpr a, ObjExpr b) {
  return std::make_shared<const ObjNode>(ObjNode{ObjNode::Guard, "", std::move(a), std::move(b)});
}

bool obj_eq(const ObjExpr& x, const ObjExpr& y) {
  if (x == y) return true;
  if (x->kind != y->kind) return false;
  switch (x->kind) {
    case ObjNode::Letter: return x->name == y->name;
    case ObjNode::UnitI: return true;
    default: return obj_eq(x->a, y->a) && obj_eq(x->b, y->b);
  }
}

namespace {

bool atomic(const ObjExpr& e) { return e->kind == ObjNode::Letter || e->kind == ObjNode::UnitI; }

std::string child_str(const ObjExpr& e) { return atomic(e) ? obj_str(e) : "(" + obj_str(e) + ")"; }

void collect_letters(const ObjExpr& e, std::vector<std::string>& out) {
  if (e->kind == ObjNode::Letter) out.push_back(e->name);
  if (e->a) collect_letters(e->a, out);
  if (e->b) collect_letters(e->b, out);
}

}  // namespace

std::string obj_str(const ObjExpr& e) {
  switch (e->kind) {
    case ObjNode::Letter: return e->name;
    case ObjNode::UnitI: return "I";
    case ObjNode::Tensor: return child_str(e->a) + " ⊗ " + child_str(e->b);
    case ObjNode::Guard: return child_str(e->a) + " ± " + child_str(e->b);
  }
  return "?";
}

std::vector<std::string> obj_letters(const ObjExpr& e) {
  std::vector<std::string> out;
  collect_letters(e, out);
  return out;
}

bool letters_unique(const ObjExpr& e) {
  auto ls = obj_letters(e);
  std::sort(ls.begin(), ls.end());
  return std::adjacent_find(ls.begin(), ls.end()) == ls.end();
}

int obj_depth(const ObjExpr& e) {
  if (atomic(e)) return 1;
  return 1 + std::max(obj_depth(e->a), obj_depth(e->b));
}

bool has_guard(const ObjExpr& e) {
  if (e->kind == ObjNode::Guard) return true;
  if (atomic(e)) return false;
  return has_guard(e->a) || has_guard(e->b);
}

// ---- shared tokenizer for object and morphism syntax ----

namespace {

struct Tok {
  enum Kind { Ident, LParen, RParen, Comma, Tensor, Guard, End } kind;
  std::string text;
  std::size_t pos;
};

std::vector<Tok> tokenize(const std::string& s) {
  std::vector<Tok> out;
  std::size_t i = 0;
  while (i < s.size()) {
    unsigned char c = s[i];
    if (std::isspace(c)) { ++i; continue; }
    if (s.compare(i, 3, "(x)") == 0) { out.push_back({Tok::Tensor, "⊗", i}); i += 3; continue; }
    if (s.compare(i, 3, "(+)") == 0) { out.push_back({Tok::Guard, "±", i}); i += 3; continue; }
    if (s.compare(i, 3, "⊗") == 0) { out.push_back({Tok::Tensor, "⊗", i}); i += 3; continue; }
    if (s.compare(i, 2, "±") == 0) { out.push_back({Tok::Guard, "±", i}); i += 2; continue; }
    if (c == '(') { out.push_back({Tok::LParen, "(", i++}); continue; }
    if (c == ')') { out.push_back({Tok::RParen, ")", i++}); continue; }
    if (c == ',') { out.push_back({Tok::Comma, ",", i++}); continue; }
    if (std::isalpha(c) || c == '_') {
      std::size_t j = i;
      while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_')) ++j;
      out.push_back({Tok::Ident, s.substr(i, j - i), i});
      i = j;
      continue;
    }
    throw ExprParseError("unexpected character '" + std::string(1, static_cast<char>(c)) + "' at offset " +
                         std::to_string(i));
  }
  out.push_back({Tok::End, "", s.size()});
  return out;
}

class ExprParser {
 public:
  explicit ExprParser(const std::string& s) : toks_(tokenize(s)) {}

  ObjExpr obj() {
    ObjExpr e = guard_level();
    while (peek().kind == Tok::Tensor) {
      ++i_;
      e = o_tensor(e, guard_level());
    }
    return e;
  }

  MorExpr mor() {
    Tok t = expect(Tok::Ident, "morphism name");
    expect(Tok::LParen, "'('");
    const std::string& n = t.text;
    MorExpr out;
    auto objs = [&](std::size_t k) {
      std::vector<ObjExpr> os;
      for (std::size_t j = 0; j < k; ++j) {
        if (j) expect(Tok::Comma, "','");
        os.push_back(obj());
      }
      return os;
    };
    auto two = [&](MorExpr (*mk)(MorExpr, MorExpr)) {
      MorExpr f = mor();
      expect(Tok::Comma, "','");
      return mk(f, mor());
    };
    if (n == "id") out = m_id(objs(1)[0]);
    else if (n == "eta") out = m_eta(objs(1)[0]);
    else if (n == "rho") out = m_rho(objs(1)[0]);
    else if (n == "rhoinv") out = m_rho_inv(objs(1)[0]);
    else if (n == "gamma") { auto o = objs(2); out = m_gamma(o[0], o[1]); }
    else if (n == "xi") { auto o = objs(3); out = m_xi(o[0], o[1], o[2]); }
    else if (n == "upsilon") { auto o = objs(3); out = m_upsilon(o[0], o[1], o[2]); }
    else if (n == "zeta") { auto o = objs(3); out = m_zeta(o[0], o[1], o[2]); }
    else if (n == "assoc") { auto o = objs(3); out = m_assoc(o[0], o[1], o[2]); }
    else if (n == "associnv") { auto o = objs(3); out = m_assoc_inv(o[0], o[1], o[2]); }
    else if (n == "chi") { auto o = objs(4); out = m_chi(o[0], o[1], o[2], o[3]); }
    else if (n == "comp") out = two(m_comp);
    else if (n == "tensor") out = two(m_tensor);
    else if (n == "guardpair") out = two(m_guard);
    else throw ExprParseError("unknown morphism '" + n + "' at offset " + std::to_string(t.pos));
    expect(Tok::RParen, "')'");
    return out;
  }

  void finish() {
    if (peek().kind != Tok::End) throw ExprParseError("trailing input at offset " + std::to_string(peek().pos));
  }

 private:
  const Tok& peek() const { return toks_[i_]; }
  Tok expect(Tok::Kind k, const char* what) {
    if (peek().kind != k) throw ExprParseError(std::string("expected ") + what + " at offset " + std::to_string(peek().pos));
    return toks_[i_++];
  }
  ObjExpr guard_level() {
    ObjExpr e = atom();
    while (peek().kind == Tok::Guard) {
      ++i_;
      e = o_guard(e, atom());
    }
    return e;
  }
  ObjExpr atom() {
    if (peek().kind == Tok::LParen) {
      ++i_;
      ObjExpr e = obj();
      expect(Tok::RParen, "')'");
      return e;
    }
    Tok t = expect(Tok::Ident, "object expression");
    return t.text == "I" ? o_unit() : o_letter(t.text);
  }

  std::vector<Tok> toks_;
  std::size_t i_ = 0;
};

}  // namespace

ObjExpr parse_obj(const std::string& text) {
  ExprParser p(text);
  ObjExpr e = p.obj();
  p.finish();
  return e;
}

MorExpr parse_mor(const std::string& text) {
  ExprParser p(text);
  MorExpr m = p.mor();
  p.finish();
  return m;
}

// ---- normal forms ----

ObjExpr nf1(const ObjExpr& e) {
  switch (e->kind) {
    case ObjNode::Letter:
    case ObjNode::UnitI: return e;
    case ObjNode::Tensor: return o_tensor(nf1(e->a), nf1(e->b));
    case ObjNode::Guard: return nf1(e->a);
  }
  return e;
}

ObjExpr nf2(const ObjExpr& e) {
  switch (e->kind) {
    case ObjNode::Letter:
    case ObjNode::UnitI: return o_unit();
    case ObjNode::Tensor: return o_tensor(nf2(e->a), nf2(e->b));
    case ObjNode::Guard: return o_tensor(nf2(e->a), o_tensor(nf1(e->b), nf2(e->b)));
  }
  return e;
}

ObjExpr nf(const ObjExpr& e) { return o_guard(nf1(e), nf2(e)); }

bool is_normal(const ObjExpr& e) { return e->kind == ObjNode::Guard && !has_guard(e->a) && !has_guard(e->b); }

// ---- morphism expressions ----

namespace {

MorExpr prim(MorNode::Kind k, std::vector<ObjExpr> objs) {
  return std::make_shared<const MorNode>(MorNode{k, std::move(objs), {}, {}});
}
MorExpr node(MorNode::Kind k, MorExpr a, MorExpr b) {
  return std::make_shared<const MorNode>(MorNode{k, {}, std::move(a), std::move(b)});
}

}  // namespace

MorExpr m_id(ObjExpr a) { return prim(MorNode::Id, {std::move(a)}); }
MorExpr m_eta(ObjExpr a) { return prim(MorNode::Eta, {std::move(a)}); }
MorExpr m_xi(ObjExpr a, ObjExpr b, ObjExpr c) { return prim(MorNode::Xi, {a, b, c}); }
MorExpr m_upsilon(ObjExpr a, ObjExpr b, ObjExpr c) { return prim(MorNode::Upsilon, {a, b, c}); }
MorExpr m_zeta(ObjExpr a, ObjExpr b, ObjExpr c) { return prim(MorNode::Zeta, {a, b, c}); }
MorExpr m_chi(ObjExpr a, ObjExpr b, ObjExpr c, ObjExpr d) { return prim(MorNode::Chi, {a, b, c, d}); }
MorExpr m_assoc(ObjExpr a, ObjExpr b, ObjExpr c) { return prim(MorNode::Assoc, {a, b, c}); }
MorExpr m_assoc_inv(ObjExpr a, ObjExpr b, ObjExpr c) { return prim(MorNode::AssocInv, {a, b, c}); }
MorExpr m_rho(ObjExpr a) { return prim(MorNode::Unitor, {std::move(a)}); }
MorExpr m_rho_inv(ObjExpr a) { return prim(MorNode::UnitorInv, {std::move(a)}); }
MorExpr m_gamma(ObjExpr a, ObjExpr b) { return prim(MorNode::Braid, {a, b}); }
MorExpr m_comp(MorExpr f, MorExpr g) { return node(MorNode::Compose, std::move(f), std::move(g)); }
MorExpr m_tensor(MorExpr f, MorExpr g) { return node(MorNode::TensorPair, std::move(f), std::move(g)); }
MorExpr m_guard(MorExpr f, MorExpr g) { return node(MorNode::GuardPair, std::move(f), std::move(g)); }

MorExpr m_chain(std::vector<MorExpr> fs) {
  if (fs.empty()) throw std::invalid_argument("empty chain");
  MorExpr out = fs.back();
  for (auto it = fs.rbegin() + 1; it != fs.rend(); ++it) out = m_comp(*it, out);
  return out;
}

std::string mor_str(const MorExpr& m) {
  static const char* const names[] = {"id",  "eta",      "xi",  "upsilon", "zeta",  "chi",    "assoc",
                                      "associnv", "rho", "rhoinv", "gamma", "comp", "tensor", "guardpair"};
  std::string out = names[m->kind];
  out += "(";
  if (m->a) {
    out += mor_str(m->a) + ", " + mor_str(m->b);
  } else {
    for (std::size_t i = 0; i < m->objs.size(); ++i) out += (i ? ", " : "") + obj_str(m->objs[i]);
  }
  return out + ")";
}

std::pair<ObjExpr, ObjExpr> infer_mor_type(const MorExpr& m) {
  const auto& o = m->objs;
  switch (m->kind) {
    case MorNode::Id: return {o[0], o[0]};
    case MorNode::Eta: return {o[0], o_guard(o[0], o_unit())};
    case MorNode::Xi: return {o_guard(o_guard(o[0], o[1]), o[2]), o_guard(o[0], o_tensor(o[1], o[2]))};
    case MorNode::Upsilon: return {o_guard(o[0], o_tensor(o[1], o[2])), o_guard(o_tensor(o[0], o[1]), o[2])};
    case MorNode::Zeta: return {o_guard(o[0], o_guard(o[1], o[2])), o_guard(o[0], o_tensor(o[1], o[2]))};
    case MorNode::Chi:
      return {o_tensor(o_guard(o[0], o[1]), o_guard(o[2], o[3])),
              o_guard(o_tensor(o[0], o[2]), o_tensor(o[1], o[3]))};
    case MorNode::Assoc: return {o_tensor(o[0], o_tensor(o[1], o[2])), o_tensor(o_tensor(o[0], o[1]), o[2])};
    case MorNode::AssocInv: return {o_tensor(o_tensor(o[0], o[1]), o[2]), o_tensor(o[0], o_tensor(o[1], o[2]))};
    case MorNode::Unitor: return {o_tensor(o[0], o_unit()), o[0]};
    case MorNode::UnitorInv: return {o[0], o_tensor(o[0], o_unit())};
    case MorNode::Braid: return {o_tensor(o[0], o[1]), o_tensor(o[1], o[0])};
    case MorNode::Compose: {
      auto [fd, fc] = infer_mor_type(m->a);
      auto [gd, gc] = infer_mor_type(m->b);
      if (!obj_eq(gc, fd))
        throw MorTypeError("codomain " + obj_str(gc) + " does not match domain " + obj_str(fd), mor_str(m));
      return {gd, fc};
    }
    case MorNode::TensorPair: {
      auto [fd, fc] = infer_mor_type(m->a);
      auto [gd, gc] = infer_mor_type(m->b);
      return {o_tensor(fd, gd), o_tensor(fc, gc)};
    }
    case MorNode::GuardPair: {
      auto [fd, fc] = infer_mor_type(m->a);
      auto [gd, gc] = infer_mor_type(m->b);
      return {o_guard(fd, gd), o_guard(fc, gc)};
    }
  }
  throw MorTypeError("unknown morphism kind", "?");
}

bool is_iso_expr(const MorExpr& m) {
  switch (m->kind) {
    case MorNode::Eta:
    case MorNode::Xi:
    case MorNode::Upsilon:
    case MorNode::Zeta:
    case MorNode::Chi: return false;
    case MorNode::Compose:
    case MorNode::TensorPair:
    case MorNode::GuardPair: return is_iso_expr(m->a) && is_iso_expr(m->b);
    default: return true;
  }
}

MorExpr inverse(const MorExpr& m) {
  const auto& o = m->objs;
  switch (m->kind) {
    case MorNode::Id: return m;
    case MorNode::Assoc: return m_assoc_inv(o[0], o[1], o[2]);
    case MorNode::AssocInv: return m_assoc(o[0], o[1], o[2]);
    case MorNode::Unitor: return m_rho_inv(o[0]);
    case MorNode::UnitorInv: return m_rho(o[0]);
    case MorNode::Braid: return m_gamma(o[1], o[0]);
    case MorNode::Compose: return m_comp(inverse(m->b), inverse(m->a));
    case MorNode::TensorPair: return m_tensor(inverse(m->a), inverse(m->b));
    case MorNode::GuardPair: return m_guard(inverse(m->a), inverse(m->b));
    default: throw MorTypeError("not an isomorphism expression", mor_str(m));
  }
}

namespace {

bool is_id(const MorExpr& m) { return m->kind == MorNode::Id; }

/// f ∘ g, dropping identities.
MorExpr then(const MorExpr& g, const MorExpr& f) {
  if (is_id(f)) return g;
  if (is_id(g)) return f;
  return m_comp(f, g);
}

MorExpr tensor_s(const MorExpr& f, const MorExpr& g, const ObjExpr& fd, const ObjExpr& gd) {
  if (is_id(f) && is_id(g)) return m_id(o_tensor(fd, gd));
  return m_tensor(f, g);
}

/// Right-nested tensor of the letters, or I when there are none.
ObjExpr canon_of(std::vector<std::string> ls) {
  std::sort(ls.begin(), ls.end());
  if (ls.empty()) return o_unit();
  ObjExpr out = o_letter(ls.back());
  for (auto it = ls.rbegin() + 1; it != ls.rend(); ++it) out = o_tensor(o_letter(*it), out);
  return out;
}

const std::string& head_letter(const ObjExpr& c) { return c->kind == ObjNode::Letter ? c->name : c->a->name; }

struct Step {
  MorExpr m;
  ObjExpr cod;
};

// p, q are canonical (I, a letter, or letter ⊗ canonical).
Step merge(const ObjExpr& p, const ObjExpr& q) {
  if (p->kind == ObjNode::UnitI) return {then(m_gamma(p, q), m_rho(q)), q};
  if (q->kind == ObjNode::UnitI) return {m_rho(p), p};
  if (p->kind == ObjNode::Letter) {
    if (p->name < head_letter(q)) return {m_id(o_tensor(p, q)), o_tensor(p, q)};
    if (q->kind == ObjNode::Letter) return {m_gamma(p, q), o_tensor(q, p)};
    const ObjExpr& q1 = q->a;
    const ObjExpr& r = q->b;
    Step rest = merge(p, r);
    MorExpr m = m_chain({tensor_s(m_id(q1), rest.m, q1, o_tensor(p, r)), m_assoc_inv(q1, p, r),
                         m_tensor(m_gamma(p, q1), m_id(r)), m_assoc(p, q1, r)});
    return {m, o_tensor(q1, rest.cod)};
  }
  const ObjExpr& p1 = p->a;
  const ObjExpr& pr = p->b;
  Step inner = merge(pr, q);
  Step outer = merge(p1, inner.cod);
  MorExpr m = then(then(m_assoc_inv(p1, pr, q), tensor_s(m_id(p1), inner.m, p1, o_tensor(pr, q))), outer.m);
  return {m, outer.cod};
}

Step to_canon(const ObjExpr& x) {
  if (atomic(x)) return {m_id(x), x};
  if (x->kind != ObjNode::Tensor) throw MorTypeError("canonical isomorphism needs a ±-free expression", obj_str(x));
  Step l = to_canon(x->a);
  Step r = to_canon(x->b);
  Step m = merge(l.cod, r.cod);
  return {then(tensor_s(l.m, r.m, x->a, x->b), m.m), m.cod};
}

}  // namespace

MorExpr canon_iso(const ObjExpr& x, const ObjExpr& y) {
  if (x->kind == ObjNode::Guard && y->kind == ObjNode::Guard) {
    MorExpr l = canon_iso(x->a, y->a);
    MorExpr r = canon_iso(x->b, y->b);
    if (is_id(l) && is_id(r)) return m_id(x);
    return m_guard(l, r);
  }
  if (has_guard(x) || has_guard(y))
    throw MorTypeError("no canonical isomorphism between " + obj_str(x) + " and " + obj_str(y), "canon_iso");
  auto lx = obj_letters(x), ly = obj_letters(y);
  std::sort(lx.begin(), lx.end());
  std::sort(ly.begin(), ly.end());
  if (lx != ly) throw MorTypeError("letters differ between " + obj_str(x) + " and " + obj_str(y), "canon_iso");
  if (obj_eq(x, y)) return m_id(x);
  return then(to_canon(x).m, inverse(to_canon(y).m));
}

MorExpr nm(const ObjExpr& e) {
  switch (e->kind) {
    case ObjNode::Letter:
    case ObjNode::UnitI: return m_eta(e);
    case ObjNode::Tensor:
      return m_comp(m_chi(nf1(e->a), nf2(e->a), nf1(e->b), nf2(e->b)), m_tensor(nm(e->a), nm(e->b)));
    case ObjNode::Guard: {
      ObjExpr e1 = nf1(e->a), e2 = nf2(e->a), f1 = nf1(e->b), f2 = nf2(e->b);
      return m_chain({m_xi(e1, e2, o_tensor(f1, f2)), m_zeta(o_guard(e1, e2), f1, f2), m_guard(nm(e->a), nm(e->b))});
    }
  }
  throw std::logic_error("unknown object kind");
}

MorExpr identity_expansion(const ObjExpr& a, const ObjExpr& b) {
  return m_chain({m_guard(m_rho(a), m_id(b)), m_upsilon(a, o_unit(), b), m_guard(m_id(a), m_gamma(b, o_unit())),
                  m_guard(m_id(a), m_rho_inv(b))});
}

// ---- finite models ----

Obj eval_obj(const ObjExpr& e, const Assignment& as) {
  switch (e->kind) {
    case ObjNode::Letter: {
      auto it = as.find(e->name);
      if (it == as.end()) throw std::invalid_argument("unassigned letter " + e->name);
      return it->second;
    }
    case ObjNode::UnitI: return Obj::empty();
    case ObjNode::Tensor: return Obj::sum(eval_obj(e->a, as), eval_obj(e->b, as));
    case ObjNode::Guard: return Obj::guard(eval_obj(e->a, as), eval_obj(e->b, as));
  }
  throw std::logic_error("unknown object kind");
}

Fn eval_mor(const MorExpr& m, const Gpm& inst) {
  const Gpm* g = &inst;
  switch (m->kind) {
    case MorNode::Id: return id_fn;
    case MorNode::Eta: return [g](const Val& v) { return g->eta(v); };
    case MorNode::Xi: return [g](const Val& v) { return g->xi(v); };
    case MorNode::Upsilon: return [g](const Val& v) { return g->upsilon(v); };
    case MorNode::Zeta: return [g](const Val& v) { return g->zeta(v); };
    case MorNode::Chi: return [g](const Val& v) { return g->chi(v); };
    case MorNode::Assoc:
      return [](const Val& v) {
        if (v.is(Val::Kind::Inl)) return Val::inl(Val::inl(v.child()));
        const Val& w = v.child();
        return w.is(Val::Kind::Inl) ? Val::inl(Val::inr(w.child())) : Val::inr(w.child());
      };
    case MorNode::AssocInv:
      return [](const Val& v) {
        if (v.is(Val::Kind::Inr)) return Val::inr(Val::inr(v.child()));
        const Val& w = v.child();
        return w.is(Val::Kind::Inl) ? Val::inl(w.child()) : Val::inr(Val::inl(w.child()));
      };
    case MorNode::Unitor:
      return [](const Val& v) {
        if (!v.is(Val::Kind::Inl)) throw std::logic_error("rho applied to an element of I");
        return v.child();
      };
    case MorNode::UnitorInv: return inl_fn;
    case MorNode::Braid:
      return [](const Val& v) { return v.is(Val::Kind::Inl) ? Val::inr(v.child()) : Val::inl(v.child()); };
    case MorNode::Compose: return compose(eval_mor(m->a, inst), eval_mor(m->b, inst));
    case MorNode::TensorPair: return sum_map(eval_mor(m->a, inst), eval_mor(m->b, inst));
    case MorNode::GuardPair: {
      Fn f = eval_mor(m->a, inst), h = eval_mor(m->b, inst);
      return [g, f, h](const Val& v) { return g->map(f, h, v); };
    }
  }
  throw std::logic_error("unknown morphism kind");
}

CoherenceVerdict coherence_check(const MorExpr& f, const MorExpr& g, const Gpm& inst, const CoherenceConfig& cfg) {
  CoherenceVerdict out;
  ObjExpr dom, cod;
  try {
    auto [fd, fc] = infer_mor_type(f);
    auto [gd, gc] = infer_mor_type(g);
    if (!obj_eq(fd, gd) || !obj_eq(fc, gc)) {
      out.equal = false;
      out.error = "endpoints differ: " + obj_str(fd) + " -> " + obj_str(fc) + " vs " + obj_str(gd) + " -> " + obj_str(gc);
      return out;
    }
    dom = fd;
    cod = fc;
  } catch (const MorTypeError& e) {
    out.equal = false;
    out.error = e.what();
    return out;
  }
  if (cfg.check_shape) {
    std::string bad;
    if (!is_normal(cod)) bad = "codomain " + obj_str(cod) + " is not normal";
    else if (!letters_unique(dom)) bad = "repeated letter in " + obj_str(dom);
    else if (!letters_unique(cod)) bad = "repeated letter in " + obj_str(cod);
    if (!bad.empty()) {
      out.equal = false;
      out.error = "shape violation: " + bad;
      return out;
    }
  }
  Fn ff = eval_mor(f, inst), gg = eval_mor(g, inst);
  auto letters = obj_letters(dom);
  for (int size : cfg.carrier_sizes) {
    Assignment as;
    for (const auto& l : letters) as[l] = Obj::letter(l, size);
    for (const auto& l : obj_letters(cod)) as.emplace(l, Obj::letter(l, size));
    for (const Val& x : enumerate(eval_obj(dom, as), inst, cfg.enumc)) {
      ++out.points;
      Val a = ff(x), b = gg(x);
      if (!(a == b)) {
        out.equal = false;
        out.witness = Json{{"carrier_size", size},
                           {"input", val_json(x, &inst)},
                           {"f", val_json(a, &inst)},
                           {"g", val_json(b, &inst)}};
        return out;
      }
    }
  }
  return out;
}

// ---- generators ----

namespace {

using Rng = std::mt19937_64;

int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

ObjExpr gen_tree(Rng& rng, const std::vector<std::string>& ls, int depth) {
  if (ls.empty()) {
    if (depth >= 2 && uniform(rng, 0, 3) == 0) return o_tensor(o_unit(), o_unit());
    return o_unit();
  }
  if (ls.size() == 1) {
    ObjExpr l = o_letter(ls[0]);
    if (depth >= 2 && uniform(rng, 0, 3) == 0) {
      bool tensor = uniform(rng, 0, 1);
      bool left = uniform(rng, 0, 1);
      ObjExpr a = left ? l : o_unit(), b = left ? o_unit() : l;
      return tensor ? o_tensor(a, b) : o_guard(a, b);
    }
    return l;
  }
  // Leave room for the larger half.
  std::size_t cut = static_cast<std::size_t>(uniform(rng, 1, static_cast<int>(ls.size()) - 1));
  std::vector<std::string> lhs(ls.begin(), ls.begin() + cut), rhs(ls.begin() + cut, ls.end());
  ObjExpr a = gen_tree(rng, lhs, depth - 1), b = gen_tree(rng, rhs, depth - 1);
  return uniform(rng, 0, 1) ? o_tensor(a, b) : o_guard(a, b);
}

std::vector<std::string> pick_letters(Rng& rng, int max_letters) {
  static const std::vector<std::string> pool{"A", "B", "C", "D", "E", "F", "G", "H"};
  int k = uniform(rng, 1, std::min<int>(max_letters, static_cast<int>(pool.size())));
  std::vector<std::string> ls(pool.begin(), pool.end());
  std::shuffle(ls.begin(), ls.end(), rng);
  ls.resize(static_cast<std::size_t>(k));
  return ls;
}

struct Cand {
  Step step;
  MorNode::Kind rule;
};

/// All single rewrites E → E' applicable at some position.
void rewrites(const ObjExpr& e, int depth_budget, std::vector<Cand>& out) {
  auto push = [&](MorExpr m, ObjExpr cod) {
    if (obj_depth(cod) > depth_budget) return;
    MorNode::Kind k = m->kind;
    out.push_back({{std::move(m), std::move(cod)}, k});
  };
  auto lift = [&](const Cand& c, MorExpr m, ObjExpr cod) {
    if (obj_depth(cod) <= depth_budget) out.push_back({{std::move(m), std::move(cod)}, c.rule});
  };
  push(m_eta(e), o_guard(e, o_unit()));
  if (e->kind == ObjNode::Tensor) {
    const ObjExpr &a = e->a, &b = e->b;
    push(m_gamma(a, b), o_tensor(b, a));
    if (b->kind == ObjNode::UnitI) push(m_rho(a), a);
    if (b->kind == ObjNode::Tensor) push(m_assoc(a, b->a, b->b), o_tensor(o_tensor(a, b->a), b->b));
    if (a->kind == ObjNode::Tensor) push(m_assoc_inv(a->a, a->b, b), o_tensor(a->a, o_tensor(a->b, b)));
    if (a->kind == ObjNode::Guard && b->kind == ObjNode::Guard)
      push(m_chi(a->a, a->b, b->a, b->b), o_guard(o_tensor(a->a, b->a), o_tensor(a->b, b->b)));
  }
  if (e->kind == ObjNode::Guard) {
    const ObjExpr &a = e->a, &b = e->b;
    if (a->kind == ObjNode::Guard) push(m_xi(a->a, a->b, b), o_guard(a->a, o_tensor(a->b, b)));
    if (b->kind == ObjNode::Tensor) push(m_upsilon(a, b->a, b->b), o_guard(o_tensor(a, b->a), b->b));
    if (b->kind == ObjNode::Guard) push(m_zeta(a, b->a, b->b), o_guard(a, o_tensor(b->a, b->b)));
  }
  if (!atomic(e)) {
    bool tensor = e->kind == ObjNode::Tensor;
    auto mk_obj = tensor ? o_tensor : o_guard;
    auto mk_mor = tensor ? m_tensor : m_guard;
    std::vector<Cand> sub;
    rewrites(e->a, depth_budget - 1, sub);
    for (auto& c : sub) lift(c, mk_mor(c.step.m, m_id(e->b)), mk_obj(c.step.cod, e->b));
    sub.clear();
    rewrites(e->b, depth_budget - 1, sub);
    for (auto& c : sub) lift(c, mk_mor(m_id(e->a), c.step.m), mk_obj(e->a, c.step.cod));
  }
}

Step random_route(Rng& rng, const ObjExpr& start, int steps, int max_depth) {
  Step cur{m_id(start), start};
  for (int i = 0; i < steps; ++i) {
    std::vector<Cand> cands;
    rewrites(cur.cod, max_depth, cands);
    if (cands.empty()) break;
    // Pick the rule first so that η, which applies everywhere, does not dominate.
    std::vector<MorNode::Kind> rules;
    for (const auto& c : cands)
      if (std::find(rules.begin(), rules.end(), c.rule) == rules.end()) rules.push_back(c.rule);
    MorNode::Kind rule = rules[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(rules.size()) - 1))];
    std::vector<const Step*> of_rule;
    for (const auto& c : cands)
      if (c.rule == rule) of_rule.push_back(&c.step);
    const Step& s = *of_rule[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(of_rule.size()) - 1))];
    cur = {then(cur.m, s.m), s.cod};
  }
  return cur;
}

ObjExpr random_arrangement(Rng& rng, std::vector<std::string> ls) {
  std::shuffle(ls.begin(), ls.end(), rng);
  if (ls.empty()) return o_unit();
  ObjExpr out = o_letter(ls.back());
  for (auto it = ls.rbegin() + 1; it != ls.rend(); ++it) out = o_tensor(o_letter(*it), out);
  if (uniform(rng, 0, 4) == 0) out = o_tensor(out, o_unit());
  return out;
}

/// From a normal X₁ ± X₂ to the normal target, moving right letters left with υ.
MorExpr to_target(const ObjExpr& n, const ObjExpr& target) {
  auto left = obj_letters(target->a);
  ObjExpr cur = n;
  MorExpr m = m_id(n);
  for (;;) {
    auto rs = obj_letters(cur->b);
    auto it = std::find_if(rs.begin(), rs.end(),
                           [&](const std::string& l) { return std::find(left.begin(), left.end(), l) != left.end(); });
    if (it == rs.end()) break;
    std::string b = *it;
    rs.erase(it);
    ObjExpr rest = canon_of(rs);
    ObjExpr split = o_tensor(o_letter(b), rest);
    m = then(m, canon_iso(cur, o_guard(cur->a, split)));
    m = then(m, m_upsilon(cur->a, o_letter(b), rest));
    cur = o_guard(o_tensor(cur->a, o_letter(b)), rest);
  }
  return then(m, canon_iso(cur, target));
}

}  // namespace

ObjExpr gen_obj(std::uint64_t seed, int max_depth, int max_letters) {
  Rng rng(seed);
  return gen_tree(rng, pick_letters(rng, max_letters), max_depth);
}

std::pair<MorExpr, MorExpr> gen_mor(std::uint64_t seed, const GenConfig& cfg) {
  Rng rng(seed ^ 0x9e3779b97f4a7c15ULL);
  for (;;) {
    ObjExpr e1 = gen_tree(rng, pick_letters(rng, cfg.max_letters), std::max(2, cfg.max_depth - 2));
    Step rf = random_route(rng, e1, uniform(rng, 0, cfg.max_steps), cfg.max_depth);
    Step rg = random_route(rng, e1, uniform(rng, 0, cfg.max_steps), cfg.max_depth);
    ObjExpr nff = nf(rf.cod), nfg = nf(rg.cod);
    std::vector<std::string> left = obj_letters(nff->a), all = obj_letters(e1);
    for (const auto& l : obj_letters(nfg->a))
      if (std::find(left.begin(), left.end(), l) == left.end()) left.push_back(l);
    std::vector<std::string> right;
    for (const auto& l : all)
      if (std::find(left.begin(), left.end(), l) == left.end()) right.push_back(l);
    ObjExpr target = o_guard(random_arrangement(rng, left), random_arrangement(rng, right));
    MorExpr f = then(then(rf.m, nm(rf.cod)), to_target(nff, target));
    MorExpr g = then(then(rg.m, nm(rg.cod)), to_target(nfg, target));
    if (mor_str(f) != mor_str(g) || uniform(rng, 0, 9) == 0) return {f, g};
  }
}

std::map<std::string, int> primitive_counts(const MorExpr& m) {
  std::map<std::string, int> out{{"eta", 0}, {"xi", 0}, {"upsilon", 0}, {"zeta", 0}, {"chi", 0}};
  std::function<void(const MorExpr&)> walk = [&](const MorExpr& x) {
    switch (x->kind) {
      case MorNode::Eta: ++out["eta"]; break;
      case MorNode::Xi: ++out["xi"]; break;
      case MorNode::Upsilon: ++out["upsilon"]; break;
      case MorNode::Zeta: ++out["zeta"]; break;
      case MorNode::Chi: ++out["chi"]; break;
      default: break;
    }
    if (x->a) walk(x->a);
    if (x->b) walk(x->b);
  };
  walk(m);
  return out;
}

}  // namespace gfgcbv
