#include "gfgcbv/laws.hpp"

#include <functional>

namespace gfgcbv {

namespace {

ObjExpr L(const char* n) { return o_letter(n); }
ObjExpr T(ObjExpr a, ObjExpr b) { return o_tensor(std::move(a), std::move(b)); }
ObjExpr G(ObjExpr a, ObjExpr b) { return o_guard(std::move(a), std::move(b)); }

/// id ± (canonical iso between two ±-free expressions)
MorExpr under(const ObjExpr& a, const ObjExpr& x, const ObjExpr& y) { return m_guard(m_id(a), canon_iso(x, y)); }

}  // namespace

std::vector<Diagram> gpm_diagrams() {
  auto A = L("A"), B = L("B"), C = L("C"), D = L("D"), E = L("E"), F = L("F"), I = o_unit();
  std::vector<Diagram> ds;

  ds.push_back({"eta-xi-left", m_comp(m_xi(A, I, B), m_guard(m_eta(A), m_id(B))), under(A, B, T(I, B))});
  ds.push_back({"eta-xi-right", m_comp(m_xi(A, B, I), m_eta(G(A, B))), m_guard(m_id(A), m_rho_inv(B))});
  ds.push_back({"xi-assoc", m_comp(m_xi(A, B, T(C, D)), m_xi(G(A, B), C, D)),
                m_chain({m_guard(m_id(A), m_assoc_inv(B, C, D)), m_xi(A, T(B, C), D), m_guard(m_xi(A, B, C), m_id(D))})});
  ds.push_back({"upsilon-unit", m_comp(m_upsilon(A, I, B), under(A, B, T(I, B))), m_guard(m_rho_inv(A), m_id(B))});
  ds.push_back({"upsilon-assoc",
                m_chain({m_guard(m_assoc_inv(A, B, C), m_id(D)), m_upsilon(T(A, B), C, D), m_upsilon(A, B, T(C, D))}),
                m_comp(m_upsilon(A, T(B, C), D), m_guard(m_id(A), m_assoc(B, C, D)))});
  ds.push_back({"eta-chi", m_comp(m_chi(A, I, B, I), m_tensor(m_eta(A), m_eta(B))),
                m_comp(m_guard(m_id(T(A, B)), m_rho_inv(I)), m_eta(T(A, B)))});
  ds.push_back({"chi-braid", m_comp(m_chi(C, D, A, B), m_gamma(G(A, B), G(C, D))),
                m_comp(m_guard(m_gamma(A, C), m_gamma(B, D)), m_chi(A, B, C, D))});
  ds.push_back({"chi-assoc",
                m_chain({m_guard(m_assoc(A, C, E), m_assoc(B, D, F)), m_chi(A, B, T(C, E), T(D, F)),
                         m_tensor(m_id(G(A, B)), m_chi(C, D, E, F))}),
                m_chain({m_chi(T(A, C), T(B, D), E, F), m_tensor(m_chi(A, B, C, D), m_id(G(E, F))),
                         m_assoc(G(A, B), G(C, D), G(E, F))})});
  ds.push_back({"chi-unit", m_comp(m_chi(A, B, I, I), m_tensor(m_id(G(A, B)), m_eta(I))),
                m_comp(m_guard(m_rho_inv(A), m_rho_inv(B)), m_rho(G(A, B)))});
  ds.push_back({"zeta-unit", m_comp(m_zeta(A, B, I), m_guard(m_id(A), m_eta(B))), m_guard(m_id(A), m_rho_inv(B))});
  ds.push_back({"zeta-chi",
                m_chain({under(A, T(T(B, D), T(C, E)), T(B, T(C, T(D, E)))), m_zeta(A, T(B, D), T(C, E)),
                         m_guard(m_id(A), m_chi(B, C, D, E)), m_zeta(A, G(B, C), G(D, E))}),
                m_chain({m_zeta(A, B, T(C, T(D, E))), m_guard(m_id(A), m_xi(B, C, T(D, E))),
                         m_guard(m_id(A), m_zeta(G(B, C), D, E))})});
  ds.push_back({"xi-zeta-chi",
                m_chain({under(A, T(T(B, D), T(C, E)), T(T(B, C), T(D, E))), m_zeta(A, T(B, D), T(C, E)),
                         m_guard(m_id(A), m_chi(B, C, D, E)), m_xi(A, G(B, C), G(D, E))}),
                m_chain({m_xi(A, T(B, C), T(D, E)), m_zeta(G(A, T(B, C)), D, E), m_guard(m_zeta(A, B, C), m_id(G(D, E)))})});
  ds.push_back({"xi-chi",
                m_chain({m_xi(T(A, D), T(B, E), T(C, F)), m_guard(m_chi(A, B, D, E), m_id(T(C, F))),
                         m_chi(G(A, B), C, G(D, E), F)}),
                m_chain({under(T(A, D), T(T(B, C), T(E, F)), T(T(B, E), T(C, F))), m_chi(A, T(B, C), D, T(E, F)),
                         m_tensor(m_xi(A, B, C), m_xi(D, E, F))})});
  ds.push_back({"zeta-chi-tensor",
                m_chain({m_zeta(T(A, D), T(B, E), T(C, F)), m_guard(m_id(T(A, D)), m_chi(B, C, E, F)),
                         m_chi(A, G(B, C), D, G(E, F))}),
                m_chain({under(T(A, D), T(T(B, C), T(E, F)), T(T(B, E), T(C, F))), m_chi(A, T(B, C), D, T(E, F)),
                         m_tensor(m_zeta(A, B, C), m_zeta(D, E, F))})});
  ds.push_back({"upsilon-chi",
                m_chain({m_xi(T(A, C), T(B, D), T(E, F)), m_zeta(G(T(A, C), T(B, D)), E, F),
                         m_guard(m_chi(A, B, C, D), m_id(G(E, F))), m_upsilon(G(A, B), G(C, D), G(E, F))}),
                m_chain({m_upsilon(A, C, T(T(B, D), T(E, F))),
                         under(A, T(B, T(T(C, E), T(D, F))), T(C, T(T(B, D), T(E, F)))),
                         m_xi(A, B, T(T(C, E), T(D, F))), m_zeta(G(A, B), T(C, E), T(D, F)),
                         m_guard(m_id(G(A, B)), m_chi(C, D, E, F))})});
  ds.push_back({"chi-upsilon",
                m_chain({m_guard(m_assoc(A, C, D), m_id(T(B, E))), m_chi(A, B, T(C, D), E),
                         m_tensor(m_id(G(A, B)), m_upsilon(C, D, E))}),
                m_chain({m_upsilon(T(A, C), D, T(B, E)), under(T(A, C), T(B, T(D, E)), T(D, T(B, E))),
                         m_chi(A, B, C, T(D, E))})});
  ds.push_back({"xi-upsilon", m_comp(m_xi(T(A, B), C, D), m_guard(m_upsilon(A, B, C), m_id(D))),
                m_chain({m_upsilon(A, B, T(C, D)), m_guard(m_id(A), m_assoc_inv(B, C, D)), m_xi(A, T(B, C), D)})});
  ds.push_back({"zeta-upsilon", m_comp(m_zeta(A, T(B, C), D), m_guard(m_id(A), m_upsilon(B, C, D))),
                m_comp(m_guard(m_id(A), m_assoc(B, C, D)), m_zeta(A, B, T(C, D)))});
  return ds;
}

Json LawResult::to_json() const {
  Json j{{"law", id}, {"pass", pass}, {"checked", checked}};
  if (!error.empty()) j["error"] = error;
  if (!pass && !witness.is_null()) j["witness"] = witness;
  return j;
}

namespace {

Obj letter(const char* base, int n) { return Obj::letter(base, n); }

Val swap_or_const(const Val& v) {
  // a two-valued endomap on letter carriers: x0 ↔ x1, everything else fixed
  if (!v.is(Val::Kind::Atom) || v.name().empty()) return v;
  std::string s = v.name();
  char& last = s.back();
  if (last == '0') last = '1';
  else if (last == '1') last = '0';
  return Val::atom(s);
}

Val to_first(const Val& v) {
  if (!v.is(Val::Kind::Atom) || v.name().empty()) return v;
  std::string s = v.name();
  s.back() = '0';
  return Val::atom(s);
}

struct Checker {
  const Gpm& inst;
  const LawConfig& cfg;
  std::vector<LawResult>& out;

  std::vector<Val> elems(const Obj& o) const { return enumerate(o, inst, cfg.enumc); }
  std::vector<Val> few(const Obj& o) const { return thin(elems(o), cfg.sample_cap); }

  /// Pointwise lhs == rhs over xs.
  void pointwise(const std::string& id, const std::vector<Val>& xs, const Fn& lhs, const Fn& rhs) {
    LawResult r{id};
    try {
      for (const Val& x : xs) {
        ++r.checked;
        Val a = lhs(x), b = rhs(x);
        if (!(a == b)) {
          r.pass = false;
          r.witness = Json{{"input", val_json(x, &inst)}, {"lhs", val_json(a, &inst)}, {"rhs", val_json(b, &inst)}};
          break;
        }
      }
    } catch (const std::exception& e) {
      r.pass = false;
      r.error = e.what();
    }
    out.push_back(std::move(r));
  }

  void predicate(const std::string& id, const std::vector<Val>& xs, const std::function<bool(const Val&)>& p) {
    LawResult r{id};
    try {
      for (const Val& x : xs) {
        ++r.checked;
        if (!p(x)) {
          r.pass = false;
          r.witness = Json{{"input", val_json(x, &inst)}};
          break;
        }
      }
    } catch (const std::exception& e) {
      r.pass = false;
      r.error = e.what();
    }
    out.push_back(std::move(r));
  }

  bool guarded(const Val& u) const {
    auto g = inst.eps_inverse(u);
    return g && inst.eps(*g) == u;
  }

  void diagrams() {
    CoherenceConfig cc;
    cc.carrier_sizes = cfg.carrier_sizes;
    cc.enumc = cfg.enumc;
    cc.check_shape = false;
    for (const auto& d : gpm_diagrams()) {
      LawResult r{"diagram:" + d.id};
      CoherenceVerdict v = coherence_check(d.f, d.g, inst, cc);
      r.pass = v.equal;
      r.checked = v.points;
      r.error = v.error;
      r.witness = v.witness;
      out.push_back(std::move(r));
    }
  }

  void carriers() {
    for (int n : cfg.carrier_sizes) {
      Obj y = letter("y", n), z = letter("z", n);
      auto xs = elems(Obj::guard(y, z));
      predicate("carrier:valid/" + std::to_string(n), xs, [&](const Val& v) { return inst.valid(v, y, z); });
    }
  }

  void functor(int n) {
    std::string sfx = "/" + std::to_string(n);
    auto xs = elems(Obj::guard(letter("x", n), letter("y", n)));
    pointwise("functor:identity" + sfx, xs, [&](const Val& v) { return inst.map(id_fn, id_fn, v); }, id_fn);
    pointwise(
        "functor:composition" + sfx, xs,
        [&](const Val& v) { return inst.map(compose(swap_or_const, to_first), compose(to_first, swap_or_const), v); },
        [&](const Val& v) { return inst.map(swap_or_const, to_first, inst.map(to_first, swap_or_const, v)); });
  }

  void monad(int n) {
    std::string sfx = "/" + std::to_string(n);
    Obj x = letter("x", n), y = letter("y", n);
    Obj xy = Obj::guard(x, y);
    Fn unit = [&](const Val& v) { return inst.unit(v); };
    Fn mult = [&](const Val& v) { return inst.mult(v); };
    auto t1 = elems(xy);
    pointwise("monad:left-unit" + sfx, t1, compose(mult, unit), id_fn);
    pointwise("monad:right-unit" + sfx, t1, [&](const Val& v) { return inst.mult(inst.map(unit, id_fn, v)); }, id_fn);
    auto t3 = elems(Obj::guard(Obj::guard(xy, y), y));
    pointwise("monad:associativity" + sfx, t3, compose(mult, mult),
              [&](const Val& v) { return inst.mult(inst.map(mult, id_fn, v)); });
    // T(−, f) is a monad morphism
    Fn tf = [&](const Val& v) { return inst.map(id_fn, to_first, v); };
    pointwise("monad:morphism-unit" + sfx, elems(x), compose(tf, unit), unit);
    auto t2 = elems(Obj::guard(xy, y));
    pointwise("monad:morphism-mult" + sfx, t2, compose(tf, mult),
              [&](const Val& v) { return inst.mult(inst.map(tf, to_first, v)); });
    pointwise("monad:unit-naturality" + sfx, elems(x), [&](const Val& v) { return inst.map(swap_or_const, id_fn, inst.unit(v)); },
              compose(unit, swap_or_const));
  }

  void strength(int n) {
    Obj x = letter("x", n);
    Obj yz = Obj::guard(letter("y", n), letter("z", n));
    std::vector<Val> pts;
    for (const Val& a : elems(x))
      for (const Val& u : elems(yz)) pts.push_back(Val::pair(a, u));
    Fn snd = [](const Val& p) { return p.snd(); };
    pointwise(
        "strength:square/" + std::to_string(n), pts,
        [&](const Val& p) { return inst.eps(inst.map(id_fn, snd, inst.wave_tau(p.fst(), p.snd()))); },
        [&](const Val& p) {
          const Val a = p.fst();
          Fn pair_with = [a](const Val& w) { return Val::pair(a, w); };
          Val tau = inst.map(pair_with, id_fn, inst.eps(p.snd()));  // canonical strength of −±0
          Fn dist_snd = [](const Val& w) {
            const Val& s = w.snd();
            return s.is(Val::Kind::Inl) ? Val::inl(Val::pair(w.fst(), s.child())) : Val::inr(s.child());
          };
          return inst.map(dist_snd, id_fn, tau);
        });
  }

  void eps_laws(int n) {
    std::string sfx = "/" + std::to_string(n);
    auto xs = elems(Obj::guard(letter("y", n), letter("z", n)));
    LawResult r{"eps:injective" + sfx};
    std::map<Val, Val> seen;
    for (const Val& v : xs) {
      ++r.checked;
      Val e = inst.eps(v);
      auto [it, fresh] = seen.emplace(e, v);
      if (!fresh && !(it->second == v)) {
        r.pass = false;
        r.witness = Json{{"first", val_json(it->second, &inst)}, {"second", val_json(v, &inst)}, {"image", val_json(e, &inst)}};
        break;
      }
    }
    out.push_back(std::move(r));
    pointwise("eps:retraction" + sfx, xs,
              [&](const Val& v) {
                auto back = inst.eps_inverse(inst.eps(v));
                return back ? *back : Val::atom("<none>");
              },
              id_fn);
  }

  void guardedness(int n) {
    std::string sfx = "/" + std::to_string(n);
    Obj y = letter("y", n), z = letter("z", n), v = letter("v", n), w = letter("w", n);
    // trv: f : X → Y ± 0 gives (inl ± 0) ∘ f guarded
    predicate("guard:trv" + sfx, elems(Obj::guard(y, Obj::empty())),
              [&](const Val& t) { return guarded(inst.map(inl_fn, id_fn, t)); });

    std::vector<Val> g_vw;  // guarded elements of (V + W) ± 0
    for (const Val& t : few(Obj::guard(v, w))) g_vw.push_back(inst.eps(t));
    // par: [f, g] guarded when f and g are
    {
      LawResult r{"guard:par" + sfx};
      for (const Val& a : g_vw)
        for (const Val& b : g_vw) {
          ++r.checked;
          Fn cot = cotuple([a](const Val&) { return a; }, [b](const Val&) { return b; });
          if (!is_guarded(inst, {Val::inl(Val()), Val::inr(Val())}, cot)) {
            r.pass = false;
            r.witness = Json{{"f", val_json(a, &inst)}, {"g", val_json(b, &inst)}};
          }
        }
      out.push_back(std::move(r));
    }
    // cmp: f guarded in Z, g guarded in W, h arbitrary ⇒ [g, h]* ∘ f guarded in W
    {
      LawResult r{"guard:cmp" + sfx};
      std::vector<Val> fs;
      for (const Val& t : few(Obj::guard(y, z))) fs.push_back(inst.eps(t));
      auto hs = few(Obj::guard(Obj::sum(v, w), Obj::empty()));
      auto ys = elems(y);
      for (const Val& f : fs) {
        for (const Val& g0 : g_vw) {
          for (const Val& h0 : hs) {
            // g sends the first element of Y to g0 and the rest to the first guarded value
            Fn g = [&, g0](const Val& a) { return a == ys.front() ? g0 : g_vw.front(); };
            Fn h = [h0](const Val&) { return h0; };
            ++r.checked;
            Val res = inst.bind(f, cotuple(g, h));
            if (!guarded(res)) {
              r.pass = false;
              r.witness = Json{{"f", val_json(f, &inst)}, {"g", val_json(g0, &inst)}, {"h", val_json(h0, &inst)},
                               {"result", val_json(res, &inst)}};
              goto done;
            }
          }
        }
      }
    done:
      out.push_back(std::move(r));
    }
  }

  void factorization(int n) {
    std::string sfx = "/" + std::to_string(n);
    Obj x = letter("x", n), y = letter("y", n), z = letter("z", n);
    auto dom = elems(x);
    auto cands = elems(Obj::guard(y, z));
    auto picks = thin(cands, cfg.sample_cap);
    LawResult r{"factor:roundtrip" + sfx};
    LawResult u{"factor:uniqueness" + sfx};
    LawResult neg{"factor:unguarded-rejected" + sfx};
    try {
      for (const Val& g0 : picks)
        for (const Val& g1 : picks) {
          Fn g = [&](const Val& a) { return a == dom.front() ? g0 : g1; };
          Fn f = compose([&](const Val& t) { return inst.eps(t); }, g);
          ++r.checked;
          ++u.checked;
          auto direct = factorize(inst, dom, f);
          auto searched = factorize_search(inst, dom, f, cands);  // throws on a second candidate
          bool ok = direct && searched && *direct == *searched;
          if (ok)
            for (const auto& [a, b] : *direct) ok = ok && b == g(a);
          if (!ok && r.pass) {
            r.pass = false;
            r.witness = Json{{"g0", val_json(g0, &inst)}, {"g1", val_json(g1, &inst)}};
          }
        }
    } catch (const std::exception& e) {
      u.pass = false;
      u.error = e.what();
    }
    // η ∘ inr exits to Z with no guard
    for (const Val& c : elems(z)) {
      ++neg.checked;
      Fn f = [&, c](const Val&) { return inst.eta(Val::inr(c)); };
      if (factorize(inst, dom, f) || factorize_search(inst, dom, f, cands)) {
        neg.pass = false;
        neg.witness = Json{{"exit", val_json(c, &inst)}};
      }
    }
    out.push_back(std::move(r));
    out.push_back(std::move(u));
    out.push_back(std::move(neg));
  }
};

}  // namespace

std::vector<LawResult> run_laws(const Gpm& inst, const LawConfig& cfg) {
  std::vector<LawResult> out;
  Checker c{inst, cfg, out};
  c.diagrams();
  c.carriers();
  for (int n : cfg.carrier_sizes) {
    c.functor(n);
    c.monad(n);
    c.strength(n);
    c.eps_laws(n);
    c.guardedness(n);
    c.factorization(n);
  }
  return out;
}

}  // namespace gfgcbv
