#include "gfgcbv/bpa.hpp"

#include <algorithm>
#include <cctype>
#include <functional>

#include "gfgcbv/instances.hpp"
#include "gfgcbv/interpreter.hpp"

namespace gfgcbv {

BpaTerm bpa_act(std::string a) { return std::make_shared<const BpaNode>(BpaNode{BpaNode::Act, std::move(a), {}, {}}); }
BpaTerm bpa_name(std::string n) { return std::make_shared<const BpaNode>(BpaNode{BpaNode::Name, std::move(n), {}, {}}); }
BpaTerm bpa_choice(BpaTerm p, BpaTerm q) {
  return std::make_shared<const BpaNode>(BpaNode{BpaNode::Choice, "", std::move(p), std::move(q)});
}
BpaTerm bpa_seq(BpaTerm p, BpaTerm q) {
  return std::make_shared<const BpaNode>(BpaNode{BpaNode::Seq, "", std::move(p), std::move(q)});
}

std::string bpa_str(const BpaTerm& t) {
  switch (t->kind) {
    case BpaNode::Act:
    case BpaNode::Name: return t->name;
    case BpaNode::Choice: return bpa_str(t->a) + " + " + bpa_str(t->b);
    case BpaNode::Seq: {
      auto side = [](const BpaTerm& s) { return s->kind == BpaNode::Choice ? "(" + bpa_str(s) + ")" : bpa_str(s); };
      return side(t->a) + " . " + side(t->b);
    }
  }
  return "?";
}

std::vector<std::string> BpaSystem::names() const {
  std::vector<std::string> out;
  for (const auto& [n, _] : equations) out.push_back(n);
  out.insert(out.end(), free_names.begin(), free_names.end());
  return out;
}

int BpaSystem::index(const std::string& name) const {
  auto ns = names();
  auto it = std::find(ns.begin(), ns.end(), name);
  return it == ns.end() ? -1 : static_cast<int>(it - ns.begin());
}

const BpaTerm* BpaSystem::rhs(const std::string& name) const {
  for (const auto& [n, t] : equations)
    if (n == name) return &t;
  return nullptr;
}

bool BpaSystem::is_action(const std::string& s) const {
  return std::find(actions.begin(), actions.end(), s) != actions.end();
}

// ---- parsing ----

namespace {

struct BTok {
  enum Kind { Ident, Sym, End } kind;
  std::string text;
  int line;
};

std::vector<BTok> btokenize(const std::string& s) {
  std::vector<BTok> out;
  int line = 1;
  for (std::size_t i = 0; i < s.size();) {
    char c = s[i];
    if (c == '\n') { ++line; ++i; continue; }
    if (std::isspace(static_cast<unsigned char>(c))) { ++i; continue; }
    if (c == '#') {
      while (i < s.size() && s[i] != '\n') ++i;
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_' || s[j] == '\'')) ++j;
      out.push_back({BTok::Ident, s.substr(i, j - i), line});
      i = j;
      continue;
    }
    if (s.compare(i, 2, "·") == 0) { out.push_back({BTok::Sym, ".", line}); i += 2; continue; }
    if (std::string("=+.;,()").find(c) != std::string::npos) {
      out.push_back({BTok::Sym, std::string(1, c), line});
      ++i;
      continue;
    }
    throw BpaParseError("line " + std::to_string(line) + ": unexpected character '" + std::string(1, c) + "'");
  }
  out.push_back({BTok::End, "", line});
  return out;
}

class BpaParser {
 public:
  explicit BpaParser(const std::string& s) : toks_(btokenize(s)) {}

  BpaSystem run() {
    BpaSystem sys;
    std::vector<std::pair<std::string, int>> used;  // names referenced, with line
    while (peek().kind != BTok::End) {
      BTok kw = ident("'actions', 'free' or 'proc'");
      if (kw.text == "actions" || kw.text == "free") {
        auto& dst = kw.text == "actions" ? sys.actions : sys.free_names;
        do dst.push_back(ident("a name").text);
        while (accept(","));
        sym(";");
      } else if (kw.text == "proc") {
        BTok n = ident("a process name");
        if (sys.rhs(n.text)) fail(n, "process '" + n.text + "' defined twice");
        sym("=");
        names_ = &used;
        sys_ = &sys;
        BpaTerm t = choice();
        accept(";");
        sys.equations.emplace_back(n.text, t);
      } else {
        fail(kw, "expected 'actions', 'free' or 'proc', got '" + kw.text + "'");
      }
    }
    for (const auto& a : sys.actions) {
      if (a == "toss") throw BpaParseError("'toss' is reserved and cannot be an action");
      if (sys.rhs(a) || std::find(sys.free_names.begin(), sys.free_names.end(), a) != sys.free_names.end())
        throw BpaParseError("'" + a + "' is both an action and a process name");
    }
    for (const auto& f : sys.free_names)
      if (sys.rhs(f)) throw BpaParseError("free name '" + f + "' also has an equation");
    for (const auto& [n, line] : used)
      if (!sys.rhs(n) && std::find(sys.free_names.begin(), sys.free_names.end(), n) == sys.free_names.end())
        throw BpaParseError("line " + std::to_string(line) + ": undeclared name '" + n + "'");
    return sys;
  }

 private:
  const BTok& peek() const { return toks_[i_]; }
  [[noreturn]] void fail(const BTok& t, const std::string& msg) {
    throw BpaParseError("line " + std::to_string(t.line) + ": " + msg);
  }
  BTok ident(const char* what) {
    if (peek().kind != BTok::Ident) fail(peek(), std::string("expected ") + what);
    return toks_[i_++];
  }
  bool accept(const char* s) {
    if (peek().kind == BTok::Sym && peek().text == s) {
      ++i_;
      return true;
    }
    return false;
  }
  void sym(const char* s) {
    if (!accept(s)) fail(peek(), std::string("expected '") + s + "'");
  }
  BpaTerm choice() {
    BpaTerm t = seq();
    while (accept("+")) t = bpa_choice(t, seq());
    return t;
  }
  BpaTerm seq() {
    BpaTerm t = atom();
    while (accept(".")) t = bpa_seq(t, atom());
    return t;
  }
  BpaTerm atom() {
    if (accept("(")) {
      BpaTerm t = choice();
      sym(")");
      return t;
    }
    BTok t = ident("an action or process name");
    if (sys_->is_action(t.text)) return bpa_act(t.text);
    names_->emplace_back(t.text, t.line);
    return bpa_name(t.text);
  }

  std::vector<BTok> toks_;
  std::size_t i_ = 0;
  std::vector<std::pair<std::string, int>>* names_ = nullptr;
  BpaSystem* sys_ = nullptr;
};

}  // namespace

BpaSystem parse_bpa(const std::string& text) { return BpaParser(text).run(); }

// ---- guardedness ----

bool must_act(const BpaTerm& t) {
  switch (t->kind) {
    case BpaNode::Act: return true;
    case BpaNode::Name: return false;
    case BpaNode::Choice: return must_act(t->a) && must_act(t->b);
    case BpaNode::Seq: return must_act(t->a) || must_act(t->b);
  }
  return false;
}

GuardednessVerdict syntactic_guardedness(const BpaSystem& sys) {
  GuardednessVerdict v;
  for (const auto& [eq, rhs] : sys.equations) {
    bool ok = true;
    std::function<void(const BpaTerm&, bool)> walk = [&](const BpaTerm& t, bool guarded) {
      switch (t->kind) {
        case BpaNode::Act: break;
        case BpaNode::Name:
          if (!guarded && sys.rhs(t->name)) {
            ok = false;
            v.witnesses.push_back({eq, t->name});
          }
          break;
        case BpaNode::Choice:
          walk(t->a, guarded);
          walk(t->b, guarded);
          break;
        case BpaNode::Seq:
          walk(t->a, guarded);
          walk(t->b, guarded || must_act(t->a));
          break;
      }
    };
    walk(rhs, false);
    if (!ok) {
      v.guarded = false;
      v.unguarded_equations.push_back(eq);
    }
  }
  return v;
}

Signature bpa_signature(const BpaSystem& sys) {
  Signature sig;
  for (const auto& a : sys.actions) sig.effect_ops[a] = {t_unit(), t_zero(), t_unit()};
  sig.effect_ops["toss"] = {t_unit(), t_sum(t_unit(), t_unit()), t_zero()};
  return sig;
}

// ---- translation ----

namespace {

VPtr x_var() { return v_var("x"); }
CPtr ret(VPtr v) { return c_return(std::move(v)); }
CPtr init_x() { return c_init(x_var()); }

struct Translator {
  std::vector<std::string> names;
  TypePtr exits;  // 1 + nat(k)

  int idx(const std::string& n) const {
    auto it = std::find(names.begin(), names.end(), n);
    if (it == names.end()) throw std::invalid_argument("unknown process name '" + n + "'");
    return static_cast<int>(it - names.begin());
  }
  VPtr name_exit(const std::string& n) const {
    return v_inr(v_inj(idx(n), static_cast<int>(names.size()), x_var()));
  }
  static TypePtr v_of(const BpaTerm& t) { return must_act(t) ? t_zero() : t_unit(); }

  // 0 |> E  ~>  1 |> E
  CPtr lift(const CPtr& p) const {
    return c_docase(c_annotate(p, t_zero(), exits), "x", init_x(), "y", ret(v_inr(v_var("y"))));
  }

  CPtr toss(CPtr l, CPtr r) const {
    return c_docase(c_eff("toss", x_var()), "x", c_case(x_var(), "x", std::move(l), "x", std::move(r)), "x", init_x());
  }

  /// x : 1 ⊢ T(P) : V(P) |> E
  CPtr u(const BpaTerm& t) const {
    switch (t->kind) {
      case BpaNode::Name: return ret(name_exit(t->name));
      case BpaNode::Act:
        return c_docase(c_eff(t->name, x_var()), "x", init_x(), "x", ret(v_inr(v_inl(x_var()))));
      case BpaNode::Choice: {
        bool whole = must_act(t);
        CPtr l = u(t->a), r = u(t->b);
        if (!whole && must_act(t->a)) l = lift(l);
        if (!whole && must_act(t->b)) r = lift(r);
        return toss(l, r);
      }
      case BpaNode::Seq: {
        TypePtr vp = v_of(t->a), vq = v_of(t);
        CPtr scrut = c_annotate(u(t->a), vp, exits);
        CPtr left = must_act(t->a) ? init_x() : u(t->b);
        CPtr right = c_case(x_var(), "x", g(t->b, vq), "x", ret(v_inr(v_inr(x_var()))));
        return c_docase(scrut, "x", left, "x", right);
      }
    }
    throw std::logic_error("unknown BPA node");
  }

  /// x : 1 ⊢ G(P) : (B + E) |> 0, every exit already guarded by an earlier action.
  CPtr g(const BpaTerm& t, const TypePtr& b) const {
    switch (t->kind) {
      case BpaNode::Name: return ret(v_inr(name_exit(t->name)));
      case BpaNode::Act:
        return c_docase(c_eff(t->name, x_var()), "x", init_x(), "x", ret(v_inl(v_inr(v_inl(x_var())))));
      case BpaNode::Choice: return toss(g(t->a, b), g(t->b, b));
      case BpaNode::Seq: {
        TypePtr be = t_sum(b, exits);
        CPtr scrut = c_annotate(g(t->a, b), be, t_zero());
        CPtr q = g(t->b, b);
        CPtr after = c_case(x_var(), "x", q, "x", ret(v_inr(v_inr(x_var()))));
        // B carries no inhabitants produced by actions; pass it through untouched
        CPtr left = c_case(v_var("r"), "x", ret(v_inl(x_var())), "x", after);
        return c_docase(scrut, "r", left, "x", init_x());
      }
    }
    throw std::logic_error("unknown BPA node");
  }
};

}  // namespace

CPtr translate(const BpaTerm& t, const std::vector<std::string>& names) {
  Translator tr{names, t_sum(t_unit(), t_nat(static_cast<int>(names.size())))};
  return tr.u(t);
}

CPtr assemble(const std::vector<CPtr>& terms) {
  CPtr p = init_x();
  for (const auto& t : terms) p = c_case(x_var(), "x", p, "x", t);
  return p;
}

CPtr BpaProgram::solve_term(int i) const {
  return c_iter("x", t_nat(n), ret(v_inj(i, n, x_var())), body);
}

BpaProgram build_bpa_program(const BpaSystem& sys) {
  BpaProgram prog;
  prog.sig = bpa_signature(sys);
  prog.n = static_cast<int>(sys.equations.size());
  prog.m = static_cast<int>(sys.free_names.size());
  int k = prog.n + prog.m;
  Translator tr{sys.names(), t_sum(t_unit(), t_nat(k))};
  for (const auto& [name, rhs] : sys.equations) {
    CPtr t = tr.u(rhs);
    prog.equations.push_back(must_act(rhs) ? tr.lift(t) : t);
  }
  prog.assembled = assemble(prog.equations);
  prog.exit_type = t_sum(t_unit(), t_nat(prog.m));

  // Reroute exits: anonymous ↦ inl inl, free name j ↦ inl (inr inj_j), defined name i ↦ inr inj_i.
  std::function<CPtr(int)> split = [&](int j) -> CPtr {
    if (j == 0) return c_init(v_var("w"));
    int i = j - 1;
    VPtr target = i < prog.n ? v_inr(v_inj(i, prog.n, v_var("u"))) : v_inl(v_inr(v_inj(i - prog.n, prog.m, v_var("u"))));
    return c_case(v_var("w"), "w", split(j - 1), "u", ret(v_inr(target)));
  };
  CPtr reroute = c_case(v_var("e"), "u", ret(v_inr(v_inl(v_inl(v_var("u"))))), "w", split(k));
  prog.body = c_docase(c_annotate(prog.assembled, t_unit(), t_sum(t_unit(), t_nat(k))), "x", ret(x_var()), "e", reroute);
  return prog;
}

const SolveEntry* Solution::find(const std::string& name) const {
  for (const auto& e : entries)
    if (e.name == name) return &e;
  return nullptr;
}

namespace {
Val inj_val(int i, int n, Val a) {
  Val v = Val::inr(std::move(a));
  for (int k = 0; k < n - 1 - i; ++k) v = Val::inl(v);
  return v;
}
}  // namespace

Solution solve(const BpaSystem& sys, const Gpm& inst, int fuel) {
  Solution sol;
  sol.guardedness = syntactic_guardedness(sys);
  if (!sol.guardedness.guarded) return sol;
  BpaProgram prog = build_bpa_program(sys);
  Context ctx{{"x", t_unit()}};
  try {
    for (int i = 0; i < prog.n; ++i) check_comp(prog.sig, ctx, prog.solve_term(i), t_unit(), prog.exit_type);
  } catch (const TypeError& e) {
    sol.type_error = e;
    return sol;
  }
  InterpConfig cfg;
  cfg.fuel = fuel;
  Interpreter interp(prog.sig, inst, cfg);
  Fn body = interp.iter_body({}, "x", prog.body);
  for (int i = 0; i < prog.n; ++i) {
    Val start = inj_val(i, prog.n, Val());
    IterResult r = inst.iterate(body, start, fuel);
    sol.entries.push_back({sys.equations[static_cast<std::size_t>(i)].first, r.value, r.raw, r.exhausted, r.steps});
  }
  sol.ok = true;
  return sol;
}

std::string trace_answer_str(TraceAnswer a) {
  switch (a) {
    case TraceAnswer::Present: return "present";
    case TraceAnswer::Absent: return "absent";
    case TraceAnswer::BoundTooSmall: return "bound-too-small";
  }
  return "?";
}

namespace {

bool is_prefix(const Word& p, const Word& w) { return p.size() <= w.size() && std::equal(p.begin(), p.end(), w.begin()); }

TraceAnswer follow_tree(const Tree& t, const Word& w, std::size_t at) {
  if (at == w.size()) return TraceAnswer::Present;
  bool open = false;
  for (const auto& n : t->nodes) {
    if (n.kind == TreeNode::Step && n.action == w[at]) {
      TraceAnswer r = follow_tree(n.next, w, at + 1);
      if (r == TraceAnswer::Present) return r;
      open = open || r == TraceAnswer::BoundTooSmall;
    }
    // an unresolved recursion exit or a depth cut could still continue with w
    if (n.kind == TreeNode::Cut || (n.kind == TreeNode::Leaf && n.leaf.is(Val::Kind::Inr))) open = true;
  }
  return open ? TraceAnswer::BoundTooSmall : TraceAnswer::Absent;
}

}  // namespace

TraceAnswer has_trace(const Gpm& inst, const SolveEntry& e, const std::vector<std::string>& word) {
  if (word.empty()) return TraceAnswer::Present;
  if (dynamic_cast<const ResumptionGpm*>(&inst)) return follow_tree(ResumptionGpm::tree(e.raw), word, 0);
  if (dynamic_cast<const TraceGpm*>(&inst)) {
    if (TraceGpm::has_prefix(e.raw, word)) return TraceAnswer::Present;
    for (const auto& t : TraceGpm::entries(e.raw))
      if ((t.kind == TraceEntry::Guard || t.kind == TraceEntry::Div) && is_prefix(t.word, word))
        return TraceAnswer::BoundTooSmall;
    return TraceAnswer::Absent;
  }
  throw std::invalid_argument("trace queries need the trace or resumption instance, not " + inst.name());
}

Json solution_json(const Gpm& inst, const Solution& s) {
  Json j;
  j["ok"] = s.ok;
  j["guarded"] = s.guardedness.guarded;
  if (!s.guardedness.guarded) {
    Json w = Json::array();
    for (const auto& o : s.guardedness.witnesses) w.push_back(Json{{"equation", o.equation}, {"name", o.name}});
    j["unguarded"] = w;
  }
  if (s.type_error) j["type_error"] = s.type_error->render();
  Json es = Json::array();
  for (const auto& e : s.entries)
    es.push_back(Json{{"name", e.name}, {"exhausted", e.exhausted}, {"steps", e.steps}, {"value", inst.to_json(e.value)}});
  j["solutions"] = es;
  return j;
}

}  // namespace gfgcbv
