#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "gfgcbv/bpa.hpp"
#include "gfgcbv/checker.hpp"
#include "gfgcbv/coherence.hpp"
#include "gfgcbv/instances.hpp"
#include "gfgcbv/interpreter.hpp"
#include "gfgcbv/laws.hpp"

using namespace gfgcbv;

namespace {

struct Common {
  std::string instance;
  int fuel = -1;
  int depth = 4;
  std::string alphabet;
  int state_bits = 1;
  std::uint64_t seed = 0;
  std::string out;
  std::string format = "json";
};

class Sink {
 public:
  explicit Sink(const Common& c) : text_(c.format == "text") {
    if (!c.out.empty()) {
      file_.open(c.out);
      if (!file_) throw std::runtime_error("cannot open " + c.out);
    }
  }
  void emit(const Json& rec) {
    std::ostream& os = file_.is_open() ? file_ : std::cout;
    if (!text_) {
      os << rec.dump() << "\n";
      return;
    }
    bool first = true;
    for (const auto& [k, v] : rec.items()) {
      os << (first ? "" : "  ") << k << "=" << (v.is_string() ? v.get<std::string>() : v.dump());
      first = false;
    }
    os << "\n";
  }

 private:
  bool text_;
  std::ofstream file_;
};

std::string slurp(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot read " + path);
  std::stringstream s;
  s << f.rdbuf();
  return s.str();
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep))
    if (!cur.empty()) out.push_back(cur);
  return out;
}

bool ends_with(const std::string& s, const std::string& suf) {
  return s.size() >= suf.size() && s.compare(s.size() - suf.size(), suf.size(), suf) == 0;
}

InstanceConfig instance_config(const Common& c, std::vector<std::string> fallback_alphabet) {
  InstanceConfig ic;
  ic.alphabet = c.alphabet.empty() ? std::move(fallback_alphabet) : split(c.alphabet, ',');
  if (ic.alphabet.empty()) ic.alphabet = {"a"};
  ic.depth = c.depth;
  ic.state_bits = c.state_bits;
  return ic;
}

Json error_json(const TypeError& e) {
  return Json{{"kind", err_kind_str(e.kind)}, {"rule", e.rule}, {"at", e.span.str()}, {"message", e.render()}};
}

// ---- runtime arguments: *, 3, 1/2, 01 (a state), inl V, inr V, (V, V), atom ----

class ArgParser {
 public:
  ArgParser(std::string s, int state_bits) : s_(std::move(s)), bits_(state_bits) {}

  Val parse(const TypePtr& t) {
    Val v = value(t);
    skip();
    if (i_ != s_.size()) fail("trailing input");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw std::invalid_argument("argument '" + s_ + "': " + msg);
  }
  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  bool accept(const std::string& tok) {
    skip();
    if (s_.compare(i_, tok.size(), tok) == 0) {
      i_ += tok.size();
      return true;
    }
    return false;
  }
  std::string word() {
    skip();
    std::size_t j = i_;
    while (j < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[j])) || s_[j] == '/' || s_[j] == '_' ||
                             s_[j] == '*' || s_[j] == '-'))
      ++j;
    if (j == i_) fail("expected a value");
    std::string w = s_.substr(i_, j - i_);
    i_ = j;
    return w;
  }
  Val value(const TypePtr& t) {
    if (accept("(")) {
      Val v = t->kind == Type::Prod ? pair(t) : value(t);
      if (!accept(")")) fail("expected ')'");
      return v;
    }
    switch (t->kind) {
      case Type::Zero: fail("the empty type has no values");
      case Type::Sum:
        if (accept("inl")) return Val::inl(value(t->a));
        if (accept("inr")) return Val::inr(value(t->b));
        fail("expected inl or inr");
      case Type::Prod: fail("expected a pair");
      case Type::Arrow: fail("functions cannot be passed on the command line");
      case Type::Sort: {
        std::string w = word();
        if (t->name == "1") {
          if (w != "*") fail("the unit value is *");
          return Val();
        }
        if (t->name == "Q") {
          Rational q;
          if (q.set_str(w, 10) != 0) fail("not a rational: " + w);
          q.canonicalize();
          if (q < 0) fail("Q holds nonnegative rationals");
          return Val::num(q);
        }
        if (t->name == "S" && static_cast<int>(w.size()) != bits_) fail("state width must be " + std::to_string(bits_));
        return Val::atom(w);
      }
    }
    fail("unsupported type");
  }
  Val pair(const TypePtr& t) {
    Val a = value(t->a);
    if (!accept(",")) fail("expected ','");
    return Val::pair(a, value(t->b));
  }

  std::string s_;
  int bits_;
  std::size_t i_ = 0;
};

// ---- subcommands ----

int cmd_typecheck(const Common& c, const std::string& file, bool all_errors) {
  Sink sink(c);
  std::string text = slurp(file);
  if (ends_with(file, ".bpa")) {
    BpaSystem sys;
    try {
      sys = parse_bpa(text);
    } catch (const BpaParseError& e) {
      sink.emit(Json{{"file", file}, {"ok", false}, {"error", Json{{"kind", "ParseError"}, {"message", e.what()}}}});
      return 1;
    }
    int failures = 0;
    GuardednessVerdict g = syntactic_guardedness(sys);
    for (const auto& w : g.witnesses) {
      sink.emit(Json{{"def", w.equation}, {"ok", false}, {"error", Json{{"kind", "Unguarded"}, {"name", w.name}}}});
      ++failures;
      if (!all_errors) return 1;
    }
    BpaProgram prog = build_bpa_program(sys);
    for (int i = 0; i < prog.n; ++i) {
      Json rec{{"def", sys.equations[static_cast<std::size_t>(i)].first}};
      try {
        check_comp(prog.sig, {{"x", t_unit()}}, prog.solve_term(i), t_unit(), prog.exit_type);
        rec["ok"] = true;
        rec["type"] = "1 |> " + type_str(prog.exit_type);
      } catch (const TypeError& e) {
        rec["ok"] = false;
        rec["error"] = error_json(e);
        ++failures;
      }
      sink.emit(rec);
      if (failures && !all_errors) return 1;
    }
    return failures ? 1 : 0;
  }
  Program prog;
  try {
    prog = parse_program(text);
  } catch (const ParseError& e) {
    sink.emit(Json{{"file", file}, {"ok", false}, {"error", Json{{"kind", "ParseError"}, {"at", e.span.str()}, {"message", e.what()}}}});
    return 1;
  }
  int failures = 0;
  for (const auto& r : check_program(prog)) {
    Json rec{{"def", r.name}, {"ok", r.ok}};
    if (r.ok) {
      rec["type"] = type_str(r.judgement->b) + " |> " + type_str(r.judgement->c);
    } else {
      rec["error"] = error_json(r.errors.front());
      ++failures;
    }
    sink.emit(rec);
    if (failures && !all_errors) break;
  }
  return failures ? 1 : 0;
}

int cmd_run(const Common& c, const std::string& file, const std::string& def_name, const std::vector<std::string>& args,
            const std::string& init_state, const std::vector<std::string>& sorts) {
  Sink sink(c);
  Program prog = parse_program(slurp(file));
  for (const auto& s : sorts)
    if (!prog.sig.has_sort(s)) throw std::invalid_argument("sort '" + s + "' is not declared in " + file);
  const Def* def = prog.find(def_name);
  if (!def) throw std::invalid_argument("no definition named '" + def_name + "'");
  for (const auto& r : check_program(prog))
    if (r.name == def_name && !r.ok) {
      sink.emit(Json{{"def", def_name}, {"ok", false}, {"error", error_json(r.errors.front())}});
      return 1;
    }

  std::string inst_name = c.instance.empty() ? "trace" : c.instance;
  auto inst = make_instance(inst_name, instance_config(c, {"a"}));
  InterpConfig cfg;
  if (c.fuel >= 0) cfg.fuel = c.fuel;
  cfg.state_bits = c.state_bits;
  Interpreter interp(prog.sig, *inst, cfg);

  Env env;
  for (const auto& [x, ty] : def->params) {
    std::string text;
    for (const auto& a : args) {
      auto eq = a.find('=');
      if (eq != std::string::npos && a.substr(0, eq) == x) text = a.substr(eq + 1);
    }
    if (text.empty()) {
      if (!(ty->kind == Type::Sort && ty->name == "1")) throw std::invalid_argument("missing --arg " + x + "=...");
      text = "*";
    }
    env.emplace_back(x, ArgParser(text, c.state_bits).parse(ty));
  }
  Val v = interp.eval_comp(env, def->body);
  Json result = inst->to_json(v);
  if (interp.exhausted() && result.is_object() && result.contains("status")) result["status"] = "exhausted";
  if (!init_state.empty()) {
    const auto* st = dynamic_cast<const StateTraceGpm*>(inst.get());
    if (!st) throw std::invalid_argument("--init-state needs the state_trace instance");
    result = result[st->parse_state(init_state)];
  }
  sink.emit(Json{{"def", def_name}, {"instance", inst_name}, {"exhausted", interp.exhausted()}, {"result", result}});
  return 0;
}

int cmd_bpa_solve(const Common& c, const std::string& file, const std::vector<std::string>& queries,
                  const std::string& proc, bool with_values) {
  Sink sink(c);
  BpaSystem sys = parse_bpa(slurp(file));
  std::string inst_name = c.instance.empty() ? "resumption" : c.instance;
  InstanceConfig ic = instance_config(c, sys.actions);
  if (!c.alphabet.empty() && ic.alphabet != sys.actions)
    throw std::invalid_argument("--alphabet must list the system's actions");
  ic.alphabet = sys.actions;
  auto inst = make_instance(inst_name, ic);
  int fuel = c.fuel >= 0 ? c.fuel : c.depth;
  Solution sol = solve(sys, *inst, fuel);

  Json head{{"file", file}, {"instance", inst_name}, {"depth", c.depth}, {"fuel", fuel}, {"guarded", sol.guardedness.guarded}};
  if (!sol.guardedness.guarded) {
    Json w = Json::array();
    for (const auto& o : sol.guardedness.witnesses) w.push_back(Json{{"equation", o.equation}, {"name", o.name}});
    head["unguarded"] = w;
  }
  if (sol.type_error) head["type_error"] = error_json(*sol.type_error);
  sink.emit(head);
  if (!sol.ok) return 1;

  for (const auto& e : sol.entries) {
    if (!proc.empty() && e.name != proc) continue;
    Json rec{{"proc", e.name}, {"exhausted", e.exhausted}, {"steps", e.steps}};
    if (with_values) rec["value"] = inst->to_json(e.value);
    sink.emit(rec);
  }
  std::string target = proc.empty() ? sys.equations.front().first : proc;
  const SolveEntry* e = sol.find(target);
  if (!e) throw std::invalid_argument("no equation named '" + target + "'");
  for (const auto& q : queries) {
    Word w = split(q, '.');
    sink.emit(Json{{"proc", target}, {"query", q}, {"answer", trace_answer_str(has_trace(*inst, *e, w))}});
  }
  return 0;
}

int cmd_laws(const Common& c, const std::vector<int>& sizes) {
  Sink sink(c);
  std::vector<std::string> names;
  if (c.instance.empty() || c.instance == "all")
    names = instance_names();
  else
    names = split(c.instance, ',');
  LawConfig cfg;
  cfg.enumc.cap = EnumConfig::env_cap(cfg.enumc.cap);
  if (!c.alphabet.empty()) cfg.enumc.alphabet = split(c.alphabet, ',');
  if (!sizes.empty()) cfg.carrier_sizes = sizes;
  int failures = 0;
  for (const auto& n : names) {
    auto inst = make_instance(n, instance_config(c, cfg.enumc.alphabet));
    int local = 0;
    for (const auto& r : run_laws(*inst, cfg)) {
      Json rec{{"instance", n}};
      Json body = r.to_json();
      rec.insert(body.begin(), body.end());
      sink.emit(rec);
      local += !r.pass;
    }
    failures += local;
  }
  sink.emit(Json{{"summary", "laws"}, {"failures", failures}});
  return failures ? 1 : 0;
}

std::pair<std::uint64_t, std::uint64_t> seed_range(const std::string& s, std::uint64_t dflt) {
  if (s.empty()) return {dflt, dflt};
  auto dots = s.find("..");
  if (dots == std::string::npos) {
    auto v = std::stoull(s);
    return {v, v};
  }
  return {std::stoull(s.substr(0, dots)), std::stoull(s.substr(dots + 2))};
}

int cmd_coherence(const Common& c, const std::string& seeds, int size, bool show_all) {
  Sink sink(c);
  auto [lo, hi] = seed_range(seeds, c.seed);
  if (hi < lo) throw std::invalid_argument("empty seed range");
  std::string inst_name = c.instance.empty() ? "trace" : c.instance;
  auto inst = make_instance(inst_name, instance_config(c, {"a"}));
  GenConfig gc;
  if (size > 0) gc.max_letters = size;
  CoherenceConfig cc;
  cc.enumc.cap = EnumConfig::env_cap(cc.enumc.cap);
  std::uint64_t equal = 0, total = 0;
  for (std::uint64_t s = lo; s <= hi; ++s) {
    auto [f, g] = gen_mor(s, gc);
    CoherenceVerdict v = coherence_check(f, g, *inst, cc);
    ++total;
    equal += v.equal;
    if (show_all || !v.equal) {
      auto [dom, cod] = infer_mor_type(f);
      Json rec{{"seed", s}, {"equal", v.equal}, {"points", v.points}, {"type", obj_str(dom) + " -> " + obj_str(cod)},
               {"f", mor_str(f)}, {"g", mor_str(g)}};
      if (!v.error.empty()) rec["error"] = v.error;
      if (!v.equal && !v.witness.is_null()) rec["witness"] = v.witness;
      sink.emit(rec);
    }
  }
  sink.emit(Json{{"summary", "coherence"}, {"instance", inst_name}, {"equal", equal}, {"total", total}});
  return equal == total ? 0 : 1;
}

int cmd_normalize(const Common& c, const std::string& expr) {
  Sink sink(c);
  ObjExpr e = parse_obj(expr);
  if (!letters_unique(e)) {
    sink.emit(Json{{"input", expr}, {"ok", false}, {"error", "shape: a letter occurs more than once"}});
    return 1;
  }
  MorExpr m = nm(e);
  auto [dom, cod] = infer_mor_type(m);
  sink.emit(Json{{"input", obj_str(e)}, {"ok", true}, {"nf", obj_str(nf(e))}, {"nm", mor_str(m)},
                 {"nm_type", obj_str(dom) + " -> " + obj_str(cod)}});
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Guarded fine-grain call-by-value toolkit"};
  app.require_subcommand(1);
  Common c;
  auto common = [&c](CLI::App* s) {
    s->add_option("--instance", c.instance, "trace, hybrid, resumption, state_trace, vacuous, mutant_upsilon");
    s->add_option("--fuel", c.fuel, "iteration fuel (body applications)");
    s->add_option("--depth", c.depth, "resumption depth / state-trace write bound")->capture_default_str();
    s->add_option("--alphabet", c.alphabet, "comma-separated actions");
    s->add_option("--state-bits", c.state_bits, "memory width")->capture_default_str();
    s->add_option("--seed", c.seed, "seed");
    s->add_option("--out", c.out, "write records to a file");
    s->add_option("--format", c.format, "json or text")->check(CLI::IsMember({"json", "text"}))->capture_default_str();
  };

  std::string file, def_name, init_state, proc, seeds, expr;
  std::vector<std::string> args, queries, sorts;
  std::vector<int> sizes;
  bool all_errors = false, with_values = false, show_all = false;
  int size = 0;

  auto* tc = app.add_subcommand("typecheck", "check every definition (.gfg) or a process system (.bpa)");
  common(tc);
  tc->add_option("file", file)->required();
  tc->add_flag("--all-errors", all_errors, "report every failing definition");

  auto* run = app.add_subcommand("run", "evaluate a definition");
  common(run);
  run->add_option("file", file)->required();
  run->add_option("--def", def_name)->required();
  run->add_option("--arg", args, "name=value (repeatable)");
  run->add_option("--init-state", init_state, "state_trace: report only this initial state");
  run->add_option("--sort", sorts, "sorts the run relies on; must be declared");

  auto* bpa = app.add_subcommand("bpa-solve", "solve a recursive process system");
  common(bpa);
  bpa->add_option("file", file)->required();
  bpa->add_option("--query", queries, "dot-separated action word (repeatable)");
  bpa->add_option("--proc", proc, "equation to report and query (default: the first)");
  bpa->add_flag("--values", with_values, "include the solution values");

  auto* laws = app.add_subcommand("laws", "exhaustive GPM law suite");
  common(laws);
  laws->add_option("--sizes", sizes, "letter carrier sizes")->delimiter(',');

  auto* coh = app.add_subcommand("coherence", "fuzz coherence on generated morphism pairs");
  common(coh);
  coh->add_option("--seeds", seeds, "N or FROM..TO");
  coh->add_option("--size", size, "maximum number of letters");
  coh->add_flag("--all", show_all, "emit a record for every seed, not only mismatches");

  auto* norm = app.add_subcommand("normalize", "nf and nm of an object expression");
  common(norm);
  norm->add_option("expr", expr)->required();

  CLI11_PARSE(app, argc, argv);
  try {
    if (*tc) return cmd_typecheck(c, file, all_errors);
    if (*run) return cmd_run(c, file, def_name, args, init_state, sorts);
    if (*bpa) return cmd_bpa_solve(c, file, queries, proc, with_values);
    if (*laws) return cmd_laws(c, sizes);
    if (*coh) return cmd_coherence(c, seeds, size, show_all);
    if (*norm) return cmd_normalize(c, expr);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
