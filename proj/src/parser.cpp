#include <cctype>
#include <set>

#include "gfgcbv/syntax.hpp"

namespace gfgcbv {

namespace {

struct Token {
  enum Kind { Ident, Number, Sym, End } kind;
  std::string text;
  Span span;
};

std::vector<Token> lex(const std::string& src) {
  static const char* multi[] = {"->", "<-", "|>", "=>"};
  std::vector<Token> out;
  int line = 1, col = 1;
  size_t i = 0;
  auto advance = [&](size_t n) {
    for (size_t k = 0; k < n; ++k, ++i) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < src.size()) {
    char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (c == '#' || (c == '/' && i + 1 < src.size() && src[i + 1] == '/')) {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    Span sp{line, col};
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t j = i;
      while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_')) ++j;
      out.push_back({Token::Ident, src.substr(i, j - i), sp});
      advance(j - i);
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t j = i;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      out.push_back({Token::Number, src.substr(i, j - i), sp});
      advance(j - i);
      continue;
    }
    bool matched = false;
    for (const char* m : multi) {
      if (src.compare(i, 2, m) == 0) {
        out.push_back({Token::Sym, m, sp});
        advance(2);
        matched = true;
        break;
      }
    }
    if (matched) continue;
    if (std::string("(){}<>,;:|+*=").find(c) != std::string::npos) {
      out.push_back({Token::Sym, std::string(1, c), sp});
      advance(1);
      continue;
    }
    throw ParseError(sp, std::string("unexpected character '") + c + "'");
  }
  out.push_back({Token::End, "", {line, col}});
  return out;
}

const std::set<std::string>& keywords() {
  static const std::set<std::string> kw{"signature", "sorts", "pure",   "effect", "higher_order", "def",
                                        "return",    "init",  "docase", "case",   "pcase",        "iter",
                                        "in",        "app",   "inl",    "inr",    "fun",          "inj",
                                        "nat"};
  return kw;
}

class Parser {
 public:
  Parser(const std::string& src, Signature sig) : toks_(lex(src)), sig_(std::move(sig)) {}

  Program program() {
    Program prog;
    if (is_ident("signature")) signature();
    prog.sig = sig_;
    while (!at_end()) prog.defs.push_back(def(prog));
    return prog;
  }

  CPtr comp_only() {
    CPtr p = comp();
    expect_end();
    return p;
  }
  VPtr value_only() {
    VPtr v = value();
    expect_end();
    return v;
  }
  TypePtr type_only() {
    TypePtr t = type();
    expect_end();
    return t;
  }

 private:
  std::vector<Token> toks_;
  size_t pos_ = 0;
  Signature sig_;

  const Token& peek(size_t k = 0) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }
  bool at_end() const { return peek().kind == Token::End; }
  bool is_sym(const std::string& s, size_t k = 0) const { return peek(k).kind == Token::Sym && peek(k).text == s; }
  bool is_ident(const std::string& s, size_t k = 0) const {
    return peek(k).kind == Token::Ident && peek(k).text == s;
  }
  [[noreturn]] void fail(const std::string& msg) const {
    const Token& t = peek();
    std::string got = t.kind == Token::End ? "end of input" : "'" + t.text + "'";
    throw ParseError(t.span, msg + ", got " + got);
  }
  Span span() const { return peek().span; }
  void expect_sym(const std::string& s) {
    if (!is_sym(s)) fail("expected '" + s + "'");
    ++pos_;
  }
  void expect_kw(const std::string& s) {
    if (!is_ident(s)) fail("expected '" + s + "'");
    ++pos_;
  }
  void expect_end() {
    if (!at_end()) fail("expected end of input");
  }
  std::string name() {
    if (peek().kind != Token::Ident || keywords().count(peek().text)) fail("expected a name");
    return toks_[pos_++].text;
  }
  int number() {
    if (peek().kind != Token::Number) fail("expected a number");
    return std::stoi(toks_[pos_++].text);
  }

  // ---- signature ----

  void declare(const std::string& op, Span sp) {
    if (sig_.pure_ops.count(op) || sig_.effect_ops.count(op)) throw ParseError(sp, "duplicate op '" + op + "'");
  }

  void signature() {
    expect_kw("signature");
    expect_sym("{");
    while (!is_sym("}")) {
      if (is_ident("sorts")) {
        ++pos_;
        while (!is_sym(";")) {
          Span sp = span();
          std::string s = name();
          if (sig_.has_sort(s)) throw ParseError(sp, "duplicate sort '" + s + "'");
          sig_.sorts.push_back(s);
          if (is_sym(",")) ++pos_;
        }
      } else if (is_ident("pure")) {
        ++pos_;
        Span sp = span();
        std::string op = name();
        declare(op, sp);
        expect_sym(":");
        TypePtr a = type();
        expect_sym("->");
        TypePtr b = type();
        sig_.pure_ops[op] = {a, b};
      } else if (is_ident("effect")) {
        ++pos_;
        Span sp = span();
        std::string op = name();
        declare(op, sp);
        expect_sym(":");
        TypePtr a = type();
        expect_sym("->");
        TypePtr b = type();
        expect_sym("|>");
        TypePtr c = type();
        sig_.effect_ops[op] = {a, b, c};
      } else if (is_ident("higher_order")) {
        ++pos_;
        sig_.higher_order = true;
      } else {
        fail("expected a signature item");
      }
      expect_sym(";");
    }
    expect_sym("}");
  }

  // ---- types ----

  TypePtr type() {
    TypePtr t = prod_type();
    while (is_sym("+")) {
      ++pos_;
      t = t_sum(t, prod_type());
    }
    return t;
  }

  TypePtr prod_type() {
    TypePtr t = atom_type();
    while (is_sym("*")) {
      ++pos_;
      t = t_prod(t, atom_type());
    }
    return t;
  }

  TypePtr atom_type() {
    Span sp = span();
    if (peek().kind == Token::Number) {
      int n = number();
      if (n == 0) return t_zero();
      if (n == 1) return t_unit();
      throw ParseError(sp, "only 0 and 1 are numeric types; use nat(n)");
    }
    if (is_ident("nat")) {
      ++pos_;
      expect_sym("(");
      int n = number();
      expect_sym(")");
      return t_nat(n);
    }
    if (is_sym("(")) {
      ++pos_;
      TypePtr t = type();
      if (is_sym("->")) {
        if (!sig_.higher_order) throw ParseError(sp, "function types need higher_order in the signature");
        ++pos_;
        TypePtr b = type();
        expect_sym("|>");
        TypePtr c = type();
        t = t_arrow(t, b, c);
      }
      expect_sym(")");
      return t;
    }
    std::string s = name();
    if (!sig_.has_sort(s)) throw ParseError(sp, "unknown sort '" + s + "'");
    return t_sort(s);
  }

  // ---- values ----

  VPtr value() {
    Span sp = span();
    if (is_ident("inl") || is_ident("inr")) {
      bool left = peek().text == "inl";
      ++pos_;
      VPtr a = value();
      return left ? v_inl(a, nullptr, sp) : v_inr(a, nullptr, sp);
    }
    if (is_ident("inj")) {
      ++pos_;
      expect_sym("(");
      int i = number();
      expect_sym(",");
      int n = number();
      expect_sym(")");
      if (i >= n) throw ParseError(sp, "injection index out of range");
      return v_inj(i, n, value(), sp);
    }
    if (is_ident("fun")) {
      if (!sig_.higher_order) throw ParseError(sp, "lambda needs higher_order in the signature");
      ++pos_;
      expect_sym("(");
      std::string x = name();
      expect_sym(":");
      TypePtr a = type();
      expect_sym(")");
      expect_sym(":");
      TypePtr b = type();
      expect_sym("|>");
      TypePtr c = type();
      expect_sym("=>");
      return v_lambda(x, t_arrow(a, b, c), comp(), sp);
    }
    if (is_sym("<")) {
      ++pos_;
      VPtr a = value();
      expect_sym(",");
      VPtr b = value();
      expect_sym(">");
      return v_pair(a, b, sp);
    }
    if (is_sym("(")) {
      ++pos_;
      VPtr v = value();
      if (is_sym(":")) {
        if (v->kind != ValTerm::Inl && v->kind != ValTerm::Inr)
          throw ParseError(sp, "only injections take a type ascription");
        ++pos_;
        TypePtr t = type();
        v = v->kind == ValTerm::Inl ? v_inl(v->a, t, v->span) : v_inr(v->a, t, v->span);
      }
      expect_sym(")");
      return v;
    }
    std::string x = name();
    if (is_sym("(") && sig_.pure_ops.count(x)) {
      ++pos_;
      VPtr a = value();
      expect_sym(")");
      return v_pure(x, a, sp);
    }
    return v_var(x, sp);
  }

  // ---- computations ----

  void ascribe(CPtr& p) {
    if (!is_sym(":")) return;
    ++pos_;
    TypePtr b = type();
    expect_sym("|>");
    TypePtr c = type();
    p = c_annotate(p, b, c);
  }

  void branches(std::string& x, CPtr& q, std::string& y, CPtr& r) {
    expect_sym("{");
    expect_kw("inl");
    x = name();
    expect_sym("->");
    q = comp();
    expect_sym("|");
    expect_kw("inr");
    y = name();
    expect_sym("->");
    r = comp();
    expect_sym("}");
  }

  CPtr comp() {
    Span sp = span();
    if (is_ident("return") || is_ident("init")) {
      bool ret = peek().text == "return";
      ++pos_;
      VPtr v = value();
      CPtr p = ret ? c_return(v, sp) : c_init(v, sp);
      ascribe(p);
      return p;
    }
    if (is_ident("docase")) {
      ++pos_;
      CPtr s = comp();
      std::string x, y;
      CPtr q, r;
      branches(x, q, y, r);
      return c_docase(s, x, q, y, r, sp);
    }
    if (is_ident("case")) {
      ++pos_;
      VPtr v = value();
      std::string x, y;
      CPtr q, r;
      branches(x, q, y, r);
      return c_case(v, x, q, y, r, sp);
    }
    if (is_ident("pcase")) {
      ++pos_;
      VPtr v = value();
      expect_sym("{");
      expect_sym("<");
      Span bsp = span();
      std::string x = name();
      expect_sym(",");
      std::string y = name();
      if (x == y) throw ParseError(bsp, "duplicate binder '" + x + "'");
      expect_sym(">");
      expect_sym("->");
      CPtr q = comp();
      expect_sym("}");
      return c_pcase(v, x, y, q, sp);
    }
    if (is_ident("iter")) {
      ++pos_;
      std::string x = name();
      TypePtr a;
      if (is_sym(":")) {
        ++pos_;
        a = type();
      }
      expect_sym("<-");
      CPtr p = comp();
      expect_kw("in");
      CPtr q = comp();
      return c_iter(x, a, p, q, sp);
    }
    if (is_ident("app")) {
      ++pos_;
      VPtr f = value();
      VPtr a = value();
      return c_app(f, a, sp);
    }
    if (is_sym("(")) {
      ++pos_;
      CPtr p = comp();
      ascribe(p);
      expect_sym(")");
      return p;
    }
    if (peek().kind == Token::Ident && !keywords().count(peek().text) && is_sym("(", 1)) {
      std::string op = name();
      if (!sig_.effect_ops.count(op)) throw ParseError(sp, "unknown effect op '" + op + "'");
      expect_sym("(");
      VPtr a = value();
      expect_sym(")");
      return c_eff(op, a, sp);
    }
    fail("expected a computation");
  }

  // ---- definitions ----

  Def def(const Program& prog) {
    Def d;
    d.span = span();
    expect_kw("def");
    Span nsp = span();
    d.name = name();
    if (prog.find(d.name)) throw ParseError(nsp, "duplicate definition '" + d.name + "'");
    expect_sym("(");
    while (!is_sym(")")) {
      Span bsp = span();
      std::string x = name();
      for (const auto& [y, _] : d.params)
        if (x == y) throw ParseError(bsp, "duplicate binder '" + x + "'");
      expect_sym(":");
      d.params.emplace_back(x, type());
      if (!is_sym(")")) expect_sym(",");
    }
    expect_sym(")");
    expect_sym(":");
    d.b = type();
    expect_sym("|>");
    d.c = type();
    expect_sym("=");
    d.body = comp();
    if (is_sym(";")) ++pos_;
    return d;
  }
};

}  // namespace

Program parse_program(const std::string& text) { return Parser(text, Signature{}).program(); }

CPtr parse_comp(const std::string& text, const Signature& sig) { return Parser(text, sig).comp_only(); }

VPtr parse_value(const std::string& text, const Signature& sig) { return Parser(text, sig).value_only(); }

TypePtr parse_type(const std::string& text, const Signature& sig) { return Parser(text, sig).type_only(); }

}  // namespace gfgcbv
