#pragma once

#include <gmpxx.h>

#include <array>
#include <functional>
#include <memory>
#include <string>
#include <variant>
#include <vector>

namespace gfgcbv {

using Rational = mpq_class;

std::string rat_str(const Rational& q);  // always "p/q"
Rational parse_rat(const std::string& s);

class Val;

/// Instance-specific payload of an element of Y ± Z.
struct CompData {
  virtual ~CompData() = default;
  virtual int tag() const = 0;
  // Only called when tags agree.
  virtual int cmp_same(const CompData& other) const = 0;
};

struct Closure;

class Val {
 public:
  enum class Kind : unsigned char { Atom, Num, Inl, Inr, Pair, Closure, Comp };

  Val();  // the unit atom "*"
  static Val atom(std::string s);
  static Val num(Rational q);
  static Val inl(Val v);
  static Val inr(Val v);
  static Val pair(Val a, Val b);
  static Val closure(std::shared_ptr<const Closure> c);
  static Val comp(std::shared_ptr<const CompData> c);

  Kind kind() const;
  bool is(Kind k) const { return kind() == k; }
  const std::string& name() const;
  const Rational& rat() const;
  const Val& child() const;  // Inl / Inr payload
  const Val& fst() const;
  const Val& snd() const;
  const Closure& clo() const;
  const CompData& data() const;
  std::shared_ptr<const CompData> data_ptr() const;
  template <class T>
  const T& as() const { return static_cast<const T&>(data()); }

  std::string str() const;

  friend int compare(const Val& a, const Val& b);
  friend bool operator==(const Val& a, const Val& b) { return compare(a, b) == 0; }
  friend bool operator<(const Val& a, const Val& b) { return compare(a, b) < 0; }

 private:
  struct Node;
  explicit Val(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

struct Val::Node {
  Kind kind;
  std::variant<std::monostate, std::string, Rational, std::array<Val, 2>,
               std::shared_ptr<const Closure>, std::shared_ptr<const CompData>>
      data;
};

inline Val::Kind Val::kind() const { return node_->kind; }

using Fn = std::function<Val(const Val&)>;

inline Val unit_val() { return Val(); }
Val id_fn(const Val& v);
Val inl_fn(const Val& v);
Val inr_fn(const Val& v);
Val codiag(const Val& v);  // ∇
[[noreturn]] Val absurd(const Val& v);
Fn sum_map(Fn f, Fn g);     // f + g
Fn cotuple(Fn f, Fn g);     // [f, g]
Fn compose(Fn f, Fn g);     // f ∘ g

/// Carrier descriptor.
class Obj {
 public:
  enum class Kind : unsigned char { Finite, Rat, Empty, Sum, Prod, Guard, Fn };

  Obj();  // Empty
  static Obj finite(std::vector<Val> elems);
  static Obj letter(const std::string& base, int size);  // base0 .. base{size-1}
  static Obj unit();
  static Obj rat();
  static Obj empty();
  static Obj sum(Obj a, Obj b);
  static Obj prod(Obj a, Obj b);
  static Obj guard(Obj y, Obj z);
  static Obj fn();

  Kind kind() const { return node_->kind; }
  bool is(Kind k) const { return node_->kind == k; }
  const std::vector<Val>& elems() const { return node_->elems; }
  const Obj& left() const { return *node_->a; }
  const Obj& right() const { return *node_->b; }
  bool finite_enum() const;  // enumerable without an instance
  std::string str() const;

 private:
  struct Node {
    Kind kind;
    std::vector<Val> elems;
    std::shared_ptr<const Obj> a, b;
  };
  explicit Obj(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

}  // namespace gfgcbv
