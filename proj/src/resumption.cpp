#include <algorithm>
#include <stdexcept>

#include "gfgcbv/instances.hpp"

namespace gfgcbv {

namespace {

int cmp_tree(const Tree& a, const Tree& b);

int cmp_node(const TreeNode& a, const TreeNode& b) {
  if (a.kind != b.kind) return a.kind < b.kind ? -1 : 1;
  switch (a.kind) {
    case TreeNode::Leaf: return compare(a.leaf, b.leaf);
    case TreeNode::Step: {
      int c = a.action.compare(b.action);
      if (c) return c < 0 ? -1 : 1;
      return cmp_tree(a.next, b.next);
    }
    default: return 0;
  }
}

int cmp_tree(const Tree& a, const Tree& b) {
  if (a == b) return 0;
  const auto& x = a->nodes;
  const auto& y = b->nodes;
  size_t n = std::min(x.size(), y.size());
  for (size_t i = 0; i < n; ++i)
    if (int c = cmp_node(x[i], y[i])) return c;
  if (x.size() != y.size()) return x.size() < y.size() ? -1 : 1;
  return 0;
}

Tree relabel(const Tree& t, const Fn& f) {
  std::vector<TreeNode> out;
  for (const auto& n : t->nodes) {
    switch (n.kind) {
      case TreeNode::Leaf: out.push_back({TreeNode::Leaf, f(n.leaf), {}, nullptr}); break;
      case TreeNode::Step: out.push_back({TreeNode::Step, Val(), n.action, relabel(n.next, f)}); break;
      default: out.push_back(n);
    }
  }
  return ResumptionGpm::make_tree(std::move(out));
}

// Replaces leaves: splice(p) returns a tree to graft in place of Leaf(p), or
// nullptr to keep the leaf relabelled by `keep`.
Tree graft(const Tree& t, const std::function<Tree(const Val&)>& splice, const Fn& keep, int depth, int bound) {
  std::vector<TreeNode> out;
  for (const auto& n : t->nodes) {
    switch (n.kind) {
      case TreeNode::Leaf: {
        Tree s = splice(n.leaf);
        if (!s) {
          out.push_back({TreeNode::Leaf, keep(n.leaf), {}, nullptr});
        } else {
          Tree cut = ResumptionGpm::truncate(s, bound - depth);
          out.insert(out.end(), cut->nodes.begin(), cut->nodes.end());
        }
        break;
      }
      case TreeNode::Step:
        out.push_back({TreeNode::Step, Val(), n.action, graft(n.next, splice, keep, depth + 1, bound)});
        break;
      default: out.push_back(n);
    }
  }
  return ResumptionGpm::make_tree(std::move(out));
}

Val wrap(Tree t) { return Val::comp(std::move(t)); }

bool leaves_ok(const Tree& t, const Obj& p, const Gpm& inst, int remaining, bool root) {
  for (const auto& n : t->nodes) {
    switch (n.kind) {
      case TreeNode::Leaf:
        if (!member(n.leaf, p, inst)) return false;
        if (root && !n.leaf.is(Val::Kind::Inl)) return false;
        break;
      case TreeNode::Step:
        if (remaining <= 0 || !leaves_ok(n.next, p, inst, remaining - 1, false)) return false;
        break;
      default: break;
    }
  }
  return true;
}

bool any_leaf(const Tree& t, const std::function<bool(const Val&)>& pred) {
  for (const auto& n : t->nodes) {
    if (n.kind == TreeNode::Leaf && pred(n.leaf)) return true;
    if (n.kind == TreeNode::Step && any_leaf(n.next, pred)) return true;
  }
  return false;
}

std::vector<Tree> trees_upto(int remaining, const std::vector<Val>& leaves, bool root,
                             const std::vector<std::string>& alphabet, const EnumConfig& cfg) {
  std::vector<TreeNode> pool;
  for (const auto& p : leaves)
    if (!root || p.is(Val::Kind::Inl)) pool.push_back({TreeNode::Leaf, p, {}, nullptr});
  pool.push_back({TreeNode::Term, Val(), {}, nullptr});
  if (remaining == 0) {
    pool.push_back({TreeNode::Cut, Val(), {}, nullptr});
  } else {
    auto subs = trees_upto(remaining - 1, leaves, false, alphabet, cfg);
    for (const auto& a : alphabet)
      for (const auto& s : subs) pool.push_back({TreeNode::Step, Val(), a, s});
  }
  std::vector<Val> idx;
  for (size_t i = 0; i < pool.size(); ++i) idx.push_back(Val::num(Rational(static_cast<long>(i))));
  std::vector<Tree> out;
  auto sets = subsets_upto(idx, cfg.max_set);
  // Thin index sets before building trees; inner layers use the inner cap.
  std::vector<Val> keys;
  for (size_t i = 0; i < sets.size(); ++i) keys.push_back(Val::num(Rational(static_cast<long>(i))));
  keys = thin(std::move(keys), root ? cfg.cap : cfg.inner_cap);
  for (const auto& k : keys) {
    std::vector<TreeNode> ns;
    for (const auto& i : sets[k.rat().get_num().get_ui()]) ns.push_back(pool[i.rat().get_num().get_ui()]);
    out.push_back(ResumptionGpm::make_tree(std::move(ns)));
  }
  return out;
}

void to_json_tree(const Tree& t, Json& arr, const Gpm* inst) {
  for (const auto& n : t->nodes) {
    switch (n.kind) {
      case TreeNode::Leaf:
        if (n.leaf.is(Val::Kind::Inl))
          arr.push_back(Json::array({"done", val_json(n.leaf.child(), inst)}));
        else
          arr.push_back(Json::array({"exit", val_json(n.leaf.child(), inst)}));
        break;
      case TreeNode::Term: arr.push_back("term"); break;
      case TreeNode::Cut: arr.push_back("cut"); break;
      case TreeNode::Step: {
        Json sub = Json::array();
        to_json_tree(n.next, sub, inst);
        arr.push_back(Json::array({"step", n.action, sub}));
        break;
      }
    }
  }
}

}  // namespace

int TreeData::cmp_same(const CompData& o) const {
  const auto& y = static_cast<const TreeData&>(o).nodes;
  size_t n = std::min(nodes.size(), y.size());
  for (size_t i = 0; i < n; ++i)
    if (int c = cmp_node(nodes[i], y[i])) return c;
  if (nodes.size() != y.size()) return nodes.size() < y.size() ? -1 : 1;
  return 0;
}

Tree ResumptionGpm::make_tree(std::vector<TreeNode> nodes) {
  std::sort(nodes.begin(), nodes.end(), [](const TreeNode& a, const TreeNode& b) { return cmp_node(a, b) < 0; });
  nodes.erase(std::unique(nodes.begin(), nodes.end(),
                          [](const TreeNode& a, const TreeNode& b) { return cmp_node(a, b) == 0; }),
              nodes.end());
  auto d = std::make_shared<TreeData>();
  d->nodes = std::move(nodes);
  return d;
}

Tree ResumptionGpm::tree(const Val& v) {
  return std::static_pointer_cast<const TreeData>(v.data_ptr());
}

Tree ResumptionGpm::truncate(const Tree& t, int remaining) {
  std::vector<TreeNode> out;
  bool changed = false;
  for (const auto& n : t->nodes) {
    if (n.kind == TreeNode::Step) {
      if (remaining <= 0) {
        out.push_back({TreeNode::Cut, Val(), {}, nullptr});
        changed = true;
      } else {
        Tree s = truncate(n.next, remaining - 1);
        changed |= s != n.next;
        out.push_back({TreeNode::Step, Val(), n.action, s});
      }
    } else {
      out.push_back(n);
    }
  }
  return changed ? make_tree(std::move(out)) : t;
}

namespace {

std::vector<Tree> follow(const Tree& t, const Word& w) {
  std::vector<Tree> layer{t};
  for (const auto& a : w) {
    std::vector<Tree> next;
    for (const auto& x : layer)
      for (const auto& n : x->nodes)
        if (n.kind == TreeNode::Step && n.action == a) next.push_back(n.next);
    layer = std::move(next);
  }
  return layer;
}

}  // namespace

bool ResumptionGpm::has_path(const Tree& t, const Word& w) { return !follow(t, w).empty(); }

std::vector<Val> ResumptionGpm::leaves_after(const Tree& t, const Word& w) {
  std::vector<Val> out;
  for (const auto& x : follow(t, w))
    for (const auto& n : x->nodes)
      if (n.kind == TreeNode::Leaf) out.push_back(n.leaf);
  return out;
}

Val ResumptionGpm::eta(const Val& a) const { return wrap(make_tree({{TreeNode::Leaf, Val::inl(a), {}, nullptr}})); }

Val ResumptionGpm::map(const Fn& f, const Fn& g, const Val& v) const { return wrap(relabel(tree(v), sum_map(f, g))); }

Val ResumptionGpm::upsilon(const Val& v) const {
  // A + (B + C) → (A + B) + C on every leaf.
  return wrap(relabel(tree(v), [](const Val& p) {
    if (p.is(Val::Kind::Inl)) return Val::inl(Val::inl(p.child()));
    const Val& q = p.child();
    if (q.is(Val::Kind::Inl)) return Val::inl(Val::inr(q.child()));
    return Val::inr(q.child());
  }));
}

Val ResumptionGpm::xi(const Val& v) const {
  auto splice = [](const Val& p) -> Tree {
    if (!p.is(Val::Kind::Inl)) return nullptr;
    return relabel(tree(p.child()), sum_map(id_fn, inl_fn));
  };
  auto keep = [](const Val& p) { return Val::inr(Val::inr(p.child())); };
  return wrap(graft(tree(v), splice, keep, 0, depth_));
}

Val ResumptionGpm::zeta(const Val& v) const {
  auto splice = [](const Val& p) -> Tree {
    if (!p.is(Val::Kind::Inr)) return nullptr;
    return relabel(tree(p.child()), [](const Val& q) { return Val::inr(q); });
  };
  return wrap(graft(tree(v), splice, id_fn, 0, depth_));
}

Val ResumptionGpm::wave_tau(const Val& x, const Val& v) const {
  return wrap(relabel(tree(v), [x](const Val& p) {
    return p.is(Val::Kind::Inl) ? Val::inl(Val::pair(x, p.child())) : Val::inr(Val::pair(x, p.child()));
  }));
}

std::optional<Val> ResumptionGpm::eps_inverse(const Val& v) const {
  const Tree& t = tree(v);
  if (any_leaf(t, [](const Val& p) { return !p.is(Val::Kind::Inl); })) return std::nullopt;
  Tree s = relabel(t, [](const Val& p) { return p.child(); });
  for (const auto& n : s->nodes)
    if (n.kind == TreeNode::Leaf && !n.leaf.is(Val::Kind::Inl)) return std::nullopt;
  return wrap(s);
}

bool ResumptionGpm::valid(const Val& v, const Obj& y, const Obj& z) const {
  if (!v.is(Val::Kind::Comp) || v.data().tag() != 3) return false;
  return leaves_ok(tree(v), Obj::sum(y, z), *this, depth_, true);
}

std::vector<Val> ResumptionGpm::enumerate(const Obj& y, const Obj& z, const EnumConfig& cfg) const {
  auto leaves = gfgcbv::enumerate(Obj::sum(y, z), *this, cfg.inner());
  std::vector<Val> out;
  for (auto& t : trees_upto(depth_, leaves, true, cfg.alphabet, cfg)) out.push_back(wrap(t));
  return out;
}

bool ResumptionGpm::has_guard(const Val& v) const {
  return any_leaf(tree(v), [](const Val& p) { return p.is(Val::Kind::Inr); });
}

Val ResumptionGpm::cut(const Val& v, const std::function<std::optional<Val>(const Val&)>& keep) const {
  std::function<Tree(const Tree&)> go = [&](const Tree& t) {
    std::vector<TreeNode> out;
    for (const auto& n : t->nodes) {
      if (n.kind == TreeNode::Leaf && n.leaf.is(Val::Kind::Inr)) {
        if (auto w = keep(n.leaf.child()))
          out.push_back({TreeNode::Leaf, Val::inr(*w), {}, nullptr});
        else
          out.push_back({TreeNode::Cut, Val(), {}, nullptr});
      } else if (n.kind == TreeNode::Step) {
        out.push_back({TreeNode::Step, Val(), n.action, go(n.next)});
      } else {
        out.push_back(n);
      }
    }
    return make_tree(std::move(out));
  };
  return wrap(go(tree(v)));
}

bool ResumptionGpm::knows_effect(const std::string& op) const {
  return op == "toss" || std::find(alphabet_.begin(), alphabet_.end(), op) != alphabet_.end();
}

std::optional<Val> ResumptionGpm::effect(const std::string& op, const Val& arg) const {
  if (op == "toss")
    return wrap(make_tree({{TreeNode::Leaf, Val::inl(Val::inl(arg)), {}, nullptr},
                           {TreeNode::Leaf, Val::inl(Val::inr(arg)), {}, nullptr}}));
  if (std::find(alphabet_.begin(), alphabet_.end(), op) == alphabet_.end()) return std::nullopt;
  Tree leaf = make_tree({{TreeNode::Leaf, Val::inr(arg), {}, nullptr}});
  if (depth_ < 1) return wrap(make_tree({{TreeNode::Cut, Val(), {}, nullptr}}));
  return wrap(make_tree({{TreeNode::Step, Val(), op, leaf}}));
}

Json ResumptionGpm::to_json(const Val& v) const {
  Json arr = Json::array();
  to_json_tree(tree(v), arr, this);
  return arr;
}

}  // namespace gfgcbv
