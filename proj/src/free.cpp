#include <algorithm>
#include <functional>
#include <map>

#include "polyconduche/errors.hpp"
#include "polyconduche/movement.hpp"

namespace polyconduche {

NormalFormStore::NormalFormStore(ExtensionPtr e) : ext_(std::move(e)) {}

CellIndex NormalFormStore::bound(CellIndex x, unsigned k, Side side) const {
  const unsigned n = ext_->n();
  return k == n ? x : ext_->base().boundary(n, x, k, side);
}

NormalFormStore::Id NormalFormStore::intern(const Node& n) {
  std::uint64_t h = (static_cast<std::uint64_t>(n.kind) << 60) ^ (static_cast<std::uint64_t>(n.payload) << 40) ^
                    (static_cast<std::uint64_t>(n.left) << 20) ^ n.right;
  auto& bucket = buckets_[h];
  for (Id x : bucket) {
    const Node& m = nodes_[x];
    if (m.kind == n.kind && m.payload == n.payload && m.left == n.left && m.right == n.right) return x;
  }
  nodes_.push_back(n);
  bucket.push_back(static_cast<Id>(nodes_.size() - 1));
  return bucket.back();
}

NormalFormStore::Id NormalFormStore::generator(std::size_t g) {
  const Generator& gen = ext_->generators().at(g);
  return intern({TermNode::Gen, static_cast<std::uint32_t>(g), 0, 0, gen.source, gen.target, 0});
}

NormalFormStore::Id NormalFormStore::identity(CellIndex c) { return intern({TermNode::Id, c, 0, 0, c, c, 0}); }

std::optional<NormalFormStore::Id> NormalFormStore::comp(Id a, unsigned k, Id b) {
  const unsigned n = ext_->n();
  const PresentedCategory& c = ext_->base();
  if (k > n || bound(nodes_[a].src, k, Side::Source) != bound(nodes_[b].tgt, k, Side::Target)) return std::nullopt;
  // Unit laws.
  if (is_identity(a) && nodes_[a].payload == c.identity_to(k, bound(nodes_[b].tgt, k, Side::Target), n)) return b;
  if (is_identity(b) && nodes_[b].payload == c.identity_to(k, bound(nodes_[a].src, k, Side::Source), n)) return a;
  // Identity merge.
  if (k < n && is_identity(a) && is_identity(b)) {
    if (auto r = c.comp(n, k, nodes_[a].payload, nodes_[b].payload)) return identity(*r);
  }
  // Right association.
  if (nodes_[a].kind == TermNode::Comp && nodes_[a].payload == k) {
    const Id a1 = nodes_[a].left, a2 = nodes_[a].right;
    return comp(a1, k, *comp(a2, k, b));
  }
  if (k < n && is_identity(a) && nodes_[b].kind == TermNode::Comp && nodes_[b].payload == k &&
      is_identity(nodes_[b].left)) {
    const Id b1 = nodes_[b].left, b2 = nodes_[b].right;
    if (auto merged = c.comp(n, k, nodes_[a].payload, nodes_[b1].payload)) return comp(identity(*merged), k, b2);
  }
  Node node{TermNode::Comp, k, a, b, kNone, kNone, nodes_[a].size + nodes_[b].size + 1};
  if (k == n) {
    node.src = nodes_[b].src;
    node.tgt = nodes_[a].tgt;
  } else {
    node.src = *c.comp(n, k, nodes_[a].src, nodes_[b].src);
    node.tgt = *c.comp(n, k, nodes_[a].tgt, nodes_[b].tgt);
  }
  return intern(node);
}

NormalFormStore::Id NormalFormStore::normalize(const Term& t) {
  std::vector<Id> value(t.nodes().size());
  for (std::size_t i = 0; i < value.size(); ++i) {
    const TermNode& n = t.nodes()[i];
    switch (n.kind) {
      case TermNode::Gen: value[i] = generator(n.payload); break;
      case TermNode::Id: value[i] = identity(n.payload); break;
      case TermNode::Comp: value[i] = *comp(value[n.left], n.payload, value[n.right]); break;
    }
  }
  return value.back();
}

Word NormalFormStore::word(Id x) const {
  const Node& n = nodes_[x];
  switch (n.kind) {
    case TermNode::Gen: return generator_atom(ext_->generators()[n.payload].name);
    case TermNode::Id: return identity_atom(ext_->base().name(ext_->n(), n.payload));
    case TermNode::Comp: break;
  }
  return composite(word(n.left), n.payload, word(n.right));
}

std::vector<std::uint32_t> NormalFormStore::multiset(Id x) const {
  std::vector<std::uint32_t> out;
  std::vector<Id> stack{x};
  while (!stack.empty()) {
    const Node& n = nodes_[stack.back()];
    stack.pop_back();
    if (n.kind == TermNode::Gen) out.push_back(n.payload);
    if (n.kind == TermNode::Comp) {
      stack.push_back(n.left);
      stack.push_back(n.right);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

std::string unused_name(const PresentedCategory& c, unsigned level, const std::string& want) {
  if (!c.find(level, want)) return want;
  for (int i = 2;; ++i) {
    std::string s = want + "_" + std::to_string(i);
    if (!c.find(level, s)) return s;
  }
}

}  // namespace

PresentedCategory free_category(const ExtensionPtr& e, std::size_t max_cells, const SearchBounds& bounds) {
  const unsigned n = e->n();
  const PresentedCategory& base = e->base();
  NormalFormStore store(e);

  std::vector<NormalFormStore::Id> reps;
  std::map<NormalFormStore::Id, CellIndex> class_of;
  std::map<std::tuple<CellIndex, CellIndex, std::vector<std::uint32_t>>, std::vector<CellIndex>> by_invariant;

  auto classify = [&](NormalFormStore::Id x) -> CellIndex {
    if (auto it = class_of.find(x); it != class_of.end()) return it->second;
    auto key = std::make_tuple(store.src(x), store.tgt(x), store.multiset(x));
    auto& same = by_invariant[key];
    // Over a 0-category distinct normal forms are inequivalent; above that
    // only the boundary and generator invariants separate classes.
    if (n > 0 && !same.empty()) {
      for (CellIndex c : same) {
        auto r = equivalent(store.term(x), store.term(reps[c]), bounds);
        if (r.verdict == EquivalenceResult::Witness) {
          class_of[x] = c;
          return c;
        }
      }
      throw Error("free category: cannot decide whether " + serialize(store.word(x)) + " and " +
                  serialize(store.word(reps[same.front()])) + " are equivalent");
    }
    if (reps.size() >= max_cells) throw Error("free category exceeds " + std::to_string(max_cells) + " cells");
    const auto c = static_cast<CellIndex>(reps.size());
    reps.push_back(x);
    class_of[x] = c;
    same.push_back(c);
    return c;
  };

  std::vector<CellIndex> identity_class(base.cell_count(n));
  for (CellIndex x = 0; x < base.cell_count(n); ++x) identity_class[x] = classify(store.identity(x));
  for (std::size_t g = 0; g < e->generators().size(); ++g) classify(store.generator(g));

  std::map<std::tuple<CellIndex, unsigned, CellIndex>, CellIndex> table;
  auto visit = [&](CellIndex a, CellIndex b) {
    for (unsigned k = 0; k <= n; ++k)
      if (auto r = store.comp(reps[a], k, reps[b])) table[{a, k, b}] = classify(*r);
  };
  for (CellIndex m = 0; m < reps.size(); ++m) {
    for (CellIndex j = 0; j < m; ++j) {
      visit(m, j);
      visit(j, m);
    }
    visit(m, m);
  }

  PresentedCategory out(n + 1);
  for (unsigned l = 0; l <= n; ++l)
    for (CellIndex x = 0; x < base.cell_count(l); ++x) out.add_cell(l, base.name(l, x));
  std::vector<std::string> names(reps.size());
  for (CellIndex x = 0; x < base.cell_count(n); ++x) names[identity_class[x]] = "id_" + base.name(n, x);
  for (std::size_t g = 0; g < e->generators().size(); ++g)
    names[class_of.at(store.generator(g))] = e->generators()[g].name;
  for (CellIndex c = 0; c < reps.size(); ++c) {
    if (!names[c].empty()) continue;
    // Composites: chains of generators are named by concatenation in
    // dimension one, other composites spell out their top-level split.
    std::function<std::string(NormalFormStore::Id)> spell = [&](NormalFormStore::Id x) -> std::string {
      Term t = store.term(x);
      const TermNode& r = t.root_node();
      if (r.kind != TermNode::Comp) return names[class_of.at(x)];
      auto l = store.normalize(t.subterm(r.left));
      auto rr = store.normalize(t.subterm(r.right));
      std::string ln = class_of.count(l) ? names[class_of.at(l)] : spell(l);
      std::string rn = class_of.count(rr) ? names[class_of.at(rr)] : spell(rr);
      return n == 0 ? ln + rn : ln + "_" + std::to_string(r.payload) + "_" + rn;
    };
    names[c] = spell(reps[c]);
  }
  for (CellIndex c = 0; c < reps.size(); ++c) out.add_cell(n + 1, unused_name(out, n + 1, names[c]));
  for (unsigned l = 1; l <= n; ++l)
    for (CellIndex x = 0; x < base.cell_count(l); ++x) out.set_boundary(l, x, base.src(l, x), base.tgt(l, x));
  for (unsigned l = 0; l < n; ++l)
    for (CellIndex x = 0; x < base.cell_count(l); ++x) out.set_identity(l, x, base.id(l, x));
  for (CellIndex x = 0; x < base.cell_count(n); ++x) out.set_identity(n, x, identity_class[x]);
  for (CellIndex c = 0; c < reps.size(); ++c) out.set_boundary(n + 1, c, store.src(reps[c]), store.tgt(reps[c]));
  for (unsigned l = 1; l <= n; ++l)
    for (unsigned k = 0; k < l; ++k)
      for (const auto& row : base.entries(l, k)) out.set_composite(l, k, row.left, row.right, row.result);
  for (const auto& [key, r] : table) out.set_composite(n + 1, std::get<1>(key), std::get<0>(key), std::get<2>(key), r);
  return out;
}

namespace {

ExtensionPtr extend(const PresentedCategory& base, const std::vector<std::array<std::string, 3>>& gens) {
  return make_extension(std::make_shared<const PresentedCategory>(base), gens);
}

PresentedCategory discrete(const std::vector<std::string>& objects) {
  PresentedCategory c(0);
  for (const auto& o : objects) c.add_cell(0, o);
  return c;
}

std::string lv(const char* prefix, unsigned j) { return prefix + std::to_string(j); }

}  // namespace

PresentedCategory globe(unsigned n) {
  if (n == 0) return discrete({"g"});
  PresentedCategory c = discrete({"s0", "t0"});
  for (unsigned j = 1; j < n; ++j)
    c = free_category(extend(c, {{lv("s", j), lv("s", j - 1), lv("t", j - 1)},
                                 {lv("t", j), lv("s", j - 1), lv("t", j - 1)}}));
  return free_category(extend(c, {{"g", lv("s", n - 1), lv("t", n - 1)}}));
}

PresentedCategory composable_pair(unsigned n, unsigned k) {
  if (k >= n) throw LevelError("composable pair needs k < n");
  PresentedCategory c = k == 0 ? discrete({"s0", "m0", "t0"}) : discrete({"s0", "t0"});
  for (unsigned j = 1; j < k; ++j)
    c = free_category(extend(c, {{lv("s", j), lv("s", j - 1), lv("t", j - 1)},
                                 {lv("t", j), lv("s", j - 1), lv("t", j - 1)}}));
  if (k > 0)
    c = free_category(extend(c, {{lv("s", k), lv("s", k - 1), lv("t", k - 1)},
                                 {lv("m", k), lv("s", k - 1), lv("t", k - 1)},
                                 {lv("t", k), lv("s", k - 1), lv("t", k - 1)}}));
  // y runs from s_k to m_k, x from m_k to t_k.
  std::string xs = lv("m", k), xt = lv("t", k), ys = lv("s", k), yt = lv("m", k);
  for (unsigned j = k + 1; j < n; ++j) {
    c = free_category(extend(c, {{"xs" + std::to_string(j), xs, xt},
                                 {"xt" + std::to_string(j), xs, xt},
                                 {"ys" + std::to_string(j), ys, yt},
                                 {"yt" + std::to_string(j), ys, yt}}));
    xs = "xs" + std::to_string(j);
    xt = "xt" + std::to_string(j);
    ys = "ys" + std::to_string(j);
    yt = "yt" + std::to_string(j);
  }
  return free_category(extend(c, {{"x", xs, xt}, {"y", ys, yt}}));
}

}  // namespace polyconduche
