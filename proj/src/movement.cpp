#include "polyconduche/movement.hpp"

#include <algorithm>
#include <limits>
#include <tuple>

#include "polyconduche/errors.hpp"

namespace polyconduche {

const char* to_string(Direction d) {
  switch (d) {
    case Direction::Forward: return "forward";
    case Direction::Backward: return "backward";
    case Direction::Both: return "both";
  }
  return "?";
}

const char* to_string(EquivalenceResult::Verdict v) {
  switch (v) {
    case EquivalenceResult::Witness: return "Witness";
    case EquivalenceResult::Distinct: return "Distinct";
    case EquivalenceResult::Unknown: return "Unknown";
  }
  return "?";
}

namespace {

/// A movement before the output has been re-checked: the token range of the
/// redex and the word replacing it.
struct Rewrite {
  int movement_case;
  Direction direction;
  std::uint32_t begin, end;
  Word replacement;
};

class RewriteFinder {
 public:
  RewriteFinder(const Term& t, std::size_t max_size)
      : t_(t), e_(t.extension()), c_(e_.base()), n_(e_.n()), max_size_(max_size) {}

  std::vector<Rewrite> run(Direction direction) {
    const bool fwd = direction != Direction::Backward;
    const bool bwd = direction != Direction::Forward;
    for (int i = 0; i < static_cast<int>(t_.nodes().size()); ++i) {
      if (fwd) forward(i);
      if (bwd) backward(i);
    }
    std::stable_sort(out_.begin(), out_.end(), [](const Rewrite& a, const Rewrite& b) {
      return std::tie(a.movement_case, a.begin) < std::tie(b.movement_case, b.begin);
    });
    return std::move(out_);
  }

 private:
  const TermNode& node(int i) const { return t_.nodes()[i]; }
  Word w(int i) const { return t_.word().slice(node(i).begin, node(i).end); }
  bool is_comp(int i, unsigned k) const { return node(i).kind == TermNode::Comp && node(i).payload == k; }
  bool is_identity(int i) const { return node(i).kind == TermNode::Id; }
  CellIndex bound(CellIndex x, unsigned k, Side side) const { return k == n_ ? x : c_.boundary(n_, x, k, side); }
  Word unit(CellIndex c) const { return identity_atom(c_.name(n_, c)); }
  bool fits(int grow) const { return t_.size() + grow <= max_size_; }

  void emit(int movement_case, Direction d, int i, Word replacement) {
    out_.push_back({movement_case, d, node(i).begin, node(i).end, std::move(replacement)});
  }

  void forward(int i) {
    const TermNode& e = node(i);
    if (e.kind != TermNode::Comp) return;
    const unsigned k = e.payload;
    const int l = e.left, r = e.right;
    if (is_comp(l, k)) emit(1, Direction::Forward, i, composite(w(node(l).left), k, composite(w(node(l).right), k, w(r))));
    if (is_identity(l) && node(l).payload == c_.identity_to(k, bound(node(r).tgt, k, Side::Target), n_))
      emit(2, Direction::Forward, i, w(r));
    if (is_identity(r) && node(r).payload == c_.identity_to(k, bound(node(l).src, k, Side::Source), n_))
      emit(3, Direction::Forward, i, w(l));
    if (k < n_ && is_identity(l) && is_identity(r)) {
      if (auto cd = c_.comp(n_, k, node(l).payload, node(r).payload)) emit(4, Direction::Forward, i, unit(*cd));
    }
    // ((x *j y) *k (z *j t)) with k < j.
    if (node(l).kind == TermNode::Comp && node(r).kind == TermNode::Comp && node(l).payload == node(r).payload &&
        k < node(l).payload) {
      const unsigned j = node(l).payload;
      const int x = node(l).left, y = node(l).right, z = node(r).left, tt = node(r).right;
      emit(5, Direction::Forward, i, composite(composite(w(x), k, w(z)), j, composite(w(y), k, w(tt))));
    }
  }

  void backward(int i) {
    const TermNode& e = node(i);
    if (e.kind == TermNode::Comp) {
      const unsigned k = e.payload;
      const int l = e.left, r = e.right;
      if (is_comp(r, k))
        emit(1, Direction::Backward, i, composite(composite(w(l), k, w(node(r).left)), k, w(node(r).right)));
      // ((x *j z) *k (y *j t)) -> ((x *k y) *j (z *k t)) with j < k, when well formed.
      if (node(l).kind == TermNode::Comp && node(r).kind == TermNode::Comp && node(l).payload == node(r).payload &&
          node(l).payload < k) {
        const unsigned j = node(l).payload;
        const int x = node(l).left, z = node(l).right, y = node(r).left, tt = node(r).right;
        if (bound(node(x).src, k, Side::Source) == bound(node(y).tgt, k, Side::Target) &&
            bound(node(z).src, k, Side::Source) == bound(node(tt).tgt, k, Side::Target))
          emit(5, Direction::Backward, i, composite(composite(w(x), k, w(y)), j, composite(w(z), k, w(tt))));
      }
    }
    if (fits(1)) {
      for (unsigned k = 0; k <= n_; ++k)
        emit(2, Direction::Backward, i, composite(unit(c_.identity_to(k, bound(e.tgt, k, Side::Target), n_)), k, w(i)));
      for (unsigned k = 0; k <= n_; ++k)
        emit(3, Direction::Backward, i, composite(w(i), k, unit(c_.identity_to(k, bound(e.src, k, Side::Source), n_))));
      if (e.kind == TermNode::Id)
        for (unsigned k = 0; k < n_; ++k)
          for (auto [c, d] : c_.factorizations(n_, k, e.payload)) emit(4, Direction::Backward, i, composite(unit(c), k, unit(d)));
    }
  }

  const Term& t_;
  const CellularExtension& e_;
  const PresentedCategory& c_;
  unsigned n_;
  std::size_t max_size_;
  std::vector<Rewrite> out_;
};

constexpr std::size_t kNoCap = std::numeric_limits<std::size_t>::max() / 2;

Word splice(const Word& w, std::uint32_t begin, std::uint32_t end, const Word& replacement) {
  Word out;
  out.tokens.reserve(w.length() - (end - begin) + replacement.length());
  out.tokens.insert(out.tokens.end(), w.tokens.begin(), w.tokens.begin() + begin);
  out.tokens.insert(out.tokens.end(), replacement.tokens.begin(), replacement.tokens.end());
  out.tokens.insert(out.tokens.end(), w.tokens.begin() + end, w.tokens.end());
  return out;
}

MovementStep materialize(const Term& t, const Rewrite& r) {
  Term result = check_term(t.extension_ptr(), splice(t.word(), r.begin, r.end, r.replacement));
  const auto out_end = static_cast<std::uint32_t>(r.begin + r.replacement.length());
  ElementaryMovement m{t.word().slice(0, r.begin),
                       t.word().slice(r.end, t.length()),
                       t.subterm(t.node_at({r.begin, r.end})),
                       result.subterm(result.node_at({r.begin, out_end})),
                       r.movement_case,
                       r.direction};
  return {std::move(m), std::move(result)};
}

}  // namespace

std::vector<MovementStep> enumerate_movements(const Term& t, Direction direction) {
  std::vector<MovementStep> out;
  for (const Rewrite& r : RewriteFinder(t, kNoCap).run(direction)) out.push_back(materialize(t, r));
  return out;
}

Term apply_movement(const Term& t, const ElementaryMovement& m) {
  if (t.word() != m.input()) throw Stale("movement does not apply to " + t.str());
  return check_term(t.extension_ptr(), m.output());
}

Term reduce(const Term& t) {
  Term cur = t;
  for (;;) {
    auto rewrites = RewriteFinder(cur, kNoCap).run(Direction::Forward);
    // Leftmost innermost: the redex that closes first.
    const Rewrite* best = nullptr;
    for (const Rewrite& r : rewrites) {
      if (r.movement_case < 2 || r.movement_case > 4) continue;
      if (!best || std::tie(r.end, r.movement_case) < std::tie(best->end, best->movement_case)) best = &r;
    }
    if (!best) return cur;
    cur = check_term(cur.extension_ptr(), splice(cur.word(), best->begin, best->end, best->replacement));
  }
}

namespace {

struct Visit {
  std::string parent;
  std::size_t dist;
};

struct Frontier {
  std::unordered_map<std::string, Visit> seen;
  std::vector<Term> layer;
  std::size_t depth = 0;
};

bool shorter(const Term& a, const std::string& ka, const Term& b, const std::string& kb) {
  return std::make_tuple(a.length(), std::cref(ka)) < std::make_tuple(b.length(), std::cref(kb));
}

std::vector<std::string> chain_to_root(const Frontier& f, std::string key) {
  std::vector<std::string> out{key};
  while (!f.seen.at(key).parent.empty()) {
    key = f.seen.at(key).parent;
    out.push_back(key);
  }
  return out;
}

}  // namespace

EquivalenceResult equivalent(const Term& u, const Term& v, const SearchBounds& bounds) {
  EquivalenceResult res;
  if (u.source() != v.source() || u.target() != v.target()) {
    res.verdict = EquivalenceResult::Distinct;
    res.reason = "n-boundaries differ";
    return res;
  }
  if (generator_multiset(u) != generator_multiset(v)) {
    res.verdict = EquivalenceResult::Distinct;
    res.reason = "generator multisets differ";
    return res;
  }
  if (u.word() == v.word()) {
    res.verdict = EquivalenceResult::Witness;
    res.witness = EquivalenceWitness{u, v, {}};
    return res;
  }
  const std::size_t cap = std::max(u.size(), v.size()) + bounds.size_slack;
  Frontier a, b;
  a.seen.emplace(u.str(), Visit{"", 0});
  a.layer.push_back(u);
  b.seen.emplace(v.str(), Visit{"", 0});
  b.layer.push_back(v);

  std::optional<std::string> meet;
  while (!meet) {
    res.visited = a.seen.size() + b.seen.size();
    if (a.depth + b.depth >= bounds.max_steps) {
      res.reason = "step bound reached";
      return res;
    }
    if (a.layer.empty() && b.layer.empty()) {
      res.reason = "size-bounded component exhausted";
      return res;
    }
    const bool grow_a = !a.layer.empty() && (b.layer.empty() || a.depth <= b.depth);
    Frontier& x = grow_a ? a : b;
    Frontier& other = grow_a ? b : a;
    std::vector<std::pair<std::string, Term>> next;
    std::vector<std::string> meets;
    for (const Term& t : x.layer) {
      const std::string from = t.str();
      for (const Rewrite& r : RewriteFinder(t, cap).run(Direction::Both)) {
        Word w = splice(t.word(), r.begin, r.end, r.replacement);
        std::string key = serialize(w);
        if (x.seen.count(key)) continue;
        x.seen.emplace(key, Visit{from, x.depth + 1});
        if (other.seen.count(key)) meets.push_back(key);
        next.emplace_back(std::move(key), check_term(t.extension_ptr(), w));
        if (a.seen.size() + b.seen.size() > bounds.max_visited) {
          res.visited = a.seen.size() + b.seen.size();
          res.reason = "visited bound reached";
          return res;
        }
      }
    }
    ++x.depth;
    if (!meets.empty()) {
      auto score = [&](const std::string& k) {
        return std::make_tuple(a.seen.at(k).dist + b.seen.at(k).dist, tokenize(k).length(), k);
      };
      meet = *std::min_element(meets.begin(), meets.end(),
                               [&](const std::string& p, const std::string& q) { return score(p) < score(q); });
      break;
    }
    std::sort(next.begin(), next.end(),
              [](const auto& p, const auto& q) { return shorter(p.second, p.first, q.second, q.first); });
    x.layer.clear();
    for (auto& [k, t] : next) x.layer.push_back(std::move(t));
  }
  res.visited = a.seen.size() + b.seen.size();

  std::vector<std::string> words = chain_to_root(a, *meet);
  std::reverse(words.begin(), words.end());
  std::vector<std::string> tail = chain_to_root(b, *meet);
  words.insert(words.end(), tail.begin() + 1, tail.end());

  EquivalenceWitness wit{u, v, {}};
  Term cur = u;
  for (std::size_t i = 1; i < words.size(); ++i) {
    bool found = false;
    for (const Rewrite& r : RewriteFinder(cur, cap).run(Direction::Both)) {
      if (serialize(splice(cur.word(), r.begin, r.end, r.replacement)) != words[i]) continue;
      MovementStep step = materialize(cur, r);
      wit.path.push_back(std::move(step.movement));
      cur = std::move(step.result);
      found = true;
      break;
    }
    if (!found) throw Error("internal: witness reconstruction failed at " + words[i]);
  }
  res.verdict = EquivalenceResult::Witness;
  res.witness = std::move(wit);
  return res;
}

bool replay_witness(const EquivalenceWitness& w) {
  Term cur = w.from;
  for (const auto& m : w.path) {
    try {
      cur = apply_movement(cur, m);
    } catch (const Stale&) {
      return false;
    }
  }
  return cur.word() == w.to.word();
}

CellIndex class_boundary(const Term& t, Side side) { return side == Side::Source ? t.source() : t.target(); }

Term compose_classes(const Term& t1, unsigned k, const Term& t2) {
  if (t1.extension_ptr() != t2.extension_ptr()) throw BoundaryMismatch("terms over different extensions");
  const unsigned n = t1.extension().n();
  if (k > n) throw LevelError("composition level " + std::to_string(k) + " above " + std::to_string(n));
  if (term_boundary(t1, k, Side::Source) != term_boundary(t2, k, Side::Target))
    throw BoundaryMismatch("classes are not composable at level " + std::to_string(k));
  return check_term(t1.extension_ptr(), composite(t1.word(), k, t2.word()));
}

CellIndex extend_functor(const CellularExtension& e, const PresentedCategory& d, const OmegaFunctor& base,
                         const std::vector<CellIndex>& phi, const Term& t) {
  const unsigned n = e.n();
  if (d.dimension() < n + 1) throw LevelError("target category lacks level " + std::to_string(n + 1));
  if (phi.size() != e.generators().size()) throw SchemaError("generator assignment is partial");
  std::vector<CellIndex> value(t.nodes().size());
  for (std::size_t i = 0; i < value.size(); ++i) {
    const TermNode& node = t.nodes()[i];
    switch (node.kind) {
      case TermNode::Gen: value[i] = phi[node.payload]; break;
      case TermNode::Id: value[i] = d.id(n, base(n, node.payload)); break;
      case TermNode::Comp: {
        auto r = d.comp(n + 1, node.payload, value[node.left], value[node.right]);
        if (!r)
          throw UndefinedComposite(d.name(n + 1, value[node.left]) + " *" + std::to_string(node.payload) + " " +
                                   d.name(n + 1, value[node.right]));
        value[i] = *r;
      }
    }
  }
  return value.back();
}

}  // namespace polyconduche
