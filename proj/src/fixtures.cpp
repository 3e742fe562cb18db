#include "polyconduche/fixtures.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "polyconduche/errors.hpp"
#include "polyconduche/movement.hpp"

namespace polyconduche {

namespace {

std::string fresh_name(const PresentedCategory& c, unsigned level, const std::string& want) {
  if (!c.find(level, want)) return want;
  for (int i = 2;; ++i) {
    std::string s = want + "_" + std::to_string(i);
    if (!c.find(level, s)) return s;
  }
}

std::size_t pick(std::mt19937_64& rng, std::size_t n) { return static_cast<std::size_t>(rng() % n); }

}  // namespace

PresentedCategory make_1category(const std::vector<std::string>& objects, const std::vector<ArrowSpec>& arrows,
                                 const std::map<std::pair<std::string, std::string>, std::string>& compose) {
  PresentedCategory c(1);
  for (const auto& o : objects) c.add_cell(0, o);
  for (const auto& o : objects) {
    CellIndex x = c.index(0, o);
    CellIndex i = c.add_cell(1, "id_" + o);
    c.set_boundary(1, i, x, x);
    c.set_identity(0, x, i);
  }
  for (const auto& a : arrows) {
    CellIndex h = c.add_cell(1, a.name);
    c.set_boundary(1, h, c.index(0, a.source), c.index(0, a.target));
  }
  for (CellIndex h = 0; h < c.cell_count(1); ++h) {
    c.set_composite(1, 0, h, c.id(0, c.src(1, h)), h);
    c.set_composite(1, 0, c.id(0, c.tgt(1, h)), h, h);
  }
  for (const auto& [gf, r] : compose) c.set_composite(1, 0, c.index(1, gf.first), c.index(1, gf.second), c.index(1, r));
  return c;
}

PresentedCategory path_category(const std::vector<std::string>& objects, const std::vector<ArrowSpec>& generators) {
  PresentedCategory c(1);
  for (const auto& o : objects) c.add_cell(0, o);
  for (const auto& o : objects) {
    CellIndex x = c.index(0, o);
    CellIndex i = c.add_cell(1, "id_" + o);
    c.set_boundary(1, i, x, x);
    c.set_identity(0, x, i);
  }
  // Paths as generator sequences, first arrow first.
  std::vector<std::vector<std::size_t>> paths;
  std::map<std::vector<std::size_t>, CellIndex> index_of;
  auto add_path = [&](std::vector<std::size_t> p) {
    std::string name;
    for (auto it = p.rbegin(); it != p.rend(); ++it) name += generators[*it].name;
    CellIndex h = c.add_cell(1, fresh_name(c, 1, name));
    c.set_boundary(1, h, c.index(0, generators[p.front()].source), c.index(0, generators[p.back()].target));
    index_of[p] = h;
    paths.push_back(std::move(p));
  };
  for (std::size_t g = 0; g < generators.size(); ++g) add_path({g});
  for (std::size_t i = 0; i < paths.size(); ++i) {
    if (paths.size() > 4096) throw SchemaError("path category is too large or the graph has a cycle");
    for (std::size_t g = 0; g < generators.size(); ++g) {
      if (generators[g].source != generators[paths[i].back()].target) continue;
      auto p = paths[i];
      p.push_back(g);
      if (!index_of.count(p)) add_path(std::move(p));
    }
  }
  for (CellIndex h = 0; h < c.cell_count(1); ++h) {
    c.set_composite(1, 0, h, c.id(0, c.src(1, h)), h);
    c.set_composite(1, 0, c.id(0, c.tgt(1, h)), h, h);
  }
  for (const auto& first : paths)
    for (const auto& second : paths) {
      if (generators[first.back()].target != generators[second.front()].source) continue;
      auto p = first;
      p.insert(p.end(), second.begin(), second.end());
      c.set_composite(1, 0, index_of.at(second), index_of.at(first), index_of.at(p));
    }
  return c;
}

PresentedCategory arrow_category() { return make_1category({"x", "y"}, {{"u", "x", "y"}}, {}); }

PresentedCategory loop_category() {
  return make_1category({"star"}, {{"e", "star", "star"}}, {{{"e", "e"}, "e"}});
}

PresentedCategory terminal_category(unsigned n) {
  PresentedCategory c(n);
  std::string name = "star";
  for (unsigned l = 0; l <= n; ++l) {
    c.add_cell(l, name);
    if (l > 0) {
      c.set_boundary(l, 0, 0, 0);
      c.set_identity(l - 1, 0, 0);
    }
    for (unsigned k = 0; k < l; ++k) c.set_composite(l, k, 0, 0, 0);
    name = "id_" + name;
  }
  return c;
}

PresentedCategory idem_category() {
  PresentedCategory out(2);
  out.add_cell(0, "star");
  out.add_cell(1, "id_star");
  out.add_cell(2, "id_id_star");
  CellIndex g = out.add_cell(2, "g");
  out.set_boundary(1, 0, 0, 0);
  out.set_boundary(2, 0, 0, 0);
  out.set_boundary(2, g, 0, 0);
  out.set_identity(0, 0, 0);
  out.set_identity(1, 0, 0);
  out.set_composite(1, 0, 0, 0, 0);
  for (unsigned k = 0; k < 2; ++k)
    for (CellIndex x = 0; x < 2; ++x)
      for (CellIndex y = 0; y < 2; ++y) out.set_composite(2, k, x, y, (x == g || y == g) ? g : 0);
  return out;
}

ExtensionPtr eh_extension() {
  auto base = std::make_shared<const PresentedCategory>(terminal_category(1));
  return make_extension(base, {{"a", "id_star", "id_star"}, {"b", "id_star", "id_star"}});
}

ExtensionPtr eh_target_extension() {
  auto base = std::make_shared<const PresentedCategory>(terminal_category(1));
  return make_extension(base, {{"c", "id_star", "id_star"}});
}

ExtensionMorphism eh_morphism() {
  auto source = eh_extension();
  auto target = eh_target_extension();
  OmegaFunctor base{source->base_ptr(), target->base_ptr(), {{0}, {0}}};
  ExtensionMorphism f{source, target, base, {0, 0}};
  check_extension_morphism(f);
  return f;
}

PresentedCategory parallel_pair_category() {
  auto base = std::make_shared<const PresentedCategory>(
      make_1category({"x", "y"}, {{"u", "x", "y"}, {"v", "x", "y"}}, {}));
  return free_category(make_extension(base, {{"gamma", "u", "v"}}));
}

PresentedCategory random_1category(std::mt19937_64& rng, unsigned max_objects, unsigned max_arrows) {
  const unsigned kind = static_cast<unsigned>(pick(rng, 4));
  auto object_names = [](unsigned n, const std::string& prefix) {
    std::vector<std::string> out;
    for (unsigned i = 0; i < n; ++i) out.push_back(prefix + std::to_string(i));
    return out;
  };
  if (kind == 0) {
    // Free category on a random acyclic graph.
    const unsigned n = 1 + static_cast<unsigned>(pick(rng, max_objects));
    auto objects = object_names(n, "o");
    std::vector<ArrowSpec> gens;
    auto total_paths = [&](const std::vector<ArrowSpec>& gs) {
      std::vector<std::vector<std::size_t>> a(n, std::vector<std::size_t>(n, 0));
      for (const auto& g : gs) ++a[std::stoul(g.source.substr(1))][std::stoul(g.target.substr(1))];
      // Vertices are topologically ordered by index.
      std::size_t total = 0;
      for (unsigned i = 0; i < n; ++i) {
        std::vector<std::size_t> reach(n, 0);
        reach[i] = 1;
        for (unsigned j = i; j < n; ++j)
          for (unsigned k = j + 1; k < n; ++k) reach[k] += reach[j] * a[j][k];
        for (unsigned k = i + 1; k < n; ++k) total += reach[k];
      }
      return total;
    };
    const unsigned tries = 2 + static_cast<unsigned>(pick(rng, 8));
    for (unsigned t = 0; t < tries && n > 1; ++t) {
      unsigned i = static_cast<unsigned>(pick(rng, n - 1));
      unsigned j = i + 1 + static_cast<unsigned>(pick(rng, n - 1 - i));
      auto next = gens;
      next.push_back({"f" + std::to_string(gens.size()), objects[i], objects[j]});
      if (total_paths(next) <= max_arrows) gens = std::move(next);
    }
    return path_category(objects, gens);
  }
  if (kind == 1) {
    // Finite poset from a random relation, closed transitively.
    const unsigned n = 1 + static_cast<unsigned>(pick(rng, max_objects));
    std::vector<std::vector<bool>> le(n, std::vector<bool>(n, false));
    for (unsigned i = 0; i < n; ++i)
      for (unsigned j = i + 1; j < n; ++j) le[i][j] = pick(rng, 3) == 0;
    for (unsigned k = 0; k < n; ++k)
      for (unsigned i = 0; i < n; ++i)
        for (unsigned j = 0; j < n; ++j)
          if (le[i][k] && le[k][j]) le[i][j] = true;
    auto objects = object_names(n, "p");
    std::vector<ArrowSpec> arrows;
    auto rel = [](unsigned i, unsigned j) { return "r" + std::to_string(i) + "_" + std::to_string(j); };
    for (unsigned i = 0; i < n; ++i)
      for (unsigned j = 0; j < n; ++j)
        if (le[i][j] && arrows.size() < max_arrows) arrows.push_back({rel(i, j), objects[i], objects[j]});
    std::set<std::string> kept;
    for (const auto& a : arrows) kept.insert(a.name);
    std::map<std::pair<std::string, std::string>, std::string> comp;
    for (unsigned i = 0; i < n; ++i)
      for (unsigned j = 0; j < n; ++j)
        for (unsigned k = 0; k < n; ++k)
          if (kept.count(rel(i, j)) && kept.count(rel(j, k))) {
            if (!kept.count(rel(i, k))) return random_1category(rng, max_objects, max_arrows);
            comp[{rel(j, k), rel(i, j)}] = rel(i, k);
          }
    return make_1category(objects, arrows, comp);
  }
  if (kind == 2) {
    // Cyclic monoid a^(m+p) = a^m on one object.
    const unsigned m = 1 + static_cast<unsigned>(pick(rng, 4));
    const unsigned p = 1 + static_cast<unsigned>(pick(rng, 4));
    const unsigned size = std::min(m + p - 1, max_arrows);
    if (size < m + p - 1) return random_1category(rng, max_objects, max_arrows);
    std::vector<ArrowSpec> arrows;
    auto power = [](unsigned i) { return "a" + std::to_string(i); };
    for (unsigned i = 1; i <= size; ++i) arrows.push_back({power(i), "m", "m"});
    std::map<std::pair<std::string, std::string>, std::string> comp;
    for (unsigned i = 1; i <= size; ++i)
      for (unsigned j = 1; j <= size; ++j) {
        unsigned k = i + j;
        if (k >= m + p) k = m + (k - m) % p;
        comp[{power(i), power(j)}] = power(k);
      }
    return make_1category({"m"}, arrows, comp);
  }
  // Disjoint union of two smaller categories.
  const unsigned half_objects = std::max(1u, max_objects / 2);
  PresentedCategory a = random_1category(rng, half_objects, max_arrows / 2);
  PresentedCategory b = random_1category(rng, half_objects, max_arrows / 2);
  PresentedCategory c(1);
  const PresentedCategory* parts[2] = {&a, &b};
  std::vector<CellIndex> offset0(2), offset1(2);
  for (int s = 0; s < 2; ++s) {
    offset0[s] = static_cast<CellIndex>(c.cell_count(0));
    for (CellIndex x = 0; x < parts[s]->cell_count(0); ++x) c.add_cell(0, "L" + std::to_string(s) + parts[s]->name(0, x));
  }
  for (int s = 0; s < 2; ++s) {
    offset1[s] = static_cast<CellIndex>(c.cell_count(1));
    for (CellIndex h = 0; h < parts[s]->cell_count(1); ++h) {
      CellIndex i = c.add_cell(1, "L" + std::to_string(s) + parts[s]->name(1, h));
      c.set_boundary(1, i, offset0[s] + parts[s]->src(1, h), offset0[s] + parts[s]->tgt(1, h));
    }
    for (CellIndex x = 0; x < parts[s]->cell_count(0); ++x) c.set_identity(0, offset0[s] + x, offset1[s] + parts[s]->id(0, x));
    for (const auto& e : parts[s]->entries(1, 0))
      c.set_composite(1, 0, offset1[s] + e.left, offset1[s] + e.right, offset1[s] + e.result);
  }
  return c;
}

OmegaFunctor random_functor(std::mt19937_64& rng, std::shared_ptr<const PresentedCategory> source,
                            std::shared_ptr<const PresentedCategory> target) {
  const PresentedCategory& C = *source;
  const PresentedCategory& D = *target;
  auto nontrivial = [&](CellIndex h) { return !is_degenerate(C, 1, h); };
  // A factorization of each arrow into indecomposables where one exists.
  std::vector<std::optional<std::vector<CellIndex>>> chain(C.cell_count(1));
  std::vector<int> state(C.cell_count(1), 0);
  std::function<void(CellIndex)> decompose_arrow = [&](CellIndex h) {
    if (state[h]) return;
    state[h] = 1;
    if (!nontrivial(h)) {
      chain[h] = std::vector<CellIndex>{};
    } else {
      for (auto [a, b] : C.factorizations(1, 0, h)) {
        if (!nontrivial(a) || !nontrivial(b)) continue;
        decompose_arrow(a);
        decompose_arrow(b);
        if (chain[a] && chain[b] && state[a] == 2 && state[b] == 2) {
          auto v = *chain[a];
          v.insert(v.end(), chain[b]->begin(), chain[b]->end());
          chain[h] = v;
          break;
        }
      }
      bool has_factorization = false;
      for (auto [a, b] : C.factorizations(1, 0, h)) has_factorization |= nontrivial(a) && nontrivial(b);
      if (!has_factorization) chain[h] = std::vector<CellIndex>{h};
    }
    state[h] = 2;
  };
  for (CellIndex h = 0; h < C.cell_count(1); ++h) decompose_arrow(h);

  for (int attempt = 0; attempt < 60; ++attempt) {
    OmegaFunctor f{source, target, {std::vector<CellIndex>(C.cell_count(0)), std::vector<CellIndex>(C.cell_count(1), kNone)}};
    for (auto& y : f.map[0]) y = static_cast<CellIndex>(pick(rng, D.cell_count(0)));
    auto choose = [&](CellIndex h) -> CellIndex {
      std::vector<CellIndex> options;
      for (CellIndex k = 0; k < D.cell_count(1); ++k)
        if (D.src(1, k) == f.map[0][C.src(1, h)] && D.tgt(1, k) == f.map[0][C.tgt(1, h)]) options.push_back(k);
      return options.empty() ? kNone : options[pick(rng, options.size())];
    };
    bool ok = true;
    for (CellIndex h = 0; h < C.cell_count(1) && ok; ++h) {
      if (!nontrivial(h)) {
        f.map[1][h] = D.id(0, f.map[0][C.src(1, h)]);
      } else if (chain[h] && chain[h]->size() == 1) {
        f.map[1][h] = choose(h);
        ok = f.map[1][h] != kNone;
      }
    }
    for (CellIndex h = 0; h < C.cell_count(1) && ok; ++h) {
      if (f.map[1][h] != kNone) continue;
      if (!chain[h]) {
        f.map[1][h] = choose(h);
        ok = f.map[1][h] != kNone;
        continue;
      }
      // Composite along the chain, first arrow applied last.
      const auto& v = *chain[h];
      CellIndex acc = f.map[1][v.back()];
      for (std::size_t i = v.size() - 1; i-- > 0 && ok;) {
        auto r = D.comp(1, 0, f.map[1][v[i]], acc);
        ok = r.has_value();
        if (ok) acc = *r;
      }
      f.map[1][h] = acc;
    }
    if (ok && validate_functor(f).ok()) return f;
  }
  OmegaFunctor constant{source, target, {}};
  const CellIndex d = static_cast<CellIndex>(pick(rng, D.cell_count(0)));
  for (unsigned l = 0; l <= C.dimension(); ++l)
    constant.map.push_back(std::vector<CellIndex>(C.cell_count(l), D.identity_to(0, d, l)));
  return constant;
}

}  // namespace polyconduche
