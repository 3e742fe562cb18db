#include "polyconduche/constructions.hpp"

#include <map>
#include <utility>
#include <vector>

#include "polyconduche/errors.hpp"

namespace polyconduche {

PullbackResult pullback(const OmegaFunctor& f0, const OmegaFunctor& g0) {
  if (!(*f0.target == *g0.target)) throw SchemaError("pullback: functors have different targets");
  const unsigned N = std::max({f0.source->dimension(), g0.source->dimension(), f0.target->dimension()});
  const OmegaFunctor f = equalize_dimensions(f0, N);
  const OmegaFunctor g = equalize_dimensions(g0, N);
  const PresentedCategory& C = *f.source;
  const PresentedCategory& D = *g.source;

  auto apex = std::make_shared<PresentedCategory>(N);
  std::vector<std::map<std::pair<CellIndex, CellIndex>, CellIndex>> index(N + 1);
  std::vector<std::vector<std::pair<CellIndex, CellIndex>>> pairs(N + 1);
  for (unsigned l = 0; l <= N; ++l)
    for (CellIndex x = 0; x < C.cell_count(l); ++x)
      for (CellIndex y = 0; y < D.cell_count(l); ++y) {
        if (f(l, x) != g(l, y)) continue;
        const CellIndex p = apex->add_cell(l, C.name(l, x) + "|" + D.name(l, y));
        index[l][{x, y}] = p;
        pairs[l].emplace_back(x, y);
      }
  for (unsigned l = 0; l <= N; ++l)
    for (CellIndex p = 0; p < pairs[l].size(); ++p) {
      auto [x, y] = pairs[l][p];
      if (l > 0) apex->set_boundary(l, p, index[l - 1].at({C.src(l, x), D.src(l, y)}),
                                    index[l - 1].at({C.tgt(l, x), D.tgt(l, y)}));
      if (l < N) apex->set_identity(l, p, index[l + 1].at({C.id(l, x), D.id(l, y)}));
    }
  for (unsigned l = 1; l <= N; ++l)
    for (unsigned k = 0; k < l; ++k)
      for (CellIndex p = 0; p < pairs[l].size(); ++p) {
        auto [x1, y1] = pairs[l][p];
        for (auto [x2, x] : C.right_partners(l, k, x1))
          for (auto [y2, y] : D.right_partners(l, k, y1)) {
            auto q = index[l].find({x2, y2});
            if (q == index[l].end()) continue;
            apex->set_composite(l, k, p, q->second, index[l].at({x, y}));
          }
      }

  PullbackResult out;
  out.apex = apex;
  out.proj1 = OmegaFunctor{apex, f.source, std::vector<std::vector<CellIndex>>(N + 1)};
  out.proj2 = OmegaFunctor{apex, g.source, std::vector<std::vector<CellIndex>>(N + 1)};
  for (unsigned l = 0; l <= N; ++l)
    for (auto [x, y] : pairs[l]) {
      out.proj1.map[l].push_back(x);
      out.proj2.map[l].push_back(y);
    }
  return out;
}

OmegaFunctor mediating_functor(const PullbackResult& p, const OmegaFunctor& f, const OmegaFunctor& g,
                               const OmegaFunctor& h1, const OmegaFunctor& h2) {
  const unsigned N = p.apex->dimension();
  const OmegaFunctor a = equalize_dimensions(h1, N);
  const OmegaFunctor b = equalize_dimensions(h2, N);
  const OmegaFunctor fa = compose(equalize_dimensions(f, N), a);
  const OmegaFunctor gb = compose(equalize_dimensions(g, N), b);
  OmegaFunctor m{a.source, p.apex, std::vector<std::vector<CellIndex>>(N + 1)};
  for (unsigned l = 0; l <= N; ++l)
    for (CellIndex x = 0; x < a.source->cell_count(l); ++x) {
      if (fa(l, x) != gb(l, x)) throw SchemaError("not a cone: images differ at '" + a.source->name(l, x) + "'");
      const std::string name = p.proj1.target->name(l, a(l, x)) + "|" + p.proj2.target->name(l, b(l, x));
      m.map[l].push_back(p.apex->index(l, name));
    }
  return m;
}

SliceResult slice_1cat(std::shared_ptr<const PresentedCategory> cp, const std::string& object) {
  const PresentedCategory& C = *cp;
  if (C.dimension() != 1)
    throw SchemaError("slices are only available for 1-categories, got dimension " + std::to_string(C.dimension()));
  auto c = C.find(0, object);
  if (!c) throw UnknownObject("unknown object '" + object + "'");

  auto S = std::make_shared<PresentedCategory>(1);
  std::map<CellIndex, CellIndex> object_of;  // arrow into c -> object of S
  std::vector<CellIndex> arrow_of_object;
  for (CellIndex h = 0; h < C.cell_count(1); ++h) {
    if (C.tgt(1, h) != *c) continue;
    object_of[h] = S->add_cell(0, C.name(1, h));
    arrow_of_object.push_back(h);
  }
  // Arrows (m, h') with t(m) = s(h'), from h' *0 m to h'.
  std::map<std::pair<CellIndex, CellIndex>, CellIndex> arrow;
  std::vector<std::pair<CellIndex, CellIndex>> arrows;
  for (CellIndex h2 : arrow_of_object)
    for (CellIndex m = 0; m < C.cell_count(1); ++m) {
      if (C.tgt(1, m) != C.src(1, h2)) continue;
      auto h1 = C.comp(1, 0, h2, m);
      if (!h1) throw UndefinedComposite(C.name(1, h2) + " *0 " + C.name(1, m));
      const CellIndex a = S->add_cell(1, C.name(1, m) + "|" + C.name(1, h2));
      S->set_boundary(1, a, object_of.at(*h1), object_of.at(h2));
      arrow[{m, h2}] = a;
      arrows.emplace_back(m, h2);
    }
  for (CellIndex h : arrow_of_object)
    S->set_identity(0, object_of.at(h), arrow.at({C.id(0, C.src(1, h)), h}));
  // (m2, h'') *0 (m1, h') = (m2 *0 m1, h'') when h' = h'' *0 m2.
  for (auto [m2, h3] : arrows) {
    const CellIndex mid = *C.comp(1, 0, h3, m2);
    for (auto [m1, h2] : arrows) {
      if (h2 != mid) continue;
      auto m = C.comp(1, 0, m2, m1);
      if (!m) throw UndefinedComposite(C.name(1, m2) + " *0 " + C.name(1, m1));
      S->set_composite(1, 0, arrow.at({m2, h3}), arrow.at({m1, h2}), arrow.at({*m, h3}));
    }
  }

  SliceResult out;
  out.category = S;
  out.projection = OmegaFunctor{S, cp, {{}, {}}};
  for (CellIndex h : arrow_of_object) out.projection.map[0].push_back(C.src(1, h));
  for (auto [m, h] : arrows) out.projection.map[1].push_back(m);
  return out;
}

}  // namespace polyconduche
