#include "polyconduche/io.hpp"

#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "polyconduche/errors.hpp"

namespace polyconduche::io {

namespace fs = std::filesystem;

const char* to_string(DocKind k) {
  switch (k) {
    case DocKind::Category: return "category";
    case DocKind::Extension: return "extension";
    case DocKind::Functor: return "functor";
  }
  return "?";
}

json read_json(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot read " + path.string());
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw SchemaError(path.string() + ": " + e.what());
  }
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

DocKind document_kind(const json& doc) {
  if (!doc.is_object()) throw SchemaError("document is not a JSON object");
  DocKind k;
  if (doc.contains("map"))
    k = DocKind::Functor;
  else if (doc.contains("generators"))
    k = DocKind::Extension;
  else if (doc.contains("cells"))
    k = DocKind::Category;
  else
    throw SchemaError("unrecognized document: expected cells, generators or map");
  if (doc.contains("kind") && doc.at("kind").get<std::string>() != to_string(k))
    throw SchemaError("document kind '" + doc.at("kind").get<std::string>() + "' does not match its contents");
  return k;
}

namespace {

// Runs a loader, turning JSON access errors into schema errors.
template <class F>
auto guarded(const char* what, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const json::exception& e) {
    throw SchemaError(std::string(what) + ": " + e.what());
  }
}

unsigned level_key(const std::string& key) {
  try {
    std::size_t used = 0;
    const unsigned long v = std::stoul(key, &used);
    if (used == key.size()) return static_cast<unsigned>(v);
  } catch (const std::exception&) {
  }
  throw SchemaError("bad level key '" + key + "'");
}

const json& member(const json& doc, const char* key) {
  static const json empty = json::object();
  return doc.contains(key) ? doc.at(key) : empty;
}

}  // namespace

PresentedCategory category_from_json(const json& doc) {
  return guarded("category document", [&] {
    const unsigned dim = doc.at("dimension").get<unsigned>();
    PresentedCategory c(dim);
    const json& cells = doc.at("cells");
    for (auto it = cells.begin(); it != cells.end(); ++it)
      if (level_key(it.key()) > dim) throw SchemaError("cells listed above the dimension");
    for (unsigned l = 0; l <= dim; ++l) {
      const std::string key = std::to_string(l);
      if (!cells.contains(key)) throw SchemaError("no cells at level " + key);
      for (const auto& name : cells.at(key)) c.add_cell(l, name.get<std::string>());
    }
    for (const char* side : {"src", "tgt"}) {
      const json& m = member(doc, side);
      for (auto it = m.begin(); it != m.end(); ++it) {
        const unsigned l = level_key(it.key());
        if (l == 0 || l > dim) throw SchemaError(std::string(side) + " given at level " + it.key());
        for (auto jt = it.value().begin(); jt != it.value().end(); ++jt) c.index(l, jt.key());
      }
    }
    const json& src = member(doc, "src");
    const json& tgt = member(doc, "tgt");
    for (unsigned l = 1; l <= dim; ++l) {
      const std::string key = std::to_string(l);
      for (CellIndex x = 0; x < c.cell_count(l); ++x) {
        const std::string& name = c.name(l, x);
        if (!src.contains(key) || !src.at(key).contains(name) || !tgt.contains(key) || !tgt.at(key).contains(name))
          throw SchemaError("missing boundary of '" + name + "' at level " + key);
        c.set_boundary(l, x, c.index(l - 1, src.at(key).at(name).get<std::string>()),
                       c.index(l - 1, tgt.at(key).at(name).get<std::string>()));
      }
    }
    const json& ids = member(doc, "id");
    for (auto it = ids.begin(); it != ids.end(); ++it) {
      const unsigned l = level_key(it.key());
      if (l >= dim) throw SchemaError("id given at level " + it.key());
      for (auto jt = it.value().begin(); jt != it.value().end(); ++jt)
        c.set_identity(l, c.index(l, jt.key()), c.index(l + 1, jt.value().get<std::string>()));
    }
    const json& comp = member(doc, "comp");
    for (auto it = comp.begin(); it != comp.end(); ++it) {
      const auto star = it.key().find('*');
      if (star == std::string::npos) throw SchemaError("bad comp key '" + it.key() + "'");
      const unsigned l = level_key(it.key().substr(0, star));
      const unsigned k = level_key(it.key().substr(star + 1));
      if (l > dim || k >= l) throw SchemaError("bad comp key '" + it.key() + "'");
      for (const auto& row : it.value()) {
        if (!row.is_array() || row.size() != 3) throw SchemaError("comp rows are [left, right, result]");
        c.set_composite(l, k, c.index(l, row[0].get<std::string>()), c.index(l, row[1].get<std::string>()),
                        c.index(l, row[2].get<std::string>()));
      }
    }
    c.check_schema();
    return c;
  });
}

json category_to_json(const PresentedCategory& c, const CellSets* basis) {
  json doc;
  doc["kind"] = "category";
  doc["dimension"] = c.dimension();
  json cells = json::object(), src = json::object(), tgt = json::object(), id = json::object(),
       comp = json::object();
  for (unsigned l = 0; l <= c.dimension(); ++l) {
    const std::string key = std::to_string(l);
    json names = json::array();
    for (CellIndex x = 0; x < c.cell_count(l); ++x) names.push_back(c.name(l, x));
    cells[key] = std::move(names);
    if (l > 0) {
      json s = json::object(), t = json::object();
      for (CellIndex x = 0; x < c.cell_count(l); ++x) {
        s[c.name(l, x)] = c.name(l - 1, c.src(l, x));
        t[c.name(l, x)] = c.name(l - 1, c.tgt(l, x));
      }
      src[key] = std::move(s);
      tgt[key] = std::move(t);
    }
    if (l < c.dimension()) {
      json m = json::object();
      for (CellIndex x = 0; x < c.cell_count(l); ++x) m[c.name(l, x)] = c.name(l + 1, c.id(l, x));
      id[key] = std::move(m);
    }
    for (unsigned k = 0; k < l; ++k) {
      json rows = json::array();
      for (const CompEntry& e : c.entries(l, k))
        rows.push_back({c.name(l, e.left), c.name(l, e.right), c.name(l, e.result)});
      comp[key + "*" + std::to_string(k)] = std::move(rows);
    }
  }
  doc["cells"] = std::move(cells);
  doc["src"] = std::move(src);
  doc["tgt"] = std::move(tgt);
  doc["id"] = std::move(id);
  doc["comp"] = std::move(comp);
  if (basis) doc["basis"] = basis_to_json(c, *basis);
  return doc;
}

std::optional<CellSets> basis_from_json(const PresentedCategory& c, const json& doc) {
  if (!doc.contains("basis")) return std::nullopt;
  return guarded("basis", [&] {
    CellSets out(c.dimension() + 1);
    const json& b = doc.at("basis");
    for (auto it = b.begin(); it != b.end(); ++it) {
      const unsigned l = level_key(it.key());
      if (l > c.dimension()) throw SchemaError("basis given at level " + it.key());
      for (const auto& name : it.value()) out[l].push_back(c.index(l, name.get<std::string>()));
    }
    return std::optional<CellSets>(std::move(out));
  });
}

json basis_to_json(const PresentedCategory& c, const CellSets& basis) {
  json out = json::object();
  for (unsigned l = 0; l < basis.size(); ++l) {
    json names = json::array();
    for (CellIndex x : basis[l]) names.push_back(c.name(l, x));
    out[std::to_string(l)] = std::move(names);
  }
  return out;
}

namespace {

// An inline document or a path relative to dir, with the directory that
// nested paths resolve against.
std::pair<json, fs::path> resolve(const json& ref, const fs::path& dir) {
  if (ref.is_string()) {
    const fs::path p = dir / ref.get<std::string>();
    return {read_json(p), p.parent_path()};
  }
  return {ref, dir};
}

}  // namespace

ExtensionPtr extension_from_json(const json& doc, const fs::path& dir) {
  return guarded("extension document", [&] {
    auto [base_doc, base_dir] = resolve(doc.at("base"), dir);
    if (document_kind(base_doc) != DocKind::Category) throw SchemaError("extension base must be a category");
    auto base = std::make_shared<const PresentedCategory>(category_from_json(base_doc));
    std::vector<std::array<std::string, 3>> gens;
    for (const auto& g : doc.at("generators"))
      gens.push_back({g.at("name").get<std::string>(), g.at("src").get<std::string>(), g.at("tgt").get<std::string>()});
    return make_extension(base, gens);
  });
}

json extension_to_json(const CellularExtension& e) {
  json doc;
  doc["kind"] = "extension";
  doc["base"] = category_to_json(e.base());
  json gens = json::array();
  for (const Generator& g : e.generators())
    gens.push_back({{"name", g.name}, {"src", e.base().name(e.n(), g.source)}, {"tgt", e.base().name(e.n(), g.target)}});
  doc["generators"] = std::move(gens);
  return doc;
}

LoadedFunctor functor_from_json(const json& doc, const fs::path& dir) {
  return guarded("functor document", [&]() -> LoadedFunctor {
    auto [sdoc, sdir] = resolve(doc.at("source"), dir);
    auto [tdoc, tdir] = resolve(doc.at("target"), dir);
    const DocKind sk = document_kind(sdoc), tk = document_kind(tdoc);
    if (sk != tk || sk == DocKind::Functor)
      throw SchemaError("functor ends must both be categories or both be extensions");
    std::vector<std::map<std::string, std::string>> levels;
    const json& m = doc.at("map");
    for (auto it = m.begin(); it != m.end(); ++it) {
      const unsigned l = level_key(it.key());
      if (levels.size() <= l) levels.resize(l + 1);
      for (auto jt = it.value().begin(); jt != it.value().end(); ++jt)
        levels[l][jt.key()] = jt.value().get<std::string>();
    }
    if (sk == DocKind::Category) {
      auto s = std::make_shared<const PresentedCategory>(category_from_json(sdoc));
      auto t = std::make_shared<const PresentedCategory>(category_from_json(tdoc));
      if (levels.size() > s->dimension() + 1) throw SchemaError("functor map above the source dimension");
      return functor_from_names(s, t, levels);
    }
    ExtensionPtr s = extension_from_json(sdoc, sdir);
    ExtensionPtr t = extension_from_json(tdoc, tdir);
    const unsigned n = s->n();
    if (t->n() != n) throw SchemaError("extensions of different dimensions");
    if (levels.size() > n + 2) throw SchemaError("functor map above the generator level");
    levels.resize(n + 2);
    std::vector<std::map<std::string, std::string>> base_levels(levels.begin(), levels.begin() + n + 1);
    ExtensionMorphism f{s, t, functor_from_names(s->base_ptr(), t->base_ptr(), base_levels), {}};
    for (const Generator& g : s->generators()) {
      auto it = levels[n + 1].find(g.name);
      if (it == levels[n + 1].end()) throw SchemaError("functor map misses generator '" + g.name + "'");
      auto tg = t->find_generator(it->second);
      if (!tg) throw SchemaError("unknown target generator '" + it->second + "'");
      f.generator_map.push_back(*tg);
    }
    check_extension_morphism(f);
    return f;
  });
}

json functor_to_json(const OmegaFunctor& f, const std::string& source, const std::string& target) {
  json doc;
  doc["kind"] = "functor";
  doc["source"] = source;
  doc["target"] = target;
  json m = json::object();
  for (unsigned l = 0; l < f.map.size(); ++l) {
    json level = json::object();
    for (CellIndex x = 0; x < f.map[l].size(); ++x) level[f.source->name(l, x)] = f.target->name(l, f(l, x));
    m[std::to_string(l)] = std::move(level);
  }
  doc["map"] = std::move(m);
  return doc;
}

std::shared_ptr<const PresentedCategory> load_category(const fs::path& path) {
  json doc = read_json(path);
  if (document_kind(doc) != DocKind::Category) throw SchemaError(path.string() + " is not a category document");
  return std::make_shared<const PresentedCategory>(category_from_json(doc));
}

ExtensionPtr load_extension(const fs::path& path) {
  json doc = read_json(path);
  if (document_kind(doc) != DocKind::Extension) throw SchemaError(path.string() + " is not an extension document");
  return extension_from_json(doc, path.parent_path());
}

LoadedFunctor load_functor(const fs::path& path) {
  json doc = read_json(path);
  if (document_kind(doc) != DocKind::Functor) throw SchemaError(path.string() + " is not a functor document");
  return functor_from_json(doc, path.parent_path());
}

json to_json(const ValidationReport& r) {
  json v = json::array();
  for (const Violation& x : r.violations) v.push_back({{"axiom", x.axiom}, {"witness", x.witness}});
  return {{"ok", r.ok()}, {"violations", std::move(v)}};
}

json to_json(const ElementaryMovement& m) {
  return {{"case", m.movement_case},
          {"direction", to_string(m.direction)},
          {"prefix_len", m.prefix.length()},
          {"redex", m.redex.str()},
          {"contractum", m.contractum.str()}};
}

json to_json(const EquivalenceWitness& w) {
  json steps = json::array();
  for (const ElementaryMovement& m : w.path) steps.push_back(to_json(m));
  return steps;
}

json to_json(const SearchBounds& b) {
  return {{"size_slack", b.size_slack}, {"max_steps", b.max_steps}, {"max_visited", b.max_visited}};
}

json to_json(const ConducheReport& r, const OmegaFunctor& f) {
  json failures = json::array();
  for (const ConducheFailure& x : r.failures) {
    json j = {{"kind", to_string(x.kind)}, {"n", x.n}, {"k", x.k}, {"x", f.source->name(x.n, x.x)}};
    if (x.kind == ConducheFailure::KappaFail) {
      j["y"] = f.target->name(x.k, x.y1);
    } else {
      j["y1"] = f.target->name(x.n, x.y1);
      j["y2"] = f.target->name(x.n, x.y2);
      json lifts = json::array();
      for (auto [a, b] : x.lifts) lifts.push_back({f.source->name(x.n, a), f.source->name(x.n, b)});
      j["lifts"] = std::move(lifts);
    }
    failures.push_back(std::move(j));
  }
  return {{"verdict", to_string(r.verdict)}, {"failures", std::move(failures)}};
}

json to_json(const FiberResult& r, const OmegaFunctor* f) {
  json j = {{"verdict", to_string(r.verdict)},
            {"defect", to_string(r.defect)},
            {"n", r.n},
            {"witness", r.witness},
            {"examined", r.examined}};
  if (!r.image.empty()) j["image"] = r.image;
  if (r.cell) j["cell"] = f ? json(f->source->name(r.n + 1, *r.cell)) : json(*r.cell);
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

json to_json(const BasisVerdict& v, const PresentedCategory& c) {
  json j = {{"verdict", to_string(v.verdict)}, {"witness", to_string(v.witness)}, {"level", v.level},
            {"size_bound", v.size_bound}};
  if (v.cell != kNone) j["cell"] = c.name(v.level, v.cell);
  if (!v.w1.empty()) j["words"] = {v.w1, v.w2};
  if (!v.unresolved.empty()) {
    json u = json::array();
    for (CellIndex x : v.unresolved) u.push_back(c.name(v.level, x));
    j["unresolved"] = std::move(u);
  }
  if (!v.note.empty()) j["note"] = v.note;
  return j;
}

namespace {

std::string quoted(const std::string& s) {
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"' || ch == '\\') out += '\\';
    out += ch;
  }
  return out + "\"";
}

}  // namespace

std::string movements_dot(const Term& t, Direction direction, unsigned depth) {
  std::ostringstream out;
  out << "digraph movements {\n  node [shape=box];\n";
  std::set<std::string> seen{t.str()};
  std::vector<Term> layer{t};
  out << "  " << quoted(t.str()) << " [style=bold];\n";
  for (unsigned d = 0; d < depth; ++d) {
    std::vector<Term> next;
    for (const Term& u : layer)
      for (const MovementStep& s : enumerate_movements(u, direction)) {
        out << "  " << quoted(u.str()) << " -> " << quoted(s.result.str()) << " [label="
            << quoted(std::to_string(s.movement.movement_case) + " " + to_string(s.movement.direction)) << "];\n";
        if (seen.insert(s.result.str()).second) next.push_back(s.result);
      }
    layer = std::move(next);
  }
  out << "}\n";
  return out.str();
}

}  // namespace polyconduche::io
