#include "polyconduche/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <optional>

#include <CLI11.hpp>

#include "polyconduche/conduche.hpp"
#include "polyconduche/constructions.hpp"
#include "polyconduche/errors.hpp"
#include "polyconduche/io.hpp"
#include "polyconduche/polygraph.hpp"

namespace polyconduche {

namespace fs = std::filesystem;
using io::json;

namespace {

constexpr int kPass = 0, kFail = 1, kUnknown = 2, kUsage = 3;

int exit_code(ConducheReport::Verdict v) {
  return v == ConducheReport::Pass ? kPass : v == ConducheReport::Fail ? kFail : kUnknown;
}

int exit_code(BasisVerdict::Verdict v) {
  return v == BasisVerdict::Basis ? kPass : v == BasisVerdict::NotBasis ? kFail : kUnknown;
}

SearchBounds default_bounds() {
  SearchBounds b;
  if (const char* env = std::getenv("POLYCONDUCHE_MAX_VISITED")) {
    try {
      b.max_visited = std::stoull(env);
    } catch (const std::exception&) {
      throw SchemaError(std::string("POLYCONDUCHE_MAX_VISITED is not a number: ") + env);
    }
  }
  return b;
}

void add_bound_flags(CLI::App* cmd, SearchBounds& b) {
  cmd->add_option("--size-slack", b.size_slack, "Extra size allowed on search paths")->capture_default_str();
  cmd->add_option("--max-steps", b.max_steps, "Longest movement path searched")->capture_default_str();
  cmd->add_option("--max-visited", b.max_visited, "Cap on visited terms (env POLYCONDUCHE_MAX_VISITED)")
      ->capture_default_str();
}

void write_file(const fs::path& p, const std::string& text) {
  std::ofstream f(p);
  if (!f) throw SchemaError("cannot write " + p.string());
  f << text;
}

std::vector<CellIndex> parse_set(const PresentedCategory& c, unsigned level, const std::string& list) {
  std::vector<CellIndex> out;
  std::stringstream ss(list);
  std::string name;
  while (std::getline(ss, name, ','))
    if (!name.empty()) out.push_back(c.index(level, name));
  return out;
}

Direction parse_direction(const std::string& s) {
  if (s == "forward") return Direction::Forward;
  if (s == "backward") return Direction::Backward;
  return Direction::Both;
}

struct Options {
  std::string path, path2, word1, word2, object, mode = "table", set, out_dir, witness_file,
      direction = "both";
  std::optional<unsigned> dim;
  std::optional<std::size_t> size_bound;
  std::string term, cell;
  unsigned depth = 1;
  bool dot = false;
  SearchBounds bounds;
};

int cmd_validate(const Options& o, std::ostream& out) {
  json report;
  int code = kPass;
  try {
    json doc = io::read_json(o.path);
    const io::DocKind kind = io::document_kind(doc);
    report["kind"] = io::to_string(kind);
    ValidationReport r;
    auto append = [&](const ValidationReport& x) {
      r.violations.insert(r.violations.end(), x.violations.begin(), x.violations.end());
    };
    const fs::path dir = fs::path(o.path).parent_path();
    if (kind == io::DocKind::Category) {
      append(validate_category(io::category_from_json(doc)));
    } else if (kind == io::DocKind::Extension) {
      append(validate_category(io::extension_from_json(doc, dir)->base()));
    } else {
      io::LoadedFunctor f = io::functor_from_json(doc, dir);
      const OmegaFunctor& g = std::holds_alternative<OmegaFunctor>(f) ? std::get<OmegaFunctor>(f)
                                                                       : std::get<ExtensionMorphism>(f).base;
      append(validate_category(*g.source));
      append(validate_category(*g.target));
      append(validate_functor(g));
    }
    report.update(io::to_json(r));
    code = r.ok() ? kPass : kFail;
  } catch (const SchemaError& e) {
    report["ok"] = false;
    report["error"] = "SchemaError";
    report["message"] = e.what();
    code = kFail;
  }
  out << io::dump(report);
  return code;
}

int cmd_equiv(const Options& o, std::ostream& out) {
  ExtensionPtr e = io::load_extension(o.path);
  Term u = check_term(e, o.word1), v = check_term(e, o.word2);
  EquivalenceResult r = equivalent(u, v, o.bounds);
  json j = {{"from", u.str()},
            {"to", v.str()},
            {"verdict", to_string(r.verdict)},
            {"reason", r.reason},
            {"visited", r.visited},
            {"bounds", io::to_json(o.bounds)}};
  if (r.witness) {
    j["witness"] = io::to_json(*r.witness);
    if (!o.witness_file.empty()) write_file(o.witness_file, io::dump(io::to_json(*r.witness)));
  }
  out << io::dump(j);
  return r.verdict == EquivalenceResult::Witness ? kPass : r.verdict == EquivalenceResult::Distinct ? kFail : kUnknown;
}

int conduche_finite(const Options& o, const OmegaFunctor& f, std::ostream& out) {
  json j = {{"mode", o.mode}};
  if (o.mode == "table") {
    ConducheReport r = check_conduche(f, o.dim);
    j.update(io::to_json(r, f));
    j["up_to_dim"] = o.dim.value_or(f.source->dimension());
    out << io::dump(j);
    return exit_code(r.verdict);
  }
  const std::size_t bound = o.size_bound.value_or(4);
  j["size_bound"] = bound;
  FiberResult r;
  if (o.dim) {
    if (*o.dim == 0 || *o.dim > std::min(f.source->dimension(), f.target->dimension()))
      throw LevelError("--dim must name a level between 1 and the common dimension");
    const unsigned n = *o.dim - 1;
    FiberQuery q{kNone, n, {}, bound};
    for (CellIndex x = 0; x < f.target->cell_count(n + 1); ++x) q.sigma_d.push_back(x);
    if (!o.cell.empty()) q.a = f.source->index(n + 1, o.cell);
    r = check_fiber_bijection(f, q);
  } else {
    r = check_fibers(f, bound);
  }
  j.update(io::to_json(r, &f));
  out << io::dump(j);
  return exit_code(r.verdict);
}

int conduche_symbolic(const Options& o, const ExtensionMorphism& f, std::ostream& out) {
  if (o.mode != "fiber") throw SchemaError("table mode needs a functor between category documents");
  const std::size_t bound = o.size_bound.value_or(1);
  json j = {{"mode", o.mode}, {"size_bound", bound}, {"bounds", io::to_json(o.bounds)}, {"rigid", is_rigid(f)}};
  std::vector<Term> cells;
  if (!o.term.empty())
    cells.push_back(check_term(f.source, o.term));
  else
    cells = enumerate_terms(f.source, 1);
  FiberResult result;
  std::string at;
  bool unknown = false;
  for (const Term& a : cells) {
    FiberResult r = check_fiber_bijection(f, a, bound, o.bounds);
    if (r.verdict == ConducheReport::Fail) {
      result = r;
      at = a.str();
      unknown = false;
      break;
    }
    if (r.verdict == ConducheReport::Unknown && !unknown) {
      unknown = true;
      result = r;
      at = a.str();
    }
  }
  if (at.empty() && !cells.empty()) at = cells.front().str();
  j["term"] = at;
  j["candidates"] = cells.size();
  j.update(io::to_json(result));
  out << io::dump(j);
  return exit_code(result.verdict);
}

int cmd_conduche(const Options& o, std::ostream& out) {
  if (o.mode != "table" && o.mode != "fiber") throw SchemaError("--mode is table or fiber");
  io::LoadedFunctor f = io::load_functor(o.path);
  if (auto* g = std::get_if<OmegaFunctor>(&f)) return conduche_finite(o, *g, out);
  return conduche_symbolic(o, std::get<ExtensionMorphism>(f), out);
}

int cmd_basis(const Options& o, std::ostream& out) {
  json doc = io::read_json(o.path);
  if (io::document_kind(doc) != io::DocKind::Category) throw SchemaError(o.path + " is not a category document");
  PresentedCategory c = io::category_from_json(doc);
  CellSets sigma = io::basis_from_json(c, doc).value_or(indecomposables(c));
  json j;
  if (o.dim) {
    if (*o.dim > c.dimension()) throw LevelError("--dim above the category dimension");
    if (!o.set.empty()) sigma[*o.dim] = parse_set(c, *o.dim, o.set);
    BasisVerdict v = check_basis(c, *o.dim, sigma[*o.dim], o.size_bound, o.bounds);
    j = io::to_json(v, c);
    j["set"] = io::basis_to_json(c, sigma)[std::to_string(*o.dim)];
    j["bounds"] = io::to_json(o.bounds);
    out << io::dump(j);
    return exit_code(v.verdict);
  }
  if (!o.set.empty()) throw SchemaError("--set needs --dim");
  FreenessReport r = check_free(c, sigma, o.size_bound, o.bounds);
  json levels = json::array();
  for (const BasisVerdict& v : r.levels) levels.push_back(io::to_json(v, c));
  j = {{"verdict", to_string(r.verdict)},
       {"levels", std::move(levels)},
       {"matches_indecomposables", r.matches_indecomposables},
       {"basis", io::basis_to_json(c, sigma)},
       {"bounds", io::to_json(o.bounds)}};
  out << io::dump(j);
  return exit_code(r.verdict);
}

int cmd_transfer(const Options& o, std::ostream& out) {
  io::LoadedFunctor f = io::load_functor(o.path);
  if (auto* m = std::get_if<ExtensionMorphism>(&f)) {
    json names = json::array();
    for (std::size_t g = 0; g < m->source->generators().size(); ++g) names.push_back(m->source->generators()[g].name);
    out << io::dump({{std::to_string(m->source->n() + 1), std::move(names)}});
    return kPass;
  }
  const OmegaFunctor& g = std::get<OmegaFunctor>(f);
  // The target's shipped basis when it has one.
  json doc = io::read_json(o.path);
  std::optional<CellSets> given;
  if (doc.at("target").is_string())
    given = io::basis_from_json(*g.target, io::read_json(fs::path(o.path).parent_path() / doc.at("target").get<std::string>()));
  else
    given = io::basis_from_json(*g.target, doc.at("target"));
  CellSets sigma_d = given.value_or(indecomposables(*g.target));
  out << io::dump(io::basis_to_json(*g.source, transfer_basis(g, sigma_d)));
  return kPass;
}

int cmd_slice(const Options& o, std::ostream& out) {
  auto c = io::load_category(o.path);
  SliceResult s = slice_1cat(c, o.object);
  const std::string text = io::dump(io::category_to_json(*s.category));
  out << text;
  if (!o.out_dir.empty()) {
    fs::create_directories(o.out_dir);
    write_file(fs::path(o.out_dir) / "slice.cat.json", text);
    write_file(fs::path(o.out_dir) / "base.cat.json", io::dump(io::category_to_json(*c)));
    write_file(fs::path(o.out_dir) / "projection.functor.json",
               io::dump(io::functor_to_json(s.projection, "slice.cat.json", "base.cat.json")));
  }
  return kPass;
}

int cmd_pullback(const Options& o, std::ostream& out) {
  io::LoadedFunctor lf = io::load_functor(o.path), lg = io::load_functor(o.path2);
  if (!std::holds_alternative<OmegaFunctor>(lf) || !std::holds_alternative<OmegaFunctor>(lg))
    throw SchemaError("pullback needs functors between category documents");
  const OmegaFunctor& f = std::get<OmegaFunctor>(lf);
  const OmegaFunctor& g = std::get<OmegaFunctor>(lg);
  PullbackResult p = pullback(f, g);
  const std::string text = io::dump(io::category_to_json(*p.apex));
  out << text;
  if (!o.out_dir.empty()) {
    fs::create_directories(o.out_dir);
    const fs::path d(o.out_dir);
    write_file(d / "apex.cat.json", text);
    write_file(d / "left.cat.json", io::dump(io::category_to_json(*p.proj1.target)));
    write_file(d / "right.cat.json", io::dump(io::category_to_json(*p.proj2.target)));
    write_file(d / "proj1.functor.json", io::dump(io::functor_to_json(p.proj1, "apex.cat.json", "left.cat.json")));
    write_file(d / "proj2.functor.json", io::dump(io::functor_to_json(p.proj2, "apex.cat.json", "right.cat.json")));
  }
  return kPass;
}

int cmd_movements(const Options& o, std::ostream& out) {
  ExtensionPtr e = io::load_extension(o.path);
  Term t = check_term(e, o.word1);
  const Direction d = parse_direction(o.direction);
  if (o.dot) {
    out << io::movements_dot(t, d, o.depth);
    return kPass;
  }
  json steps = json::array();
  for (const MovementStep& s : enumerate_movements(t, d)) {
    json j = io::to_json(s.movement);
    j["result"] = s.result.str();
    steps.push_back(std::move(j));
  }
  out << io::dump({{"term", t.str()}, {"movements", std::move(steps)}});
  return kPass;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Word calculus, free categories and discrete Conduché checks for presented n-categories",
               "polyconduche"};
  app.require_subcommand(1);
  Options o;
  try {
    o.bounds = default_bounds();
  } catch (const Error& e) {
    err << e.what() << "\n";
    return kUsage;
  }

  auto* validate = app.add_subcommand("validate", "Validate a category, extension or functor document");
  validate->add_option("path", o.path, "Document")->required()->check(CLI::ExistingFile);

  auto* equiv = app.add_subcommand("equiv", "Search for a movement path between two terms");
  equiv->add_option("extension", o.path, "Extension document")->required()->check(CLI::ExistingFile);
  equiv->add_option("word1", o.word1)->required();
  equiv->add_option("word2", o.word2)->required();
  equiv->add_option("--witness", o.witness_file, "Also write the witness steps to this file");
  add_bound_flags(equiv, o.bounds);

  auto* conduche = app.add_subcommand("conduche", "Check the discrete Conduché condition");
  conduche->add_option("functor", o.path, "Functor document")->required()->check(CLI::ExistingFile);
  conduche->add_option("--mode", o.mode, "table or fiber")->capture_default_str();
  conduche->add_option("--dim", o.dim, "Table: highest level checked. Fiber: level of the fibered cells");
  conduche->add_option("--size-bound", o.size_bound, "Fiber word size bound (default 4, 1 for extensions)");
  conduche->add_option("--cell", o.cell, "Fiber mode on categories: a single cell at --dim");
  conduche->add_option("--term", o.term, "Fiber mode on extensions: the class to check (default: all of size <= 1)");
  add_bound_flags(conduche, o.bounds);

  auto* basis = app.add_subcommand("basis", "Check a basis, or freeness at every level");
  basis->add_option("category", o.path, "Category document")->required()->check(CLI::ExistingFile);
  basis->add_option("--dim", o.dim, "Level to check; every level when omitted");
  basis->add_option("--set", o.set, "Comma-separated cells (default: the document basis, else indecomposables)");
  basis->add_option("--size-bound", o.size_bound, "Word size bound (default 2 x non-identity cells, at most 8)");
  add_bound_flags(basis, o.bounds);

  auto* transfer = app.add_subcommand("transfer", "Pull a basis of the target back along a functor");
  transfer->add_option("functor", o.path, "Functor document")->required()->check(CLI::ExistingFile);

  auto* slice = app.add_subcommand("slice", "Slice of a 1-category over an object");
  slice->add_option("category", o.path, "Category document")->required()->check(CLI::ExistingFile);
  slice->add_option("object", o.object)->required();
  slice->add_option("--out-dir", o.out_dir, "Also write the slice, base and projection documents here");

  auto* pb = app.add_subcommand("pullback", "Fibred product of two functors with a common target");
  pb->add_option("f", o.path, "Functor document")->required()->check(CLI::ExistingFile);
  pb->add_option("g", o.path2, "Functor document")->required()->check(CLI::ExistingFile);
  pb->add_option("--out-dir", o.out_dir, "Also write the apex, its projections and their targets here");

  auto* moves = app.add_subcommand("movements", "Elementary movements out of a term");
  moves->add_option("extension", o.path, "Extension document")->required()->check(CLI::ExistingFile);
  moves->add_option("word", o.word1)->required();
  moves->add_option("--direction", o.direction, "forward, backward or both")
      ->check(CLI::IsMember({"forward", "backward", "both"}))
      ->capture_default_str();
  moves->add_flag("--dot", o.dot, "Emit a DOT graph instead of JSON");
  moves->add_option("--depth", o.depth, "DOT neighbourhood radius")->capture_default_str();

  // CLI11 consumes the arguments from the back.
  std::vector<std::string> rest(args.empty() ? args.end() : args.begin() + 1, args.end());
  std::reverse(rest.begin(), rest.end());
  try {
    app.parse(rest);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kPass : kUsage;
  }

  try {
    if (*validate) return cmd_validate(o, out);
    if (*equiv) return cmd_equiv(o, out);
    if (*conduche) return cmd_conduche(o, out);
    if (*basis) return cmd_basis(o, out);
    if (*transfer) return cmd_transfer(o, out);
    if (*slice) return cmd_slice(o, out);
    if (*pb) return cmd_pullback(o, out);
    if (*moves) return cmd_movements(o, out);
  } catch (const Error& e) {
    err << io::dump({{"error", e.what()}});
    return kUsage;
  } catch (const std::exception& e) {
    err << io::dump({{"error", e.what()}});
    return kUsage;
  }
  return kUsage;
}

}  // namespace polyconduche
