#pragma once

// JSON documents for categories, extensions and functors, report encoders,
// and DOT export of movement neighbourhoods.

#include <filesystem>
#include <string>
#include <variant>

#include <json.hpp>

#include "polyconduche/category.hpp"
#include "polyconduche/conduche.hpp"
#include "polyconduche/movement.hpp"
#include "polyconduche/polygraph.hpp"
#include "polyconduche/term.hpp"

namespace polyconduche::io {

using nlohmann::json;

enum class DocKind { Category, Extension, Functor };

const char* to_string(DocKind k);

/// Reads and parses a file; throws SchemaError on I/O or syntax errors.
json read_json(const std::filesystem::path& path);
/// Pretty-printed with a trailing newline.
std::string dump(const json& j);

/// From an explicit "kind" field, or from the keys present.
DocKind document_kind(const json& doc);

/// Category document. Cell references must name listed cells; every cell
/// needs its boundaries and identity. Throws SchemaError.
PresentedCategory category_from_json(const json& doc);
json category_to_json(const PresentedCategory& c, const CellSets* basis = nullptr);
/// The optional "basis" member, as cell indices.
std::optional<CellSets> basis_from_json(const PresentedCategory& c, const json& doc);

/// Extension document; "base" is an inline category or a path relative to
/// `dir`.
ExtensionPtr extension_from_json(const json& doc, const std::filesystem::path& dir);
json extension_to_json(const CellularExtension& e);

/// A functor between finite categories, or a morphism of extensions when
/// both ends are extension documents.
using LoadedFunctor = std::variant<OmegaFunctor, ExtensionMorphism>;
LoadedFunctor functor_from_json(const json& doc, const std::filesystem::path& dir);
/// "source" and "target" are written as the given strings.
json functor_to_json(const OmegaFunctor& f, const std::string& source, const std::string& target);

std::shared_ptr<const PresentedCategory> load_category(const std::filesystem::path& path);
ExtensionPtr load_extension(const std::filesystem::path& path);
LoadedFunctor load_functor(const std::filesystem::path& path);

json to_json(const ValidationReport& r);
json to_json(const ElementaryMovement& m);
json to_json(const EquivalenceWitness& w);
json to_json(const SearchBounds& b);
json to_json(const ConducheReport& r, const OmegaFunctor& f);
json to_json(const FiberResult& r, const OmegaFunctor* f = nullptr);
json to_json(const BasisVerdict& v, const PresentedCategory& c);
json basis_to_json(const PresentedCategory& c, const CellSets& basis);

/// Movements out of t and, up to `depth`, out of their results. Nodes are
/// serialized words, edges carry the case and direction.
std::string movements_dot(const Term& t, Direction direction, unsigned depth = 1);

}  // namespace polyconduche::io
