#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hofib/borel.hpp"
#include "hofib/errors.hpp"
#include "hofib/simplicial_map.hpp"

namespace hofib {

struct SourcePos {
  int line = 1;
  int column = 1;
};

// Syntax, resolution and semantic errors in a document.  what() reads
// "LINE:COL: message" followed by suggestions when there are any.
class ParseError : public Error {
 public:
  ParseError(SourcePos pos, std::string message, std::vector<std::string> suggestions = {});

  SourcePos pos() const { return pos_; }
  const std::string& message() const { return message_; }
  const std::vector<std::string>& suggestions() const { return suggestions_; }

 private:
  SourcePos pos_;
  std::string message_;
  std::vector<std::string> suggestions_;
};

struct SsetDecl {
  std::string name;
  SourcePos pos;
  SSetPtr space;
};

struct MapDecl {
  std::string name;
  SourcePos pos;
  std::string source;
  std::string target;
  SimplicialMap map;
};

struct MonoidDecl {
  std::string name;
  SourcePos pos;
  Monoid monoid;
};

struct DiagramDecl {
  std::string name;
  SourcePos pos;
  std::string over;  // a monoid, read as a one-object category "*"
  std::vector<SSetPtr> values;
  std::map<std::tuple<int, int, GenId>, SimplicialMap> actions;
};

/// Every declaration of a file, resolved.  Names are unique per kind.
struct Document {
  int max_dim = 4;
  std::vector<SsetDecl> ssets;
  std::vector<MapDecl> maps;
  std::vector<MonoidDecl> monoids;
  std::vector<DiagramDecl> diagrams;

  const SsetDecl* find_sset(std::string_view name) const;
  const MapDecl* find_map(std::string_view name) const;
  const MonoidDecl* find_monoid(std::string_view name) const;
  const DiagramDecl* find_diagram(std::string_view name) const;
  std::vector<std::string> names() const;

  // Builds the diagram over from_monoid(monoid, max_dim).
  Diagram diagram(const DiagramDecl& d) const;
};

/// Grammar:
///   sset NAME { SIMPLEX : dim N faces [F0, ..., FN] ; ... }
///   map NAME : SRC -> DST { SIMPLEX -> F ; ... }
///   monoid NAME { elements a, b, ... ; unit a ; mul { a.b = c ; ... } }
///   diagram NAME over MONOID { F(OBJ) = SSET ; act(OBJ, OBJ) : ELEM -> MAP ; ... }
/// where a face F is a simplex name or "sK F".  A vertex may omit "faces []".
/// Comments run from '#' to the end of the line.  Spaces are truncated at
/// max(max_dim, top dimension).  An action of the unit defaults to the identity.
Document parse(std::string_view text, int max_dim = 4);
Document parse_file(const std::string& path, int max_dim = 4);

// Up to three candidates within edit distance 2, closest first.
std::vector<std::string> suggest(std::string_view name, const std::vector<std::string>& candidates);

}  // namespace hofib
