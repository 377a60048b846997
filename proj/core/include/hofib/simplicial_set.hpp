#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "hofib/simplicial_operator.hpp"

namespace hofib {

// Identifies a nondegenerate generator: its dimension and its position
// within that dimension.
struct GenId {
  int dim = 0;
  int index = 0;
  auto operator<=>(const GenId&) const = default;
};

// A simplex in Eilenberg-Zilber normal form: a degeneracy word applied to
// a nondegenerate generator.
struct SimplexRef {
  GenId gen;
  DegeneracyWord word;

  int dim() const { return gen.dim + static_cast<int>(word.length()); }
  bool degenerate() const { return !word.empty(); }

  auto operator<=>(const SimplexRef&) const = default;
};

struct SimplexRefHash {
  std::size_t operator()(const SimplexRef& r) const noexcept;
};

/// A finite simplicial set truncated at `max_dim`: generators exist only in
/// degrees 0..max_dim, and homological statements about it are valid in
/// degrees up to max_dim - 1.
///
/// Generators carry unique labels; constructions derive labels from their
/// inputs so that two constructions can be compared generator by generator.
class SimplicialSet {
 public:
  explicit SimplicialSet(int max_dim);

  // Adds a generator of dimension faces.size() - 1 (0 when `faces` is
  // empty).  Faces must reference existing generators of one dimension less.
  GenId add(std::string label, std::vector<SimplexRef> faces = {});

  int max_dim() const { return max_dim_; }
  // Largest degree with at least one generator, -1 if empty.
  int top_dim() const;
  bool empty() const;

  std::size_t count(int dim) const;
  std::vector<std::size_t> counts() const;
  std::size_t size() const;
  std::vector<GenId> generators(int dim) const;

  const std::string& label(GenId g) const;
  std::span<const SimplexRef> faces(GenId g) const;
  std::optional<GenId> find(std::string_view label) const;
  bool contains(GenId g) const;

  // Face of generator along an injection delta : [l] -> [g.dim].
  SimplexRef face_along(GenId g, std::span<const int> injection) const;
  // x . theta for an order-preserving theta : [q] -> [dim x].
  SimplexRef apply(const SimplexRef& x, std::span<const int> theta) const;
  SimplexRef face(const SimplexRef& x, int i) const;
  SimplexRef degeneracy(const SimplexRef& x, int i) const;

  // Vertex sequence of a simplex (its image of each vertex of [dim x]).
  std::vector<SimplexRef> vertices(const SimplexRef& x) const;

  long long euler_characteristic() const;

  // Readable form of a simplex, e.g. "s1 s0 v" or "e".
  std::string describe(const SimplexRef& x) const;

 private:
  struct Generator {
    std::string label;
    std::vector<SimplexRef> faces;
  };

  const Generator& generator(GenId g) const;

  int max_dim_;
  std::vector<std::vector<Generator>> levels_;
  std::unordered_map<std::string, GenId> by_label_;
};

using SSetPtr = std::shared_ptr<const SimplicialSet>;

SimplexRef nondegenerate(GenId g);

struct Diagnostic {
  GenId generator;
  std::string message;
};

/// Lists dangling references, dimension mismatches and violations of
/// d_i d_j = d_{j-1} d_i (i < j).  Empty iff well formed.
std::vector<Diagnostic> validate(const SimplicialSet& x);

}  // namespace hofib
