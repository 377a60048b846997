#pragma once

#include <string>
#include <vector>

#include "hofib/simplicial_set.hpp"

namespace hofib {

/// A map of simplicial sets, given by the image of every nondegenerate
/// generator of the source.
class SimplicialMap {
 public:
  SimplicialMap() = default;
  SimplicialMap(SSetPtr source, SSetPtr target);

  static SimplicialMap identity(SSetPtr x);

  const SSetPtr& source() const { return source_; }
  const SSetPtr& target() const { return target_; }

  void set(GenId g, SimplexRef image);
  const SimplexRef& operator()(GenId g) const;
  bool is_set(GenId g) const;
  // Image of an arbitrary (possibly degenerate) simplex of the source.
  SimplexRef apply(const SimplexRef& x) const;

  // Generator-level equality (same source, target and images).
  bool operator==(const SimplicialMap& other) const;

  // Bijective on nondegenerate generators, every image nondegenerate.
  bool is_isomorphism() const;
  // Every generator maps to a nondegenerate generator, injectively.
  bool is_injective_on_generators() const;

 private:
  SSetPtr source_;
  SSetPtr target_;
  std::vector<std::vector<SimplexRef>> images_;
  std::vector<std::vector<char>> assigned_;
};

// (g o f)
SimplicialMap compose(const SimplicialMap& g, const SimplicialMap& f);

/// Unassigned generators, dimension mismatches and failures of f d_i = d_i f.
std::vector<Diagnostic> validate(const SimplicialMap& f);

}  // namespace hofib
