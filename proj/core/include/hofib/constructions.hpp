#pragma once

#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hofib/simplicial_map.hpp"
#include "hofib/simplicial_set.hpp"

namespace hofib {

// ---------------------------------------------------------------------------
// Standard simplices

/// Delta[n].  Generators are the nonempty subsets of {0..n}, labelled
/// "{0,2}", with max_dim = max(n, max_dim).
SSetPtr standard_simplex(int n, int max_dim = -1);
/// Delta[n] with the top generator removed.  Throws for n == 0.
SSetPtr boundary(int n, int max_dim = -1);

// Inverse of set_label().
VertexSet parse_set_label(const std::string& label);

// Simplex of Delta[n] (or of boundary(n)) with the given weakly increasing
// vertex sequence.
SimplexRef simplex_of(const SimplicialSet& delta, std::span<const int> vertices);
// Vertex sequence of a simplex of a standard simplex (or of a space whose
// vertices are labelled "{v}").
std::vector<int> vertex_sequence(const SimplicialSet& delta, const SimplexRef& x);

// The map Delta[n] -> X representing the n-simplex sigma.
SimplicialMap representing_map(SSetPtr x, const SimplexRef& sigma,
                               SSetPtr delta = nullptr);

// If x is isomorphic to Delta[n] through its unique top generator, returns n.
std::optional<int> standard_simplex_dimension(const SimplicialSet& x);

// ---------------------------------------------------------------------------
// Limits

/// A limit built from tuples of simplices: products and pullbacks.  Its
/// nondegenerate q-simplices are the tuples (a_1, ..., a_m) of q-simplices
/// whose degeneracy index sets have empty common intersection.
struct TupleSpace {
  SSetPtr space;
  std::vector<SSetPtr> factors;
  std::vector<SimplicialMap> projections;
  std::map<std::vector<SimplexRef>, GenId> index;

  // Simplex of the limit with the given components (all of one dimension);
  // nullopt when the tuple is not in the limit.
  std::optional<SimplexRef> locate(std::span<const SimplexRef> components) const;
  // Like locate(), but throws if the tuple is absent.
  SimplexRef at(std::span<const SimplexRef> components) const;
  std::vector<SimplexRef> components(const SimplexRef& x) const;
};

TupleSpace product(std::vector<SSetPtr> factors, int max_dim);
inline TupleSpace product(SSetPtr x, SSetPtr y, int max_dim) {
  return product(std::vector<SSetPtr>{std::move(x), std::move(y)}, max_dim);
}

/// X x_B Y for f : X -> B and g : Y -> B.  Enumerated by a hash join on the
/// image in B, so only pairs lying over a common simplex are ever formed.
TupleSpace pullback(const SimplicialMap& f, const SimplicialMap& g, int max_dim);

// Map K -> limit with the given component maps (they must agree over the
// base for pullbacks).
SimplicialMap map_into(const TupleSpace& limit, SSetPtr source,
                       std::span<const SimplicialMap> components);

// Terminal object.
SSetPtr point(int max_dim = 0);
SimplicialMap map_to_point(SSetPtr x, SSetPtr pt);

// ---------------------------------------------------------------------------
// Colimits

struct Pushout {
  SSetPtr space;
  SimplicialMap from_x;  // X -> P
  SimplicialMap from_y;  // Y -> P (label preserving inclusion)
  // Origin of every generator of P: true if it comes from X \ i(A).
  std::vector<std::vector<char>> from_x_side;
  std::vector<std::vector<GenId>> origin;
};

/// P = X u_A Y for a cofibration leg i : A -> X (injective on generators)
/// and an arbitrary j : A -> Y.  Generators of Y keep their labels; new
/// generators from X get `x_prefix` prepended.
Pushout pushout(const SimplicialMap& i, const SimplicialMap& j,
                const std::string& x_prefix = "");

// Map out of a pushout from compatible maps on X and Y.
SimplicialMap induced_from_pushout(const Pushout& p, const SimplicialMap& u,
                                   const SimplicialMap& v);

struct Coproduct {
  SSetPtr space;
  std::vector<SimplicialMap> injections;
};

/// Labels of summand k are prefixed with "k/".
Coproduct disjoint_union(const std::vector<SSetPtr>& parts, int max_dim = -1);

struct Subcomplex {
  SSetPtr space;
  SSetPtr ambient;
  SimplicialMap inclusion;

  bool contains(GenId ambient_gen) const;
  // Ambient simplex expressed in the subcomplex (same label and word).
  SimplexRef restrict(const SimplexRef& ambient_simplex) const;
};

/// Full sub-simplicial set on the generators selected by `keep`; throws if
/// the selection is not closed under faces.
Subcomplex subcomplex(SSetPtr ambient, const std::function<bool(GenId)>& keep);

/// Preimage of a sub-simplicial set under f (generators whose image core
/// is selected).
Subcomplex preimage(const SimplicialMap& f,
                    const std::function<bool(GenId)>& keep_in_target);

// ---------------------------------------------------------------------------
// Named spaces

/// One vertex, one edge per letter, and per relator a fan-triangulated disc
/// whose boundary reads the relator.  Letters are single identifiers; an
/// inverse is written with a trailing "^-1" or, in compact form, as the
/// upper-case letter.
struct Letter {
  std::string name;
  bool inverse = false;
};
using RelatorWord = std::vector<Letter>;
SSetPtr presentation_complex(const std::vector<std::string>& letters,
                             const std::vector<RelatorWord>& relators,
                             int max_dim = 2);
// Parses "s s s S T S T"-style or "s^3 (ts)^-2" compact notation.
RelatorWord parse_relator(const std::string& text);

struct Suspension {
  SSetPtr space;
  SimplicialMap to_interval;  // Sigma X -> Delta[1]
};
/// Unreduced suspension X x Delta[1] / (X x {0}, X x {1}), with the
/// projection to Delta[1]; preimages of both vertices are single points.
Suspension suspension(SSetPtr x, int max_dim = -1);

// Boundary of the n-gon as a cyclic simplicial set (vertices "c0".."c{n-1}",
// edges "e0".."e{n-1}" with e_k : c_k -> c_{k+1}).
SSetPtr cycle_graph(int n, int max_dim = 1);
// Wrap-around map C_m -> C_n, c_k -> c_{k mod n}; requires n | m.
SimplicialMap cycle_cover(SSetPtr from, SSetPtr to);

}  // namespace hofib
