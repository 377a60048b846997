#pragma once

#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hofib/constructions.hpp"

namespace hofib {

// Weakly increasing sequence of nonempty faces of some Delta[p], each face
// recorded by its vertex set.  Strictly increasing chains are the
// nondegenerate simplices of Delta'[p].
using FaceChain = std::vector<VertexSet>;

std::string chain_label(const FaceChain& chain);  // "{0}<{0,1}"
bool is_weak_chain(const FaceChain& chain);

/// Delta'[n], the nerve of the poset of nonempty faces of Delta[n].
/// Generators are strict chains labelled by chain_label().
SSetPtr barycentric_delta(int n, int max_dim = -1);
// Simplex of Delta'[n] for a weakly increasing chain.
SimplexRef chain_simplex(const SimplicialSet& delta_prime, const FaceChain& chain);

/// Sd X.  Its nondegenerate q-simplices are the pairs [x, mu] with x a
/// nondegenerate p-generator of X and mu a strict chain of q + 1 faces of
/// Delta[p] ending at the top face; labels read "x|{0}<{0,1}".
struct Subdivision {
  struct Cell {
    GenId x;
    FaceChain chain;
  };

  SSetPtr source;
  SSetPtr space;
  SimplicialMap last_vertex;  // Sd X -> X
  std::map<std::pair<GenId, FaceChain>, GenId> index;
  std::vector<std::vector<Cell>> cells;  // by generator of Sd X

  // The class of (x, mu) for any simplex x of X of dimension p and a weakly
  // increasing chain mu of faces of Delta[p].
  SimplexRef locate(const SimplexRef& x, const FaceChain& mu) const;
  const Cell& decode(GenId g) const { return cells[g.dim][g.index]; }
  // (x, mu) representing an arbitrary simplex of Sd X, x nondegenerate.
  Cell expand(const SimplexRef& s) const;
};

Subdivision sd(SSetPtr x);

// Sd f : Sd X -> Sd Y, [x, mu] -> [f x, mu].
SimplicialMap sd_map(const SimplicialMap& f, const Subdivision& source,
                     const Subdivision& target);

/// Sd f : Sd E -> Delta'[n] for f : E -> Delta[n].  On [x, mu] the i-th
/// face is the image of mu_i under f(x).
struct SubdividedMap {
  SimplicialMap original;
  int n = 0;
  Subdivision source;
  SSetPtr target;  // Delta'[n]
  SimplicialMap map;
  std::vector<std::vector<FaceChain>> nu;  // image chain of every Sd E generator

  // Image chain of [x, mu] for an arbitrary simplex of Sd E.
  FaceChain image_chain(const SimplexRef& s) const;
};

SubdividedMap sd_over_simplex(const SimplicialMap& f);

// St(alpha) in Delta'[n]: chains all of whose members contain alpha.
Subcomplex star(SSetPtr delta_prime, VertexSet alpha);
// ESt(alpha), the preimage of St(alpha) under Sd f.
Subcomplex est(const SubdividedMap& sf, VertexSet alpha);
// Sd f^-1(alpha), simplices whose image chain is constant at alpha.
Subcomplex sd_fiber(const SubdividedMap& sf, VertexSet alpha);

/// The retraction r : ESt(alpha) -> Sd f^-1(alpha) and homotopy
/// H : ESt(alpha) x Delta[1] -> ESt(alpha) from i r to the identity,
/// together with exact checks of the three identities.
struct StarRetraction {
  VertexSet alpha = 0;
  Subcomplex star_preimage;  // ESt(alpha)
  Subcomplex fiber;          // Sd f^-1(alpha)
  SimplicialMap inclusion;   // fiber -> ESt(alpha)
  SimplicialMap retraction;  // ESt(alpha) -> fiber
  TupleSpace cylinder;       // ESt(alpha) x Delta[1]
  SimplicialMap homotopy;    // cylinder -> ESt(alpha)
  bool retracts = false;     // r i = id
  bool end0 = false;         // H(-, 0) = i r
  bool end1 = false;         // H(-, 1) = id
};

StarRetraction star_retraction(const SubdividedMap& sf, VertexSet alpha);

/// ESt over the category of nonempty faces of Delta[n] with inclusions
/// ESt(sigma) -> ESt(d_i sigma), and its strict colimit.  Construction fails
/// with InternalError unless the colimit is isomorphic to Sd E generator by
/// generator.
struct CubeDiagram {
  std::vector<VertexSet> objects;
  std::vector<Subcomplex> values;
  std::vector<std::pair<int, int>> arrows;  // (from, to) object indices
  SSetPtr colimit;
  SimplicialMap comparison;  // colimit -> Sd E
};

CubeDiagram cube_decomposition(const SubdividedMap& sf);

// Sd f^-1 of the barycenter, i.e. of the top face of Delta[n].
Subcomplex barycenter_preimage(const SubdividedMap& sf);

}  // namespace hofib
