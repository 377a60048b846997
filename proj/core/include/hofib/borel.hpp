#pragma once

#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "hofib/constructions.hpp"
#include "hofib/fibration.hpp"
#include "hofib/homology.hpp"

namespace hofib {

/// Finite monoid given by its multiplication table: table[a][b] = a.b.
struct Monoid {
  std::string name;
  std::vector<std::string> elements;
  std::vector<std::vector<int>> table;
  int unit = 0;

  int size() const { return static_cast<int>(elements.size()); }
  int index_of(const std::string& element) const;

  static Monoid cyclic(int n);   // Z/n, elements "0".."n-1"
  static Monoid idempotent();    // {1, e} with e.e = e
  static Monoid trivial();
};

// Unit laws and associativity; empty iff the table is a monoid.
std::vector<std::string> validate(const Monoid& m);

/// A simplicial category with finitely many objects.  hom(i, j) holds the
/// morphisms i -> j; composition hom(j, k) x hom(i, j) -> hom(i, k) is
/// (g, f) -> g o f.
class SimplicialCategory {
 public:
  SimplicialCategory(std::vector<std::string> objects, int max_dim);

  int max_dim() const { return max_dim_; }
  int object_count() const { return static_cast<int>(objects_.size()); }
  const std::string& object(int i) const { return objects_[i]; }
  std::optional<int> find_object(const std::string& name) const;

  const SSetPtr& hom(int i, int j) const { return hom_[i][j]; }
  GenId identity(int i) const { return identity_[i]; }
  // g o f for simplices of equal dimension, f : i -> j and g : j -> k.
  SimplexRef compose(int i, int j, int k, const SimplexRef& g, const SimplexRef& f) const;
  // The identity of i as a q-simplex.
  SimplexRef identity_simplex(int i, int q) const;

  void set_hom(int i, int j, SSetPtr space);
  void set_identity(int i, GenId vertex);
  void set_composition(int i, int j, int k, TupleSpace domain, SimplicialMap map);

 private:
  struct Composition {
    TupleSpace domain;  // hom(j, k) x hom(i, j)
    SimplicialMap map;
  };
  int max_dim_;
  std::vector<std::string> objects_;
  std::vector<std::vector<SSetPtr>> hom_;
  std::vector<GenId> identity_;
  std::map<std::tuple<int, int, int>, Composition> composition_;
};

// One object "*", discrete hom space on the elements.  Throws on a table
// that is not a monoid.
SimplicialCategory from_monoid(const Monoid& m, int max_dim);

// Associativity and unit laws checked on generators of all composable triples.
std::vector<std::string> validate(const SimplicialCategory& c);

/// Contravariant diagram: F(i) per object and actions
/// mu_{i,j} : hom(i, j) x F(j) -> F(i).
class Diagram {
 public:
  Diagram(SimplicialCategory category, std::vector<SSetPtr> values);

  const SimplicialCategory& category() const { return category_; }
  const SSetPtr& value(int i) const { return values_[i]; }
  int object_count() const { return static_cast<int>(values_.size()); }

  const TupleSpace& action_domain(int i, int j) const { return actions_.at({i, j}).domain; }
  void set_action(int i, int j, SimplicialMap map);  // source: action_domain(i, j)
  SimplexRef act(int i, int j, const SimplexRef& f, const SimplexRef& y) const;
  // F(f) : F(j) -> F(i) for a vertex f of hom(i, j).
  SimplicialMap morphism_map(int i, int j, GenId f) const;

 private:
  struct Action {
    TupleSpace domain;
    SimplicialMap map;
  };
  SimplicialCategory category_;
  std::vector<SSetPtr> values_;
  std::map<std::pair<int, int>, Action> actions_;
};

// Unit and composition compatibility, generator-wise.
std::vector<std::string> validate(const Diagram& d);

// T(i) = {i}.
Diagram trivial_diagram(const SimplicialCategory& c);
// M_j(i) = hom(i, j), acting by precomposition.
Diagram restriction_diagram(const SimplicialCategory& c, int j);
// Diagram over a discrete-hom category given per morphism vertex by maps
// F(j) -> F(i); missing morphisms are an error.
Diagram diagram_from_maps(const SimplicialCategory& c, std::vector<SSetPtr> values,
                          const std::map<std::tuple<int, int, GenId>, SimplicialMap>& maps);

/// Truncated mapping telescope of M_1(i) -> M_1(i) -> ... along postcomposition
/// with alpha, built by pushouts of cylinders.  With `prune_tail`, cells of the
/// final copy outside the image of alpha are dropped: they are the part of
/// the last stage that is not yet identified with anything further along.
struct TelescopeOptions {
  int stages = 2;
  bool prune_tail = true;
};
Diagram telescope_diagram(const SimplicialCategory& c, int object, GenId alpha,
                          const TelescopeOptions& options = {});

/// Levels X_0..X_N with face and degeneracy maps.
struct SimplicialSpace {
  std::vector<SSetPtr> levels;
  std::vector<std::vector<SimplicialMap>> faces;         // faces[n][i] : X_n -> X_{n-1}
  std::vector<std::vector<SimplicialMap>> degeneracies;  // degeneracies[n][i] : X_n -> X_{n+1}

  int top() const { return static_cast<int>(levels.size()) - 1; }
};

std::vector<std::string> validate(const SimplicialSpace& x);

// X_n = X for all n, every structure map the identity.
SimplicialSpace constant_space(SSetPtr x, int top);

/// The Borel construction E_M F: level n is the disjoint union over object
/// tuples (i_0, ..., i_n) of F(i_0) x hom(i_1, i_0) x ... x hom(i_n, i_{n-1}).
/// Components of a simplex are listed in that order (x, m_1, ..., m_n).
struct BorelLevel {
  int n = 0;
  std::vector<std::vector<int>> tuples;  // (i_0, ..., i_n)
  std::vector<TupleSpace> blocks;
  Coproduct sum;
  std::vector<std::vector<std::pair<int, GenId>>> decode;  // level generator -> (block, block generator)

  const SSetPtr& space() const { return sum.space; }
  SimplexRef locate(int block, std::span<const SimplexRef> components) const;
  int block_of(const std::vector<int>& tuple) const;
  std::pair<int, std::vector<SimplexRef>> components(const SimplexRef& s) const;
};

struct BorelSpace {
  std::vector<BorelLevel> levels;
  SimplicialSpace space;
};

BorelLevel borel_level(const Diagram& f, int n);
BorelSpace borel_space(const Diagram& f, int top);

/// Segal's thick realization, stage by stage: stage n is the pushout of
/// stage n-1 <- bd Delta[n] x X_n -> Delta[n] x X_n, attached through face
/// maps only.
struct ThickRealization {
  std::vector<SSetPtr> stages;
  std::vector<TupleSpace> cells;      // Delta[k] x X_k
  std::vector<SimplicialMap> legs;    // cells[k] -> final stage
  std::vector<SimplicialMap> stage_inclusions;  // stage k -> final stage
  std::vector<std::vector<std::pair<int, GenId>>> origin;  // final generator -> (k, cell generator)

  const SSetPtr& space() const { return stages.back(); }
};

ThickRealization thick_realize(const SimplicialSpace& x, int top = -1);

// ||f|| for levelwise maps f_n : X_n -> Y_n commuting with the faces.
SimplicialMap realize_map(const std::vector<SimplicialMap>& levelwise, const ThickRealization& x,
                          const ThickRealization& y);

struct BorelTotal {
  BorelSpace total;          // E_M F
  BorelSpace base;           // B M = E_M T
  std::vector<SimplicialMap> levelwise;  // E_M F_n -> B M_n
  ThickRealization total_realized;
  ThickRealization base_realized;
  SimplicialMap projection;  // pi_M
};

ThickRealization classifying_space(const SimplicialCategory& c, int top);
BorelTotal borel_total(const Diagram& f, int top);

// Vertex of ||B M|| for object i, and the map F(i) -> dp(pi_M, vertex).
GenId object_vertex(const BorelTotal& b, int object);
SimplicialMap fiber_inclusion(const BorelTotal& b, int object, const PreimageRecord& record);

struct Gate {
  std::string name;
  bool passed = true;
  std::vector<std::string> witnesses;
};

struct GroupCompletionReport {
  std::vector<Gate> gates;  // hypothesis, levelwise, d0, realization
  int max_dim = 0;
  std::vector<HomologyGroup> total_homology;  // H_*(E_M F) up to max_dim - 1
  std::vector<HomologyGroup> base_homology;   // H_*(B M)
  std::vector<HomologyGroup> fiber_homology;  // H_*(dp(pi_M, first object))
  bool passed() const;
};

GroupCompletionReport group_completion_check(const Diagram& f, int top);

}  // namespace hofib
