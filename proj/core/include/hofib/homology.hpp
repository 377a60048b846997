#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "hofib/simplicial_map.hpp"
#include "hofib/simplicial_set.hpp"
#include "hofib/sparse_matrix.hpp"

namespace hofib {

// Sparse vector over the chain basis of one degree, keyed by basis position.
using Chain = std::map<int, Integer>;

/// Normalized chains: degree k is free on the nondegenerate k-generators,
/// ordered by label so that the result does not depend on insertion order.
/// Degrees run over 0..max_dim + 1; the last one is always zero.
struct ChainComplex {
  Coefficients ring;
  int max_dim = 0;
  std::vector<std::vector<GenId>> basis;
  std::vector<std::vector<int>> position;  // [k][gen.index] -> basis slot
  std::vector<SparseMatrix> boundary;      // boundary[k] : C_k -> C_{k-1}

  int rank(int k) const;
  int slot(GenId g) const { return position[g.dim][g.index]; }
};

ChainComplex normalized_chains(const SimplicialSet& x, Coefficients ring = {});

Chain multiply(const SparseMatrix& m, const Chain& v);
Chain boundary_of(const ChainComplex& c, int k, const Chain& v);

// Matrix of f_# : C_k(source) -> C_k(target); degenerate images vanish.
SparseMatrix chain_map(const SimplicialMap& f, const ChainComplex& source,
                       const ChainComplex& target, int k);

/// H_k as free_rank copies of the ring plus cyclic torsion summands.  The
/// basis lists torsion generators first (orders torsion[i]), then free ones.
struct HomologyGroup {
  int degree = 0;
  int free_rank = 0;
  std::vector<Integer> torsion;  // invariant factors > 1, each dividing the next
  std::vector<Chain> basis;
  bool valid = true;  // false above the truncation bound
  Coefficients ring;

  bool trivial() const { return free_rank == 0 && torsion.empty(); }
  // Order of basis element i, 0 for free generators.
  Integer order(std::size_t i) const;
  std::string to_string() const;  // "0", "Z", "Z^2 + Z/2", "(Z3)^2"
};

/// Homology of one simplicial set, computed lazily per degree.  Keeps the
/// change-of-basis data needed to express arbitrary cycles in the basis.
class Homology {
 public:
  explicit Homology(const SimplicialSet& x, Coefficients ring = {});

  const ChainComplex& chains() const { return chains_; }
  const Coefficients& ring() const { return chains_.ring; }
  int valid_up_to() const { return chains_.max_dim - 1; }

  const HomologyGroup& group(int k) const;
  // Coordinates of a cycle in the basis of group(k); torsion coordinates are
  // reduced modulo their order.  Throws PreconditionError for non-cycles.
  std::vector<Integer> coordinates(int k, const Chain& cycle) const;

 private:
  struct Degree {
    HomologyGroup group;
    SparseMatrix kernel_inverse;  // V^-1 of the SNF of boundary[k]
    int boundary_rank = 0;        // rank of boundary[k]
    SparseMatrix reduce;          // U of the SNF of boundaries in kernel coordinates
    std::vector<Integer> invariants;
  };
  const Degree& degree(int k) const;

  ChainComplex chains_;
  mutable std::map<int, std::shared_ptr<Degree>> cache_;
};

HomologyGroup homology(const SimplicialSet& x, int k, Coefficients ring = {});

/// Matrix of H_k(f) with rows indexed by the target basis and columns by
/// the source basis.  Entries in torsion rows are reduced modulo the order.
struct InducedMap {
  int degree = 0;
  std::vector<std::vector<Integer>> matrix;
  std::vector<Integer> source_orders;  // 0 = free generator
  std::vector<Integer> target_orders;
};

InducedMap induced(const SimplicialMap& f, int k, const Homology& source,
                   const Homology& target);
InducedMap induced(const SimplicialMap& f, int k, Coefficients ring = {});

struct IsoDegree {
  int degree = 0;
  bool iso = false;
  std::string source;  // HomologyGroup::to_string of both sides
  std::string target;
  std::string reason;  // empty when iso
};

struct IsoCertificate {
  bool iso = true;
  int up_to = 0;
  std::vector<IsoDegree> degrees;
  std::optional<int> first_failure;
};

// Isomorphism test for one induced map: trivial cokernel plus matching
// invariants (a surjection between isomorphic finitely generated groups is
// injective).
IsoDegree classify_induced(const InducedMap& m, const HomologyGroup& source,
                           const HomologyGroup& target, const Coefficients& ring);

IsoCertificate is_homology_iso(const SimplicialMap& f, int up_to, Coefficients ring = {});
IsoCertificate is_homology_iso(const SimplicialMap& f, int up_to, const Homology& source,
                               const Homology& target);

// Reduced homology vanishes in degrees 0..up_to.  The empty set is not acyclic.
bool is_acyclic(const SimplicialSet& x, int up_to, Coefficients ring = {});

/// The predicate behind "homology equivalence".  Only ordinary homology with
/// Z or Z/p coefficients is implemented.
class EquivalenceChecker {
 public:
  virtual ~EquivalenceChecker() = default;
  virtual IsoCertificate check(const SimplicialMap& f, int up_to) const = 0;
  virtual std::string name() const = 0;
};

class OrdinaryHomologyChecker : public EquivalenceChecker {
 public:
  explicit OrdinaryHomologyChecker(Coefficients ring = {}) : ring_(ring) {}
  IsoCertificate check(const SimplicialMap& f, int up_to) const override;
  std::string name() const override { return "H_*(-;" + ring_.name() + ")"; }

 private:
  Coefficients ring_;
};

}  // namespace hofib
