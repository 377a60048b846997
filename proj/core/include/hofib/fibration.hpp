#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "hofib/constructions.hpp"
#include "hofib/homology.hpp"

namespace hofib {

/// dp(sigma) = Delta[n] x_B E for the representing map of sigma.  Tuple
/// components are ordered (simplex of Delta[n], simplex of E).
struct PreimageRecord {
  SimplexRef sigma;
  GenId core;  // nondegenerate generator underlying sigma
  SSetPtr delta;
  TupleSpace limit;

  const SSetPtr& space() const { return limit.space; }
  const SimplicialMap& structure() const { return limit.projections[0]; }  // -> Delta[n]
  const SimplicialMap& to_total() const { return limit.projections[1]; }   // -> E
};

PreimageRecord dp(const SimplicialMap& p, const SimplexRef& sigma, int max_dim = -1);

// K x_B E for f : K -> B.  Components are ordered (K, E).
TupleSpace dp_along(const SimplicialMap& p, const SimplicialMap& f, int max_dim = -1);

/// dp for one fixed p with the preimages and their homology memoized.
class PreimageFunctor {
 public:
  explicit PreimageFunctor(SimplicialMap p, int max_dim = -1, Coefficients ring = {});

  const SimplicialMap& map() const { return p_; }
  const SimplicialSet& base() const { return *p_.target(); }
  int max_dim() const { return max_dim_; }
  const Coefficients& ring() const { return ring_; }

  const PreimageRecord& at(const SimplexRef& sigma);
  const Homology& homology(const SimplexRef& sigma);

  // Canonical map dp(sigma . theta) -> dp(sigma), (a, e) -> (theta a, e).
  SimplicialMap comparison(const SimplexRef& sigma, const OrderMap& theta);

 private:
  SimplicialMap p_;
  int max_dim_;
  Coefficients ring_;
  std::map<SimplexRef, std::unique_ptr<PreimageRecord>> records_;
  std::map<SimplexRef, std::unique_ptr<Homology>> homology_;
};

/// One tested comparison: dp(source) -> dp(target) along `operation`.
struct PairCertificate {
  std::string base;       // the nondegenerate simplex of B being examined
  std::string operation;  // "d1", "s0", "[0,0,2]", "incl", ...
  std::string source;
  std::string target;
  IsoCertificate result;
};

struct WeakCheckOptions {
  bool deep_ops = false;  // every order map, not only faces and degeneracies
  bool stop_at_first_failure = false;
  // Replaces the built-in ordinary homology predicate when set.
  const EquivalenceChecker* checker = nullptr;
};

struct FibrationReport {
  bool passed = true;
  int up_to = 0;
  std::vector<PairCertificate> pairs;
  std::optional<std::size_t> first_failure;  // index into pairs
  std::vector<std::string> warnings;
};

/// Tests every face comparison dp(d_i sigma) -> dp(sigma) and, for each
/// degeneracy, the section dp(sigma) -> dp(s_i sigma) along delta^i, over all
/// nondegenerate sigma of B.  Degeneracies of top-dimensional simplices lie
/// above the truncation and are skipped.
FibrationReport weak_fibration_check(PreimageFunctor& dp, int up_to,
                                     const WeakCheckOptions& options = {});
FibrationReport weak_fibration_check(const SimplicialMap& p, int up_to,
                                     const WeakCheckOptions& options = {});

struct PulledBack {
  TupleSpace limit;    // components (B', E)
  SimplicialMap map;   // E' -> B'
  bool base_change_is_fibration = false;  // caller assertion, not verified
};

PulledBack pullback_fibration(const SimplicialMap& p, const SimplicialMap& f,
                              bool f_is_fibration = false, int max_dim = -1);

struct ContractibleBaseReport {
  FibrationReport comparisons;
  bool base_acyclic = false;
  bool base_connected = false;
  std::vector<HomologyGroup> table;  // H_0..H_up_to of E, shared by all preimages
};

/// Checks all face comparisons and every inclusion dp(sigma) -> E.  The
/// base must be connected and acyclic up to `up_to`; otherwise a warning is
/// recorded and the report fails.
ContractibleBaseReport fiber_homology_over_contractible(const SimplicialMap& p, int up_to);

/// A fiber declared by the caller, attached to the component of `vertex`.
struct KnownFiberSpec {
  GenId vertex;
  SSetPtr fiber;
  std::string note;
  // Optional map F -> dp(vertex); without it only invariants are compared.
  std::function<SimplicialMap(const PreimageRecord&)> fiber_map;
};

/// For each nondegenerate sigma in the component of spec.vertex, tests the
/// vertex inclusion dp(v_0 sigma) -> dp(sigma); then compares the declared
/// fiber with dp(spec.vertex).
FibrationReport strong_check_via_known_fiber(PreimageFunctor& dp, const KnownFiberSpec& spec,
                                             int up_to);
FibrationReport strong_check_via_known_fiber(const SimplicialMap& p, const KnownFiberSpec& spec,
                                             int up_to);

// Vertices in the connected component of v (through edges of B).
std::vector<GenId> component_of(const SimplicialSet& b, GenId v);

}  // namespace hofib
