#include <doctest.h>

#include <random>

#include "corpus.hpp"
#include "hofib/commands.hpp"
#include "hofib/fibration.hpp"

using namespace hofib;

namespace {

SimplicialMap collapse(int max_dim) { return *builtin_map("collapse_circle_to_interval", max_dim); }

bool has_witness(const FibrationReport& r, const std::string& op, int degree) {
  for (const auto& p : r.pairs) {
    if (!p.result.iso && p.operation == op && p.result.first_failure == degree) return true;
  }
  return false;
}

class AlwaysIso : public EquivalenceChecker {
 public:
  mutable int calls = 0;
  IsoCertificate check(const SimplicialMap&, int up_to) const override {
    ++calls;
    IsoCertificate c;
    c.up_to = up_to;
    return c;
  }
  std::string name() const override { return "always"; }
};

}  // namespace

TEST_CASE("preimage of a vertex in a product is the fiber") {
  const TupleSpace t = product(standard_simplex(2, 3), cycle_graph(3, 3), 3);
  const SimplicialMap& p = t.projections[0];
  const PreimageRecord r = dp(p, nondegenerate(GenId{0, 1}));
  const SimplicialMap to_fiber = compose(t.projections[1], r.to_total());
  CHECK(to_fiber.is_isomorphism());
  const PreimageRecord top = dp(p, nondegenerate(GenId{2, 0}));
  CHECK(top.space()->count(0) == 9);
}

TEST_CASE("weak check verdicts") {
  const SSetPtr c3 = cycle_graph(3, 4);
  const SimplicialMap cover = cycle_cover(cycle_graph(6, 4), c3);
  CHECK(weak_fibration_check(cover, 3).passed);
  const TupleSpace t = product(standard_simplex(1, 4), c3, 4);
  CHECK(weak_fibration_check(t.projections[0], 3).passed);
  CHECK(weak_fibration_check(t.projections[1], 3).passed);
  const FibrationReport bad = weak_fibration_check(collapse(4), 3);
  CHECK_FALSE(bad.passed);
  CHECK(has_witness(bad, "d1", 1));
  CHECK(has_witness(bad, "d0", 1));
}

TEST_CASE("deep operator audit agrees with faces and degeneracies") {
  const SimplicialMap cover = cycle_cover(cycle_graph(6, 3), cycle_graph(3, 3));
  WeakCheckOptions deep;
  deep.deep_ops = true;
  const FibrationReport a = weak_fibration_check(cover, 2);
  const FibrationReport b = weak_fibration_check(cover, 2, deep);
  CHECK(a.passed == b.passed);
  CHECK(b.pairs.size() > a.pairs.size());
  CHECK(weak_fibration_check(collapse(3), 2, deep).passed == false);
}

TEST_CASE("stopping at the first failure") {
  WeakCheckOptions opts;
  opts.stop_at_first_failure = true;
  const FibrationReport r = weak_fibration_check(collapse(3), 2, opts);
  CHECK_FALSE(r.passed);
  CHECK(*r.first_failure + 1 == r.pairs.size());
}

TEST_CASE("pullback of a weak fibration along a covering") {
  const SSetPtr c3 = cycle_graph(3, 4);
  const SimplicialMap p = cycle_cover(cycle_graph(6, 4), c3);
  const SimplicialMap f = cycle_cover(cycle_graph(12, 4), c3);
  const PulledBack pb = pullback_fibration(p, f, true);
  CHECK(pb.limit.space->count(0) == 24);
  CHECK(pb.base_change_is_fibration);
  CHECK(weak_fibration_check(p, 3).passed == weak_fibration_check(pb.map, 3).passed);
  CHECK(validate(pb.map).empty());
}

TEST_CASE("comparison maps compose") {
  const TupleSpace t = product(standard_simplex(2, 3), cycle_graph(3, 3), 3);
  PreimageFunctor dpf(t.projections[0]);
  const SimplexRef sigma = nondegenerate(GenId{2, 0});
  std::mt19937 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    std::uniform_int_distribution<int> pick(0, 2);
    OrderMap theta{pick(rng), pick(rng)};
    std::sort(theta.begin(), theta.end());
    OrderMap psi{std::uniform_int_distribution<int>(0, 1)(rng)};
    const SimplicialMap whole = dpf.comparison(sigma, compose(theta, psi));
    const SimplexRef tau = dpf.base().apply(sigma, theta);
    const SimplicialMap split = compose(dpf.comparison(sigma, theta), dpf.comparison(tau, psi));
    CHECK(whole == split);
  }
}

TEST_CASE("strong check with a declared fiber") {
  const SimplicialMap cover = cycle_cover(cycle_graph(6, 3), cycle_graph(3, 3));
  const SSetPtr two = disjoint_union({point(3), point(3)}, 3).space;
  const FibrationReport r = strong_check_via_known_fiber(cover, KnownFiberSpec{GenId{0, 0}, two, "", {}}, 2);
  CHECK(r.passed);
  CHECK_FALSE(r.warnings.empty());
  const FibrationReport wrong =
      strong_check_via_known_fiber(cover, KnownFiberSpec{GenId{0, 0}, point(3), "", {}}, 2);
  CHECK_FALSE(wrong.passed);
}

TEST_CASE("components through edges") {
  const SSetPtr two = disjoint_union({cycle_graph(3, 1), cycle_graph(4, 1)}, 1).space;
  CHECK(component_of(*two, GenId{0, 0}).size() == 3);
  CHECK(component_of(*two, GenId{0, 5}).size() == 4);
}

TEST_CASE("fiber homology over a contractible base") {
  const Suspension s = suspension(corpus::icosahedral(3), 3);
  const ContractibleBaseReport r = fiber_homology_over_contractible(s.to_interval, 2);
  CHECK(r.comparisons.passed);
  CHECK(r.base_acyclic);
  CHECK(r.table[0].free_rank == 1);
  CHECK(r.table[1].trivial());
  CHECK(r.table[2].trivial());
  CHECK_FALSE(fiber_homology_over_contractible(collapse(3), 2).comparisons.passed);
  const SimplicialMap over_circle = cycle_cover(cycle_graph(6, 3), cycle_graph(3, 3));
  CHECK_FALSE(fiber_homology_over_contractible(over_circle, 1).comparisons.passed);
}

TEST_CASE("the equivalence predicate is pluggable") {
  AlwaysIso always;
  WeakCheckOptions opts;
  opts.checker = &always;
  CHECK(weak_fibration_check(collapse(3), 2, opts).passed);
  CHECK(always.calls > 0);
}

TEST_CASE("degrees above the truncation are flagged") {
  const FibrationReport r = weak_fibration_check(cycle_cover(cycle_graph(6, 2), cycle_graph(3, 2)), 2);
  CHECK_FALSE(r.warnings.empty());
}
