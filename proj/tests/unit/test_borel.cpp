#include <doctest.h>

#include "hofib/borel.hpp"
#include "hofib/errors.hpp"
#include "hofib/homology.hpp"
#include "oracles.hpp"

using namespace hofib;

namespace {

void check_matches_bar(const Monoid& m, int top) {
  const ThickRealization b = classifying_space(from_monoid(m, top), top);
  CHECK(validate(*b.space()).empty());
  const Homology h(*b.space());
  const auto expected = oracle::bar_homology(m.table, top);
  for (int k = 0; k < top; ++k) {
    CAPTURE(k);
    CHECK(h.group(k).free_rank == expected[k].free_rank);
    CHECK(h.group(k).torsion == expected[k].torsion);
  }
}

const Gate& gate(const GroupCompletionReport& r, const std::string& name) {
  for (const Gate& g : r.gates) {
    if (g.name == name) return g;
  }
  throw std::runtime_error("no gate " + name);
}

}  // namespace

TEST_CASE("monoid tables are validated") {
  CHECK(validate(Monoid::cyclic(4)).empty());
  CHECK(validate(Monoid::idempotent()).empty());
  Monoid bad = Monoid::cyclic(3);
  bad.table[1][1] = 0;  // 1.1 = 0 breaks associativity
  CHECK_FALSE(validate(bad).empty());
  CHECK_THROWS_AS(from_monoid(bad, 2), PreconditionError);
  Monoid no_unit = Monoid::idempotent();
  no_unit.table[0][1] = 0;
  CHECK_FALSE(validate(no_unit).empty());
}

TEST_CASE("categories and diagrams from monoids satisfy the laws") {
  const SimplicialCategory c = from_monoid(Monoid::cyclic(3), 3);
  CHECK(validate(c).empty());
  CHECK(c.hom(0, 0)->count(0) == 3);
  CHECK(validate(trivial_diagram(c)).empty());
  CHECK(validate(restriction_diagram(c, 0)).empty());
  const SimplicialCategory e = from_monoid(Monoid::idempotent(), 3);
  CHECK(validate(restriction_diagram(e, 0)).empty());
  CHECK(validate(telescope_diagram(e, 0, GenId{0, 1})).empty());
}

TEST_CASE("fat point stages") {
  for (int top = 1; top <= 4; ++top) {
    const ThickRealization r = thick_realize(constant_space(point(top), top), top);
    REQUIRE(r.stages.size() == static_cast<std::size_t>(top + 1));
    const SSetPtr& stage = r.space();
    CHECK(validate(*stage).empty());
    // One cell per dimension; the boundary of the k-cell is the alternating
    // sum of k + 1 copies of the (k-1)-cell, so 1 for even k and 0 for odd k.
    const Homology h(*stage);
    CHECK(h.group(0).free_rank == 1);
    for (int k = 1; k < top; ++k) CHECK(h.group(k).trivial());
    CHECK(h.group(top).free_rank == (top % 2 == 1 ? 1 : 0));
  }
  const ThickRealization one = thick_realize(constant_space(point(1), 1), 1);
  CHECK(one.space()->count(0) == 1);
  CHECK(one.space()->count(1) == 1);
}

TEST_CASE("classifying spaces agree with the bar complex") {
  check_matches_bar(Monoid::cyclic(2), 5);
  check_matches_bar(Monoid::cyclic(3), 4);
  check_matches_bar(Monoid::idempotent(), 4);
  check_matches_bar(Monoid::trivial(), 4);
}

TEST_CASE("Borel spaces satisfy the simplicial identities") {
  const SimplicialCategory c = from_monoid(Monoid::cyclic(2), 3);
  const BorelSpace b = borel_space(restriction_diagram(c, 0), 3);
  CHECK(validate(b.space).empty());
  CHECK(b.levels[2].space()->count(0) == 2 * 2 * 2);
  const BorelLevel& level = b.levels[2];
  for (GenId g : level.space()->generators(0)) {
    const auto [block, parts] = level.components(nondegenerate(g));
    CHECK(level.locate(block, parts) == nondegenerate(g));
  }
}

TEST_CASE("realization of the projection is simplicial") {
  const SimplicialCategory c = from_monoid(Monoid::cyclic(2), 3);
  const BorelTotal t = borel_total(restriction_diagram(c, 0), 3);
  CHECK(validate(t.projection).empty());
  CHECK(validate(realize_map(t.levelwise, t.total_realized, t.base_realized)).empty());
  CHECK(is_acyclic(*t.total_realized.space(), 2));
}

TEST_CASE("group completion gates for groups and the telescope") {
  for (int n : {2, 3}) {
    CAPTURE(n);
    const SimplicialCategory c = from_monoid(Monoid::cyclic(n), 4);
    const GroupCompletionReport r = group_completion_check(restriction_diagram(c, 0), 4);
    CHECK(r.passed());
    for (int k = 1; k < static_cast<int>(r.total_homology.size()); ++k) CHECK(r.total_homology[k].trivial());
    CHECK(r.base_homology[1].torsion == std::vector<Integer>{n});
  }
  const SimplicialCategory e = from_monoid(Monoid::idempotent(), 4);
  const GroupCompletionReport tel = group_completion_check(telescope_diagram(e, 0, GenId{0, 1}), 4);
  CHECK(tel.passed());
  CHECK(tel.fiber_homology[0].free_rank == 1);
}

TEST_CASE("restriction along a non-invertible element fails the hypothesis") {
  const SimplicialCategory e = from_monoid(Monoid::idempotent(), 3);
  const GroupCompletionReport r = group_completion_check(restriction_diagram(e, 0), 3);
  CHECK_FALSE(r.passed());
  CHECK_FALSE(gate(r, "hypothesis").passed);
  CHECK_FALSE(gate(r, "hypothesis").witnesses.empty());
}
