#include <doctest.h>

#include <random>
#include <set>

#include "hofib/constructions.hpp"
#include "hofib/errors.hpp"

using namespace hofib;

namespace {

long binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// Nondegenerate k-simplices of Delta[p] x Delta[q]: pairs of order maps
// (a, b) whose combined sequence is strictly increasing in the product order.
long brute_force_product_count(int p, int q, int k) {
  long count = 0;
  for (const auto& a : all_order_maps(k, p)) {
    for (const auto& b : all_order_maps(k, q)) {
      bool injective = true;
      for (int j = 0; j < k && injective; ++j) injective = a[j] != a[j + 1] || b[j] != b[j + 1];
      if (injective) ++count;
    }
  }
  return count;
}

OrderMap random_order_map(std::mt19937& rng, int q, int n) {
  std::uniform_int_distribution<int> pick(0, n);
  OrderMap m(q + 1);
  for (int& v : m) v = pick(rng);
  std::sort(m.begin(), m.end());
  return m;
}

}  // namespace

TEST_CASE("cosimplicial identities for cofaces and codegeneracies") {
  for (int n = 1; n <= 5; ++n) {
    for (int j = 0; j <= n; ++j) {
      for (int i = 0; i < j; ++i) {
        CHECK(compose(coface(n, j), coface(n - 1, i)) == compose(coface(n, i), coface(n - 1, j - 1)));
      }
    }
    for (int j = 0; j < n; ++j) {
      CHECK(compose(codegeneracy(n - 1, j), coface(n, j)) == identity_map(n - 1));
      CHECK(compose(codegeneracy(n - 1, j), coface(n, j + 1)) == identity_map(n - 1));
    }
  }
}

TEST_CASE("epi-mono factorization recomposes every order map") {
  for (int q = 0; q <= 4; ++q) {
    for (int n = 0; n <= 4; ++n) {
      for (const auto& theta : all_order_maps(q, n)) {
        const Factorization f = factor(theta);
        CHECK(compose(f.injection, f.surjection) == theta);
        for (std::size_t k = 1; k < f.injection.size(); ++k) CHECK(f.injection[k - 1] < f.injection[k]);
        CHECK(compose(f.surjection, section(f.surjection)) == identity_map(static_cast<int>(f.injection.size()) - 1));
      }
    }
  }
}

TEST_CASE("degeneracy words normalize by the simplicial identity s_i s_j = s_{j+1} s_i") {
  const std::vector<int> applied{0, 0};  // s0 s0 on a vertex
  CHECK(DegeneracyWord::normalize(applied, 0).indices() == std::vector<int>{1, 0});
  const std::vector<int> mixed{0, 1};  // s0 s1 = s2 s0
  CHECK(DegeneracyWord::normalize(mixed, 1).indices() == std::vector<int>{2, 0});
  CHECK_THROWS_AS(DegeneracyWord::from_indices({0, 1}), Error);
}

TEST_CASE("standard simplex has binomial generator counts") {
  for (int n = 0; n <= 5; ++n) {
    const SSetPtr d = standard_simplex(n);
    for (int k = 0; k <= n; ++k) CHECK(static_cast<long>(d->count(k)) == binomial(n + 1, k + 1));
    CHECK(validate(*d).empty());
    CHECK(standard_simplex_dimension(*d) == n);
  }
  CHECK(boundary(3)->count(3) == 0);
  CHECK_THROWS_AS(boundary(0), Error);
}

TEST_CASE("products of simplices match a brute-force count") {
  for (int p = 0; p <= 2; ++p) {
    for (int q = 0; q <= 2; ++q) {
      const int top = p + q;
      const TupleSpace t = product(standard_simplex(p, top), standard_simplex(q, top), top);
      CHECK(validate(*t.space).empty());
      for (int k = 0; k <= top; ++k) {
        CHECK(static_cast<long>(t.space->count(k)) == brute_force_product_count(p, q, k));
      }
      CHECK(t.space->euler_characteristic() == 1);
    }
  }
}

TEST_CASE("product projections are simplicial and the universal map recovers the identity") {
  const SSetPtr a = cycle_graph(3, 3);
  const SSetPtr b = standard_simplex(1, 3);
  const TupleSpace t = product(a, b, 3);
  for (const auto& pr : t.projections) CHECK(validate(pr).empty());
  const SimplicialMap id = map_into(t, t.space, t.projections);
  CHECK(id == SimplicialMap::identity(t.space));
}

TEST_CASE("pullback of the 6-gon cover along the 12-gon cover") {
  const SSetPtr c3 = cycle_graph(3, 2);
  const TupleSpace pb = pullback(cycle_cover(cycle_graph(12, 2), c3), cycle_cover(cycle_graph(6, 2), c3), 2);
  CHECK(pb.space->count(0) == 24);
  CHECK(pb.space->count(1) == 24);
  CHECK(validate(*pb.space).empty());
}

TEST_CASE("pushout glues along the cofibration leg") {
  // Two edges glued at a vertex form an interval of length two.
  const SSetPtr pt = point(1);
  const SSetPtr edge = standard_simplex(1, 1);
  SimplicialMap end(pt, edge);
  end.set(GenId{0, 0}, nondegenerate(*edge->find("{1}")));
  SimplicialMap start(pt, edge);
  start.set(GenId{0, 0}, nondegenerate(*edge->find("{0}")));
  const Pushout p = pushout(start, end, "b:");
  CHECK(p.space->count(0) == 3);
  CHECK(p.space->count(1) == 2);
  CHECK(validate(p.from_x).empty());
  CHECK(validate(p.from_y).empty());
  CHECK(p.from_y.is_injective_on_generators());
  CHECK(compose(p.from_x, start) == compose(p.from_y, end));
}

TEST_CASE("non-injective leg is rejected") {
  const SSetPtr two = disjoint_union({point(1), point(1)}, 1).space;
  const SSetPtr pt = point(1);
  const SimplicialMap collapse = map_to_point(two, pt);
  CHECK_THROWS_AS(pushout(collapse, SimplicialMap::identity(two)), PreconditionError);
}

TEST_CASE("subcomplex selection must be closed under faces") {
  const SSetPtr d = standard_simplex(2);
  CHECK_THROWS_AS(subcomplex(d, [&](GenId g) { return g.dim == 1; }), PreconditionError);
  const Subcomplex s = subcomplex(d, [&](GenId g) { return g.dim < 2; });
  CHECK(s.space->count(2) == 0);
  CHECK(s.contains(*d->find("{0,1}")));
}

TEST_CASE("validate reports a broken simplicial identity") {
  auto x = std::make_shared<SimplicialSet>(2);
  const GenId a = x->add("a");
  const GenId b = x->add("b");
  const GenId e = x->add("e", {nondegenerate(b), nondegenerate(a)});
  const GenId f = x->add("f", {nondegenerate(a), nondegenerate(b)});
  x->add("t", {nondegenerate(e), nondegenerate(e), nondegenerate(f)});
  CHECK_FALSE(validate(*x).empty());
}

TEST_CASE("presentation complex of a cyclic group") {
  const SSetPtr x = presentation_complex({"a"}, {parse_relator("a^3")}, 2);
  CHECK(validate(*x).empty());
  CHECK(x->euler_characteristic() == 1);
  const RelatorWord w = parse_relator("s^3 (ts)^-2");
  CHECK(w.size() == 7);
  CHECK(w.back().inverse);
}

TEST_CASE("suspension preimages of the endpoints are points") {
  const Suspension s = suspension(boundary(2), 3);
  CHECK(validate(*s.space).empty());
  CHECK(validate(s.to_interval).empty());
  CHECK(s.space->euler_characteristic() == 2);
}

TEST_CASE("random operator words act functorially") {
  std::mt19937 rng(20261019);
  const TupleSpace t = product(standard_simplex(2, 4), cycle_graph(4, 4), 4);
  const SimplicialSet& x = *t.space;
  for (int trial = 0; trial < 300; ++trial) {
    const int n = std::uniform_int_distribution<int>(0, 3)(rng);
    const auto gens = x.generators(n);
    if (gens.empty()) continue;
    const GenId g = gens[std::uniform_int_distribution<std::size_t>(0, gens.size() - 1)(rng)];
    const int q = std::uniform_int_distribution<int>(0, 4)(rng);
    const int r = std::uniform_int_distribution<int>(0, 4)(rng);
    const OrderMap theta = random_order_map(rng, q, n);
    const OrderMap psi = random_order_map(rng, r, q);
    const SimplexRef s = nondegenerate(g);
    CHECK(x.apply(x.apply(s, theta), psi) == x.apply(s, compose(theta, psi)));
    // Components commute with operators.
    const auto parts = t.components(x.apply(s, theta));
    const auto whole = t.components(s);
    CHECK(parts[0] == t.factors[0]->apply(whole[0], theta));
    CHECK(parts[1] == t.factors[1]->apply(whole[1], theta));
  }
}

TEST_CASE("maps commute with degeneracies") {
  const SimplicialMap f = cycle_cover(cycle_graph(6, 3), cycle_graph(3, 3));
  const SimplicialSet& x = *f.source();
  const SimplicialSet& y = *f.target();
  for (GenId g : x.generators(1)) {
    for (int i = 0; i <= 1; ++i) {
      const SimplexRef s = x.degeneracy(nondegenerate(g), i);
      CHECK(f.apply(s) == y.degeneracy(f(g), i));
    }
  }
}
