#include <doctest.h>

#include "corpus.hpp"
#include "hofib/errors.hpp"
#include "hofib/fibration.hpp"
#include "hofib/homology.hpp"
#include "hofib/subdivision.hpp"

using namespace hofib;

namespace {

// Strict chains of k + 1 nonempty subsets of {0..n}, counted by extending
// chains one subset at a time.
long chain_count(int n, int k) {
  const VertexSet all = full_set(n);
  std::vector<long> ending(all + 1, 0);
  for (VertexSet s = 1; s <= all; ++s) ending[s] = 1;
  for (int step = 0; step < k; ++step) {
    std::vector<long> next(all + 1, 0);
    for (VertexSet s = 1; s <= all; ++s) {
      for (VertexSet t = 1; t <= all; ++t) {
        if (s != t && (s & t) == s) next[t] += ending[s];
      }
    }
    ending = std::move(next);
  }
  long total = 0;
  for (VertexSet s = 1; s <= all; ++s) total += ending[s];
  return total;
}

}  // namespace

TEST_CASE("barycentric simplices count chains of faces") {
  for (int n = 0; n <= 3; ++n) {
    const SSetPtr d = barycentric_delta(n);
    CHECK(validate(*d).empty());
    for (int k = 0; k <= n; ++k) CHECK(static_cast<long>(d->count(k)) == chain_count(n, k));
  }
  const SSetPtr d2 = barycentric_delta(2);
  CHECK(d2->counts() == std::vector<std::size_t>{7, 12, 6});
}

TEST_CASE("chain labels and weak chains") {
  const FaceChain c{0b001, 0b011};
  CHECK(chain_label(c) == "{0}<{0,1}");
  CHECK(is_weak_chain({0b001, 0b001, 0b011}));
  CHECK_FALSE(is_weak_chain({0b011, 0b001}));
  const SSetPtr d = barycentric_delta(2);
  CHECK(chain_simplex(*d, {0b001, 0b001}).degenerate());
}

TEST_CASE("subdivision of a simplex is the barycentric simplex") {
  for (int n = 0; n <= 3; ++n) {
    const Subdivision s = sd(standard_simplex(n));
    CHECK(s.space->counts() == barycentric_delta(n)->counts());
  }
}

TEST_CASE("last vertex map is a homology isomorphism on the corpus") {
  for (const auto& [name, x] : corpus::small_spaces(4)) {
    CAPTURE(name);
    const Subdivision s = sd(x);
    CHECK(validate(*s.space).empty());
    CHECK(validate(s.last_vertex).empty());
    CHECK(is_homology_iso(s.last_vertex, 3).iso);
  }
}

TEST_CASE("decode and locate are inverse on generators") {
  const Subdivision s = sd(corpus::small_spaces(3)[8].second);
  for (int d = 0; d <= s.space->max_dim(); ++d) {
    for (GenId g : s.space->generators(d)) {
      const auto& cell = s.decode(g);
      CHECK(s.locate(nondegenerate(cell.x), cell.chain) == nondegenerate(g));
    }
  }
}

TEST_CASE("Sd is a functor and the last vertex map is natural") {
  const SSetPtr c12 = cycle_graph(12, 2), c6 = cycle_graph(6, 2), c3 = cycle_graph(3, 2);
  const SimplicialMap f = cycle_cover(c12, c6);
  const SimplicialMap g = cycle_cover(c6, c3);
  const Subdivision s12 = sd(c12), s6 = sd(c6), s3 = sd(c3);
  const SimplicialMap sf = sd_map(f, s12, s6);
  const SimplicialMap sg = sd_map(g, s6, s3);
  CHECK(sd_map(compose(g, f), s12, s3) == compose(sg, sf));
  CHECK(compose(f, s12.last_vertex) == compose(s6.last_vertex, sf));
  CHECK(sd_map(SimplicialMap::identity(c6), s6, s6) == SimplicialMap::identity(s6.space));
}

TEST_CASE("star retraction identities hold exactly") {
  for (const auto& item : corpus::maps_over_simplices(4)) {
    CAPTURE(item.name);
    const SubdividedMap sf = sd_over_simplex(item.map);
    CHECK(validate(sf.map).empty());
    for (VertexSet alpha = 1; alpha <= full_set(sf.n); ++alpha) {
      CAPTURE(alpha);
      if (est(sf, alpha).space->empty()) {
        CHECK_THROWS_AS(star_retraction(sf, alpha), PreconditionError);
        continue;
      }
      const StarRetraction r = star_retraction(sf, alpha);
      CHECK(r.retracts);
      CHECK(r.end0);
      CHECK(r.end1);
      CHECK(validate(r.homotopy).empty());
      CHECK(validate(r.retraction).empty());
      CHECK(is_homology_iso(r.inclusion, 3).iso);
    }
  }
}

TEST_CASE("star in the barycentric simplex") {
  const SSetPtr d = barycentric_delta(2);
  const Subcomplex top = star(d, full_set(2));
  CHECK(top.space->size() == 1);
  const Subcomplex vertex = star(d, 0b001);
  CHECK(vertex.space->count(0) == 4);
  CHECK(is_acyclic(*vertex.space, 1));
}

TEST_CASE("cube decomposition recovers Sd E") {
  std::vector<SimplicialMap> maps;
  for (const auto& item : corpus::maps_over_simplices(3)) maps.push_back(item.map);
  maps.push_back(SimplicialMap::identity(standard_simplex(3, 3)));
  maps.push_back(product(standard_simplex(3, 4), standard_simplex(1, 4), 4).projections[0]);
  for (const SimplicialMap& f : maps) {
    const SubdividedMap sf = sd_over_simplex(f);
    const CubeDiagram c = cube_decomposition(sf);
    CHECK(c.comparison.is_isomorphism());
    CHECK(c.objects.size() == static_cast<std::size_t>(full_set(sf.n)));
  }
}

TEST_CASE("barycenter preimage of a product is the fiber") {
  const SimplicialMap p = product(standard_simplex(2, 4), cycle_graph(3, 4), 4).projections[0];
  const SubdividedMap sf = sd_over_simplex(p);
  const Subcomplex b = barycenter_preimage(sf);
  const Homology h(*b.space);
  CHECK(h.group(0).free_rank == 1);
  CHECK(h.group(1).free_rank == 1);
  CHECK(is_homology_iso(compose(sf.source.last_vertex, b.inclusion), 3).iso);
}

TEST_CASE("maps into a non-simplex are rejected") {
  const SimplicialMap f = cycle_cover(cycle_graph(6, 2), cycle_graph(3, 2));
  CHECK_THROWS_AS(sd_over_simplex(f), PreconditionError);
}
