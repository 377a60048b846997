// One line per acceptance criterion: PASS/FAIL, wall time, detail.  Exits
// nonzero when any criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "corpus.hpp"
#include "hofib/borel.hpp"
#include "hofib/fibration.hpp"
#include "hofib/homology.hpp"
#include "hofib/subdivision.hpp"
#include "oracles.hpp"

using namespace hofib;

namespace {

constexpr int kN = 4;

struct Outcome {
  bool passed = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      if (!passed) detail << "; ";
      detail << what;
      passed = false;
    }
  }
};

struct Criterion {
  int id;
  std::string name;
  double budget_s;  // 0: no time bound
  std::function<void(Outcome&)> body;
};

bool same(const HomologyGroup& g, const oracle::Group& o) {
  return g.free_rank == o.free_rank && g.torsion == o.torsion;
}

bool matches_bar(const Monoid& m, const std::vector<HomologyGroup>& h, int through) {
  const auto expected = oracle::bar_homology(m.table, through + 1);
  for (int k = 0; k <= through; ++k) {
    if (k >= static_cast<int>(h.size()) || !same(h[k], expected[k])) return false;
  }
  return true;
}

bool reduced_trivial(const std::vector<HomologyGroup>& h, int through) {
  if (h.empty() || h[0].free_rank != 1 || !h[0].torsion.empty()) return false;
  for (int k = 1; k <= through; ++k) {
    if (k >= static_cast<int>(h.size()) || !h[k].trivial()) return false;
  }
  return true;
}

std::vector<HomologyGroup> groups(const SimplicialSet& x, int through) {
  const Homology h(x);
  std::vector<HomologyGroup> out;
  for (int k = 0; k <= through; ++k) out.push_back(h.group(k));
  return out;
}

void spheres(Outcome& o) {
  for (int n = 1; n <= 4; ++n) {
    const auto h = groups(*boundary(n + 1), n);
    for (int k = 0; k <= n; ++k) {
      const bool z = k == 0 || k == n;
      o.require(h[k].free_rank == (z ? 1 : 0) && h[k].torsion.empty(),
                "dDelta[" + std::to_string(n + 1) + "] H_" + std::to_string(k));
    }
  }
}

void bz2(Outcome& o) {
  const int top = 6;
  const Monoid z2 = Monoid::cyclic(2);
  const ThickRealization b = classifying_space(from_monoid(z2, top), top);
  const auto h = groups(*b.space(), top - 1);
  const std::vector<std::pair<int, std::vector<Integer>>> table{
      {1, {}}, {0, {2}}, {0, {}}, {0, {2}}, {0, {}}, {0, {2}}};
  for (int k = 0; k < top; ++k) {
    o.require(h[k].free_rank == table[k].first && h[k].torsion == table[k].second,
              "H_" + std::to_string(k) + " = " + h[k].to_string());
  }
  o.require(matches_bar(z2, h, top - 1), "bar oracle disagrees");
  o.detail << (o.passed ? "Z, Z/2, 0, Z/2, 0, Z/2" : "");
}

void subdivision_invariance(Outcome& o) {
  const auto spaces = corpus::small_spaces(kN);
  o.require(spaces.size() >= 10, "corpus too small");
  for (const auto& [name, x] : spaces) {
    o.require(x->top_dim() <= 3, name + " has dimension > 3");
    const Subdivision s = sd(x);
    o.require(is_homology_iso(s.last_vertex, kN - 1).iso, "Sd " + name + " -> " + name);
  }
  o.require(barycentric_delta(2)->counts() == std::vector<std::size_t>{7, 12, 6}, "Delta'[2] counts");
  if (o.passed) o.detail << spaces.size() << " spaces, Delta'[2] = (7, 12, 6)";
}

void star_lemma(Outcome& o) {
  int checked = 0;
  for (const auto& item : corpus::maps_over_simplices(kN)) {
    const SubdividedMap sf = sd_over_simplex(item.map);
    for (VertexSet alpha = 1; alpha <= full_set(sf.n); ++alpha) {
      if (est(sf, alpha).space->empty()) continue;
      const StarRetraction r = star_retraction(sf, alpha);
      const std::string at = item.name + " at " + set_label(alpha);
      o.require(r.retracts, at + ": r.i != id");
      o.require(r.end0, at + ": H(-,0) != i.r");
      o.require(r.end1, at + ": H(-,1) != id");
      o.require(is_homology_iso(r.inclusion, kN - 1).iso, at + ": fiber -> ESt");
      ++checked;
    }
  }
  if (o.passed) o.detail << checked << " stars";
}

void cube(Outcome& o) {
  std::vector<std::pair<std::string, SimplicialMap>> maps;
  for (const auto& item : corpus::maps_over_simplices(3)) maps.emplace_back(item.name, item.map);
  maps.emplace_back("id Delta3", SimplicialMap::identity(standard_simplex(3, 3)));
  maps.emplace_back("Delta3xDelta1",
                    product(standard_simplex(3, 4), standard_simplex(1, 4), 4).projections[0]);
  for (const auto& [name, f] : maps) {
    const CubeDiagram c = cube_decomposition(sd_over_simplex(f));
    o.require(c.comparison.is_isomorphism(), name);
  }
  if (o.passed) o.detail << maps.size() << " maps, n <= 3";
}

void barycenter(Outcome& o) {
  int products = 0, others = 0;
  std::vector<std::string> used;
  for (const auto& item : corpus::maps_over_simplices(kN)) {
    o.require(item.map.source()->top_dim() < kN, item.name + " truncated at N");
    if (!weak_fibration_check(item.map, kN - 1).passed) continue;
    const SubdividedMap sf = sd_over_simplex(item.map);
    const Subcomplex b = barycenter_preimage(sf);
    const SimplicialMap to_total = compose(sf.source.last_vertex, b.inclusion);
    o.require(is_homology_iso(to_total, kN - 1).iso, item.name);
    (item.product ? products : others) += 1;
    used.push_back(item.name);
  }
  o.require(products > 0, "no product case");
  o.require(others > 0, "no non-product homology fibration");
  if (o.passed) {
    o.detail << products << " products, " << others << " non-products:";
    for (const auto& n : used) o.detail << " [" << n << "]";
  }
}

void weak_check(Outcome& o) {
  const SSetPtr c3 = cycle_graph(3, kN);
  const TupleSpace t = product(standard_simplex(2, kN), c3, kN);
  o.require(weak_fibration_check(t.projections[0], kN - 1).passed, "projection to Delta[2]");
  o.require(weak_fibration_check(t.projections[1], kN - 1).passed, "projection to C3");
  o.require(weak_fibration_check(cycle_cover(cycle_graph(6, kN), c3), kN - 1).passed, "6-gon -> 3-gon");
  const FibrationReport bad = weak_fibration_check(corpus::collapse_circle(kN), kN - 1);
  o.require(!bad.passed, "collapse passed");
  bool d1 = false;
  for (const auto& p : bad.pairs) {
    if (!p.result.iso && p.operation == "d1" && p.result.first_failure == 1) d1 = true;
  }
  o.require(d1, "no d1 witness at degree 1");
}

void pullback_stability(Outcome& o) {
  const SSetPtr c3 = cycle_graph(3, kN);
  const SimplicialMap p = cycle_cover(cycle_graph(6, kN), c3);
  const PulledBack pb = pullback_fibration(p, cycle_cover(cycle_graph(12, kN), c3), true);
  const bool before = weak_fibration_check(p, kN - 1).passed;
  const bool after = weak_fibration_check(pb.map, kN - 1).passed;
  o.require(before && after, "verdict changed");
  o.require(pb.base_change_is_fibration, "base change flagged");
  o.require(pb.limit.space->count(0) == 24, "pullback has wrong vertex count");
}

void group_completion(Outcome& o) {
  auto gates = [&](const std::string& name, const GroupCompletionReport& r) {
    for (const Gate& g : r.gates) o.require(g.passed, name + ": gate " + g.name);
    o.require(r.gates.size() == 4, name + ": expected four gates");
  };
  for (int n : {2, 3}) {
    const Monoid g = Monoid::cyclic(n);
    const std::string name = "Z/" + std::to_string(n);
    const GroupCompletionReport r = group_completion_check(restriction_diagram(from_monoid(g, kN), 0), kN);
    gates(name, r);
    o.require(reduced_trivial(r.total_homology, kN - 1), name + ": ||E_G G|| not acyclic");
    o.require(matches_bar(g, r.base_homology, kN - 1), name + ": ||BG|| vs bar oracle");
  }
  const Monoid idem = Monoid::idempotent();
  const GroupCompletionReport t = group_completion_check(telescope_diagram(from_monoid(idem, kN), 0, GenId{0, 1}), kN);
  gates("{1,e}", t);
  o.require(matches_bar(idem, t.base_homology, kN - 1), "{1,e}: ||BM|| vs bar oracle");
}

void acyclic_suspension(Outcome& o) {
  const SSetPtr a = corpus::icosahedral(kN);
  o.require(is_acyclic(*a, 2), "A not acyclic");
  const Suspension s = suspension(a, kN);
  const ContractibleBaseReport r = fiber_homology_over_contractible(s.to_interval, 2);
  o.require(r.comparisons.passed && r.base_acyclic, "fiber homology over Delta[1]");
  o.require(reduced_trivial(r.table, 2), "E does not have point homology");
  const Subcomplex b = barycenter_preimage(sd_over_simplex(s.to_interval));
  o.require(is_acyclic(*b.space, 2), "barycenter preimage not acyclic");
  o.require(b.space->size() > 1, "barycenter preimage is a single simplex");
  if (o.passed) o.detail << "barycenter preimage has " << b.space->size() << " nondegenerate simplices";
}

void fat_point(Outcome& o) {
  const ThickRealization one = thick_realize(constant_space(point(1), 1), 1);
  const auto h1 = groups(*one.space(), 1);
  o.require(h1[1].free_rank == 1 && h1[1].torsion.empty(), "stage 1 H_1 != Z");
  for (int n = 2; n <= 4; ++n) {
    const ThickRealization r = thick_realize(constant_space(point(n), n), n);
    o.require(reduced_trivial(groups(*r.space(), n - 1), n - 1), "stage " + std::to_string(n));
  }
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "homology of dDelta[n+1], n = 1..4", 5, spheres},
      {2, "B(Z/2) at N = 6 vs bar oracle", 60, bz2},
      {3, "Sd last-vertex iso and Delta'[2] counts", 60, subdivision_invariance},
      {4, "star retraction", 120, star_lemma},
      {5, "cube colimit equals Sd E", 0, cube},
      {6, "barycenter preimage ~ E", 300, barycenter},
      {7, "weak-fibration verdicts", 0, weak_check},
      {8, "pullback stability", 0, pullback_stability},
      {9, "group completion gates at N = 4", 600, group_completion},
      {10, "acyclic A and Sigma A -> Delta[1]", 300, acyclic_suspension},
      {11, "fat point stages", 0, fat_point},
  };
  int failures = 0;
  for (const Criterion& c : criteria) {
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    try {
      c.body(o);
    } catch (const std::exception& e) {
      o.require(false, std::string("threw: ") + e.what());
    }
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.budget_s > 0 && s >= c.budget_s) o.require(false, "over the time budget");
    failures += o.passed ? 0 : 1;
    std::printf("%s %2d  %-42s %8.2fs  %s\n", o.passed ? "PASS" : "FAIL", c.id, c.name.c_str(), s,
                o.detail.str().c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
