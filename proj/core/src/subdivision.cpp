#include "hofib/subdivision.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <numeric>

#include "hofib/errors.hpp"

namespace hofib {

namespace {

int top_vertex(VertexSet s) { return 31 - std::countl_zero(s); }

// Strict chains of `length` nonempty faces ending at `top`, sorted.
std::vector<FaceChain> chains_ending_at(VertexSet top, int length) {
  std::vector<FaceChain> out;
  FaceChain cur(length);
  std::function<void(int, VertexSet)> rec = [&](int pos, VertexSet above) {
    if (pos < 0) {
      out.push_back(cur);
      return;
    }
    for (VertexSet s = (above - 1) & above; s != 0; s = (s - 1) & above) {
      cur[pos] = s;
      rec(pos - 1, s);
    }
  };
  cur[length - 1] = top;
  rec(length - 2, top);
  std::sort(out.begin(), out.end());
  return out;
}

// Distinct members of a weak chain and the surjection onto them.
std::pair<FaceChain, OrderMap> compress(const FaceChain& chain) {
  FaceChain distinct;
  OrderMap eta;
  for (VertexSet s : chain) {
    if (distinct.empty() || distinct.back() != s) distinct.push_back(s);
    eta.push_back(static_cast<int>(distinct.size()) - 1);
  }
  return {distinct, eta};
}

SimplexRef degenerate(GenId g, const OrderMap& eta) {
  if (static_cast<int>(eta.size()) == g.dim + 1) return nondegenerate(g);
  return SimplexRef{g, DegeneracyWord::from_surjection(eta)};
}

VertexSet image_of(VertexSet s, std::span<const int> map) {
  VertexSet out = 0;
  for (int u : vertices_of(s)) out |= VertexSet{1} << map[u];
  return out;
}

// Positions of the members of s inside `within` (s must be a subset).
VertexSet reindex(VertexSet s, VertexSet within) {
  VertexSet out = 0;
  for (int u : vertices_of(s)) out |= VertexSet{1} << std::popcount(within & ((VertexSet{1} << u) - 1));
  return out;
}

FaceChain parse_chain_label(const std::string& label) {
  FaceChain out;
  std::size_t pos = 0;
  while (pos < label.size()) {
    std::size_t next = label.find('<', pos);
    if (next == std::string::npos) next = label.size();
    out.push_back(parse_set_label(label.substr(pos, next - pos)));
    pos = next + 1;
  }
  return out;
}

SimplicialMap constant_vertex(SSetPtr source, SSetPtr interval, int vertex) {
  SimplicialMap m(source, interval);
  for (int d = 0; d <= source->max_dim(); ++d) {
    for (GenId g : source->generators(d)) m.set(g, simplex_of(*interval, OrderMap(d + 1, vertex)));
  }
  return m;
}

}  // namespace

std::string chain_label(const FaceChain& chain) {
  std::string out;
  for (std::size_t i = 0; i < chain.size(); ++i) {
    if (i) out += '<';
    out += set_label(chain[i]);
  }
  return out;
}

bool is_weak_chain(const FaceChain& chain) {
  if (chain.empty()) return false;
  for (std::size_t i = 0; i < chain.size(); ++i) {
    if (chain[i] == 0) return false;
    if (i && (chain[i - 1] & ~chain[i]) != 0) return false;
  }
  return true;
}

SSetPtr barycentric_delta(int n, int max_dim) {
  if (n < 0) throw RangeError("negative dimension");
  auto x = std::make_shared<SimplicialSet>(std::max(n, max_dim));
  for (int q = 0; q <= n; ++q) {
    std::vector<FaceChain> all;
    for (VertexSet top = 1; top <= full_set(n); ++top) {
      if (set_size(top) < q + 1) continue;
      for (auto& c : chains_ending_at(top, q + 1)) all.push_back(std::move(c));
    }
    std::sort(all.begin(), all.end(), [](const FaceChain& a, const FaceChain& b) {
      if (set_size(a.back()) != set_size(b.back())) return set_size(a.back()) < set_size(b.back());
      return a < b;
    });
    for (const FaceChain& c : all) {
      std::vector<SimplexRef> faces;
      for (int i = 0; q > 0 && i <= q; ++i) {
        FaceChain f = c;
        f.erase(f.begin() + i);
        faces.push_back(nondegenerate(*x->find(chain_label(f))));
      }
      x->add(chain_label(c), std::move(faces));
    }
  }
  return x;
}

SimplexRef chain_simplex(const SimplicialSet& delta_prime, const FaceChain& chain) {
  if (!is_weak_chain(chain)) throw PreconditionError("not an increasing chain of faces");
  auto [distinct, eta] = compress(chain);
  auto g = delta_prime.find(chain_label(distinct));
  if (!g) throw RangeError("chain " + chain_label(chain) + " is not in this subdivision");
  return degenerate(*g, eta);
}

SimplexRef Subdivision::locate(const SimplexRef& x, const FaceChain& mu) const {
  const SimplicialSet& src = *source;
  SimplexRef cur = x;
  FaceChain m = mu;
  if (!is_weak_chain(m) || static_cast<int>(m.size()) > src.max_dim() + 1) {
    throw PreconditionError("not an increasing chain of faces");
  }
  while (true) {
    const int p = cur.dim();
    if ((m.back() & ~full_set(p)) != 0) throw RangeError("chain leaves the simplex");
    if (cur.degenerate()) {
      const OrderMap eta = cur.word.surjection(cur.gen.dim);
      for (VertexSet& s : m) s = image_of(s, eta);
      cur = nondegenerate(cur.gen);
      continue;
    }
    const VertexSet top = m.back();
    if (top == full_set(p)) break;
    const std::vector<int> inj = vertices_of(top);
    for (VertexSet& s : m) s = reindex(s, top);
    cur = src.face_along(cur.gen, inj);
  }
  auto [distinct, eta] = compress(m);
  auto it = index.find({cur.gen, distinct});
  if (it == index.end()) throw InternalError("subdivision cell missing");
  return degenerate(it->second, eta);
}

Subdivision::Cell Subdivision::expand(const SimplexRef& s) const {
  const Cell& c = decode(s.gen);
  Cell out{c.x, {}};
  for (int j : s.word.surjection(s.gen.dim)) out.chain.push_back(c.chain[j]);
  return out;
}

Subdivision sd(SSetPtr x) {
  Subdivision out;
  out.source = x;
  const int top = x->max_dim();
  auto space = std::make_shared<SimplicialSet>(top);
  out.space = space;
  out.cells.resize(top + 1);
  for (int q = 0; q <= top; ++q) {
    for (int p = q; p <= top; ++p) {
      for (GenId g : x->generators(p)) {
        for (FaceChain& c : chains_ending_at(full_set(p), q + 1)) {
          std::vector<SimplexRef> faces;
          for (int i = 0; q > 0 && i <= q; ++i) {
            FaceChain f = c;
            f.erase(f.begin() + i);
            faces.push_back(out.locate(nondegenerate(g), f));
          }
          const GenId id = space->add(x->label(g) + "|" + chain_label(c), std::move(faces));
          out.index.emplace(std::pair{g, c}, id);
          out.cells[q].push_back({g, std::move(c)});
        }
      }
    }
  }
  out.last_vertex = SimplicialMap(space, x);
  for (int q = 0; q <= top; ++q) {
    for (GenId g : space->generators(q)) {
      const auto& cell = out.decode(g);
      OrderMap last;
      for (VertexSet s : cell.chain) last.push_back(top_vertex(s));
      out.last_vertex.set(g, x->apply(nondegenerate(cell.x), last));
    }
  }
  return out;
}

SimplicialMap sd_map(const SimplicialMap& f, const Subdivision& source,
                     const Subdivision& target) {
  if (f.source() != source.source || f.target() != target.source) {
    throw PreconditionError("subdivisions do not match the map");
  }
  SimplicialMap m(source.space, target.space);
  for (int q = 0; q <= source.space->max_dim(); ++q) {
    for (GenId g : source.space->generators(q)) {
      const auto& cell = source.decode(g);
      m.set(g, target.locate(f(cell.x), cell.chain));
    }
  }
  return m;
}

FaceChain SubdividedMap::image_chain(const SimplexRef& s) const {
  const FaceChain& core = nu[s.gen.dim][s.gen.index];
  FaceChain out;
  for (int j : s.word.surjection(s.gen.dim)) out.push_back(core[j]);
  return out;
}

SubdividedMap sd_over_simplex(const SimplicialMap& f) {
  const auto n = standard_simplex_dimension(*f.target());
  if (!n) throw PreconditionError("sd_over_simplex needs a standard simplex as target");
  SubdividedMap out;
  out.original = f;
  out.n = *n;
  out.source = sd(f.source());
  const SSetPtr& space = out.source.space;
  out.target = barycentric_delta(*n, space->max_dim());
  out.map = SimplicialMap(space, out.target);
  out.nu.resize(space->max_dim() + 1);
  for (int q = 0; q <= space->max_dim(); ++q) {
    for (GenId g : space->generators(q)) {
      const auto& cell = out.source.decode(g);
      const std::vector<int> v = vertex_sequence(*f.target(), f(cell.x));
      FaceChain nu;
      for (VertexSet s : cell.chain) nu.push_back(image_of(s, v));
      out.map.set(g, chain_simplex(*out.target, nu));
      out.nu[q].push_back(std::move(nu));
    }
  }
  return out;
}

Subcomplex star(SSetPtr delta_prime, VertexSet alpha) {
  if (alpha == 0) throw PreconditionError("star of the empty face");
  const SimplicialSet& d = *delta_prime;
  return subcomplex(delta_prime, [&](GenId g) {
    for (VertexSet s : parse_chain_label(d.label(g))) {
      if ((alpha & ~s) != 0) return false;
    }
    return true;
  });
}

Subcomplex est(const SubdividedMap& sf, VertexSet alpha) {
  const Subcomplex st = star(sf.target, alpha);
  return preimage(sf.map, [&](GenId g) { return st.contains(g); });
}

Subcomplex sd_fiber(const SubdividedMap& sf, VertexSet alpha) {
  return subcomplex(sf.source.space, [&](GenId g) {
    const FaceChain& nu = sf.nu[g.dim][g.index];
    return std::all_of(nu.begin(), nu.end(), [&](VertexSet s) { return s == alpha; });
  });
}

StarRetraction star_retraction(const SubdividedMap& sf, VertexSet alpha) {
  StarRetraction out;
  out.alpha = alpha;
  out.star_preimage = est(sf, alpha);
  out.fiber = sd_fiber(sf, alpha);
  const Subcomplex& e = out.star_preimage;
  const Subcomplex& fib = out.fiber;
  if (e.space->empty()) throw PreconditionError("ESt(" + set_label(alpha) + ") is empty");
  const Subdivision& sub = sf.source;
  const SimplicialMap& f = sf.original;

  // Members of mu_i whose image under f(x) lies in alpha.
  auto bar = [&](GenId x, VertexSet s) {
    const std::vector<int> v = vertex_sequence(*f.target(), f(x));
    VertexSet out_set = 0;
    for (int u : vertices_of(s)) {
      if (alpha & (VertexSet{1} << v[u])) out_set |= VertexSet{1} << u;
    }
    return out_set;
  };

  out.inclusion = SimplicialMap(fib.space, e.space);
  for (int d = 0; d <= fib.space->max_dim(); ++d) {
    for (GenId g : fib.space->generators(d)) out.inclusion.set(g, e.restrict(fib.inclusion(g)));
  }

  out.retraction = SimplicialMap(e.space, fib.space);
  for (int d = 0; d <= e.space->max_dim(); ++d) {
    for (GenId g : e.space->generators(d)) {
      const auto& cell = sub.decode(e.inclusion(g).gen);
      FaceChain mu;
      for (VertexSet s : cell.chain) mu.push_back(bar(cell.x, s));
      out.retraction.set(g, fib.restrict(sub.locate(nondegenerate(cell.x), mu)));
    }
  }

  const int top = e.space->max_dim();
  const SSetPtr interval = standard_simplex(1, top);
  out.cylinder = product(e.space, interval, top);
  const SSetPtr& cyl = out.cylinder.space;
  out.homotopy = SimplicialMap(cyl, e.space);
  for (int q = 0; q <= cyl->max_dim(); ++q) {
    for (GenId g : cyl->generators(q)) {
      const auto parts = out.cylinder.components(nondegenerate(g));
      const auto cell = sub.expand(e.inclusion.apply(parts[0]));
      const auto tau = vertex_sequence(*interval, parts[1]);
      const auto zeros = std::count(tau.begin(), tau.end(), 0);
      FaceChain mu = cell.chain;
      for (long j = 0; j < zeros; ++j) mu[j] = bar(cell.x, mu[j]);
      out.homotopy.set(g, e.restrict(sub.locate(nondegenerate(cell.x), mu)));
    }
  }

  out.retracts = compose(out.retraction, out.inclusion) == SimplicialMap::identity(fib.space);
  const SimplicialMap id = SimplicialMap::identity(e.space);
  for (int end = 0; end <= 1; ++end) {
    const std::vector<SimplicialMap> legs{id, constant_vertex(e.space, interval, end)};
    const SimplicialMap at_end = compose(out.homotopy, map_into(out.cylinder, e.space, legs));
    if (end == 0) out.end0 = at_end == compose(out.inclusion, out.retraction);
    if (end == 1) out.end1 = at_end == id;
  }
  return out;
}

CubeDiagram cube_decomposition(const SubdividedMap& sf) {
  CubeDiagram out;
  const SSetPtr& sde = sf.source.space;
  for (VertexSet s = 1; s <= full_set(sf.n); ++s) out.objects.push_back(s);
  std::stable_sort(out.objects.begin(), out.objects.end(),
                   [](VertexSet a, VertexSet b) { return set_size(a) > set_size(b); });
  std::map<VertexSet, int> object_index;
  for (std::size_t k = 0; k < out.objects.size(); ++k) {
    object_index[out.objects[k]] = static_cast<int>(k);
    out.values.push_back(est(sf, out.objects[k]));
  }
  for (std::size_t k = 0; k < out.objects.size(); ++k) {
    const VertexSet s = out.objects[k];
    if (set_size(s) < 2) continue;
    for (int u : vertices_of(s)) {
      out.arrows.emplace_back(static_cast<int>(k), object_index.at(s & ~(VertexSet{1} << u)));
    }
  }

  // Union-find over all (object, generator) pairs.
  std::map<std::pair<int, GenId>, int> node;
  std::vector<std::pair<int, GenId>> nodes;
  for (std::size_t k = 0; k < out.values.size(); ++k) {
    const auto& v = *out.values[k].space;
    for (int d = 0; d <= v.max_dim(); ++d) {
      for (GenId g : v.generators(d)) {
        node.emplace(std::pair{static_cast<int>(k), g}, static_cast<int>(nodes.size()));
        nodes.emplace_back(static_cast<int>(k), g);
      }
    }
  }
  std::vector<int> parent(nodes.size());
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int a) { return parent[a] == a ? a : parent[a] = find(parent[a]); };
  for (const auto& [from, to] : out.arrows) {
    const Subcomplex& src = out.values[from];
    const Subcomplex& dst = out.values[to];
    for (int d = 0; d <= src.space->max_dim(); ++d) {
      for (GenId g : src.space->generators(d)) {
        const GenId image = dst.restrict(src.inclusion(g)).gen;
        const int a = find(node.at({from, g}));
        const int b = find(node.at({to, image}));
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
      }
    }
  }

  auto colimit = std::make_shared<SimplicialSet>(sde->max_dim());
  std::map<int, GenId> class_gen;
  std::vector<std::pair<GenId, SimplexRef>> to_sde;
  for (int d = 0; d <= sde->max_dim(); ++d) {
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      const auto& [obj, g] = nodes[i];
      if (g.dim != d || find(static_cast<int>(i)) != static_cast<int>(i)) continue;
      const Subcomplex& v = out.values[obj];
      std::vector<SimplexRef> faces;
      for (const SimplexRef& f : v.space->faces(g)) {
        faces.push_back(SimplexRef{class_gen.at(find(node.at({obj, f.gen}))), f.word});
      }
      const GenId c = colimit->add(v.space->label(g), std::move(faces));
      class_gen.emplace(static_cast<int>(i), c);
      to_sde.emplace_back(c, v.inclusion(g));
    }
  }
  // Every member of a class must name the same simplex of Sd E.
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const auto& [obj, g] = nodes[i];
    const GenId c = class_gen.at(find(static_cast<int>(i)));
    if (colimit->label(c) != out.values[obj].space->label(g)) {
      throw InternalError("cube colimit identifies distinct simplices of Sd E");
    }
  }
  out.colimit = colimit;
  out.comparison = SimplicialMap(colimit, sde);
  for (const auto& [c, image] : to_sde) out.comparison.set(c, image);
  if (!out.comparison.is_isomorphism() || !validate(out.comparison).empty()) {
    throw InternalError("cube colimit differs from Sd E");
  }
  return out;
}

Subcomplex barycenter_preimage(const SubdividedMap& sf) {
  return sd_fiber(sf, full_set(sf.n));
}

}  // namespace hofib
