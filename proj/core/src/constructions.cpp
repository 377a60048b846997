#include "hofib/constructions.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <set>

#include "hofib/errors.hpp"

namespace hofib {

namespace {

using Mask = std::uint32_t;

Mask word_mask(const DegeneracyWord& w) {
  Mask m = 0;
  for (int i : w.indices()) m |= Mask{1} << i;
  return m;
}

DegeneracyWord word_from_mask(Mask m) {
  std::vector<int> idx;
  for (int i = 31; i >= 0; --i) {
    if (m & (Mask{1} << i)) idx.push_back(i);
  }
  return DegeneracyWord::from_indices(std::move(idx));
}

// Every n-simplex of x, degenerate ones included, in canonical order.
std::vector<SimplexRef> all_simplices(const SimplicialSet& x, int n) {
  std::vector<SimplexRef> out;
  for (int p = 0; p <= std::min(n, x.max_dim()); ++p) {
    const int k = n - p;
    if (x.count(p) == 0) continue;
    // all k-subsets of {0..n-1}
    std::vector<Mask> subsets;
    for (Mask m = 0; m < (Mask{1} << n); ++m) {
      if (std::popcount(m) == k) subsets.push_back(m);
    }
    for (GenId g : x.generators(p)) {
      for (Mask m : subsets) out.push_back(SimplexRef{g, word_from_mask(m)});
    }
  }
  return out;
}

std::string tuple_label(const std::vector<SSetPtr>& factors,
                        std::span<const SimplexRef> parts) {
  std::string out = "(";
  for (std::size_t k = 0; k < parts.size(); ++k) {
    if (k) out += ',';
    out += factors[k]->describe(parts[k]);
  }
  return out + ")";
}

// Adds generators for the given nondegenerate tuples of dimension n.
void add_tuples(TupleSpace& t, SimplicialSet& space,
                const std::vector<std::vector<SimplexRef>>& tuples, int n) {
  for (const auto& tup : tuples) {
    std::vector<SimplexRef> faces;
    if (n > 0) {
      for (int i = 0; i <= n; ++i) {
        std::vector<SimplexRef> f;
        f.reserve(tup.size());
        for (std::size_t k = 0; k < tup.size(); ++k) {
          f.push_back(t.factors[k]->face(tup[k], i));
        }
        auto loc = t.locate(f);
        if (!loc) throw InternalError("face of a limit simplex left the limit");
        faces.push_back(*loc);
      }
    }
    GenId id = space.add(tuple_label(t.factors, tup), std::move(faces));
    t.index.emplace(tup, id);
  }
}

void finish_projections(TupleSpace& t) {
  for (std::size_t k = 0; k < t.factors.size(); ++k) {
    SimplicialMap proj(t.space, t.factors[k]);
    for (const auto& [tup, id] : t.index) proj.set(id, tup[k]);
    t.projections.push_back(std::move(proj));
  }
}

}  // namespace

VertexSet parse_set_label(const std::string& label) {
  if (label.size() < 3 || label.front() != '{' || label.back() != '}') {
    throw PreconditionError("'" + label + "' is not a vertex-set label");
  }
  VertexSet s = 0;
  std::size_t pos = 1;
  while (pos < label.size() - 1) {
    const std::size_t next = label.find_first_of(",}", pos);
    s |= VertexSet{1} << std::stoi(label.substr(pos, next - pos));
    pos = next + 1;
  }
  return s;
}

// ---------------------------------------------------------------------------

SSetPtr standard_simplex(int n, int max_dim) {
  if (n < 0) throw RangeError("standard simplex of negative dimension");
  if (n > 30) throw RangeError("standard simplex dimension too large");
  auto x = std::make_shared<SimplicialSet>(std::max(n, max_dim));
  // Subsets ordered by size, then lexicographically by bitmask.
  for (int k = 0; k <= n; ++k) {
    for (VertexSet s = 1; s <= full_set(n); ++s) {
      if (set_size(s) != k + 1) continue;
      std::vector<SimplexRef> faces;
      if (k > 0) {
        const auto verts = vertices_of(s);
        for (int i = 0; i <= k; ++i) {
          const VertexSet f = s & ~(VertexSet{1} << verts[i]);
          faces.push_back(nondegenerate(*x->find(set_label(f))));
        }
      }
      x->add(set_label(s), std::move(faces));
    }
  }
  return x;
}

SSetPtr boundary(int n, int max_dim) {
  if (n == 0) throw PreconditionError("the boundary of Delta[0] is empty");
  auto full = standard_simplex(n, max_dim);
  auto x = std::make_shared<SimplicialSet>(full->max_dim());
  for (int d = 0; d < n; ++d) {
    for (GenId g : full->generators(d)) {
      const auto f = full->faces(g);
      x->add(full->label(g), std::vector<SimplexRef>(f.begin(), f.end()));
    }
  }
  return x;
}

SimplexRef simplex_of(const SimplicialSet& delta, std::span<const int> vertices) {
  if (vertices.empty() || !is_order_preserving(vertices, 31)) {
    throw RangeError("vertex sequence must be nonempty and weakly increasing");
  }
  const Factorization fac = factor(vertices);
  auto g = delta.find(set_label(vertex_set_of(fac.injection)));
  if (!g) throw RangeError("vertex sequence is not a simplex of this space");
  if (fac.surjection.size() == fac.injection.size()) return nondegenerate(*g);
  return SimplexRef{*g, DegeneracyWord::from_surjection(fac.surjection)};
}

std::vector<int> vertex_sequence(const SimplicialSet& delta, const SimplexRef& x) {
  std::vector<int> out;
  for (const SimplexRef& v : delta.vertices(x)) {
    const std::string& l = delta.label(v.gen);
    if (l.size() < 3 || l.front() != '{' || l.back() != '}') {
      throw PreconditionError("vertex '" + l + "' is not a standard vertex");
    }
    out.push_back(std::stoi(l.substr(1, l.size() - 2)));
  }
  return out;
}

SimplicialMap representing_map(SSetPtr x, const SimplexRef& sigma, SSetPtr delta) {
  const int n = sigma.dim();
  if (!delta) delta = standard_simplex(n, x->max_dim());
  SimplicialMap m(delta, x);
  for (int d = 0; d <= std::min(n, delta->max_dim()); ++d) {
    for (GenId g : delta->generators(d)) {
      m.set(g, x->apply(sigma, vertices_of(parse_set_label(delta->label(g)))));
    }
  }
  return m;
}

std::optional<int> standard_simplex_dimension(const SimplicialSet& x) {
  const int n = x.top_dim();
  if (n < 0 || x.count(n) != 1) return std::nullopt;
  auto delta = standard_simplex(n, x.max_dim());
  if (x.size() != delta->size()) return std::nullopt;
  auto xs = std::make_shared<SimplicialSet>(x);
  const SimplicialMap m = representing_map(xs, nondegenerate(GenId{n, 0}), delta);
  if (!m.is_isomorphism()) return std::nullopt;
  return n;
}

// ---------------------------------------------------------------------------

std::optional<SimplexRef> TupleSpace::locate(
    std::span<const SimplexRef> components) const {
  if (components.size() != factors.size() || components.empty()) {
    throw PreconditionError("tuple has the wrong number of components");
  }
  const int n = components[0].dim();
  Mask common = ~Mask{0};
  for (const auto& c : components) {
    if (c.dim() != n) throw PreconditionError("tuple components differ in dimension");
    common &= word_mask(c.word);
  }
  if (common == 0) {
    std::vector<SimplexRef> key(components.begin(), components.end());
    auto it = index.find(key);
    if (it == index.end()) return std::nullopt;
    return nondegenerate(it->second);
  }
  const DegeneracyWord w = word_from_mask(common);
  const OrderMap eta = w.surjection(n - static_cast<int>(w.length()));
  const OrderMap sec = section(eta);
  std::vector<SimplexRef> key;
  key.reserve(components.size());
  for (std::size_t k = 0; k < components.size(); ++k) {
    key.push_back(factors[k]->apply(components[k], sec));
  }
  auto it = index.find(key);
  if (it == index.end()) return std::nullopt;
  return SimplexRef{it->second, w};
}

SimplexRef TupleSpace::at(std::span<const SimplexRef> components) const {
  auto r = locate(components);
  if (!r) throw PreconditionError("tuple does not lie in the limit");
  return *r;
}

std::vector<SimplexRef> TupleSpace::components(const SimplexRef& x) const {
  std::vector<SimplexRef> out;
  for (const auto& p : projections) out.push_back(p.apply(x));
  return out;
}

TupleSpace product(std::vector<SSetPtr> factors, int max_dim) {
  if (factors.empty()) throw PreconditionError("empty product");
  TupleSpace t;
  t.factors = std::move(factors);
  auto space = std::make_shared<SimplicialSet>(max_dim);
  t.space = space;
  const std::size_t m = t.factors.size();
  for (int n = 0; n <= max_dim; ++n) {
    std::vector<std::vector<SimplexRef>> pools(m);
    for (std::size_t k = 0; k < m; ++k) pools[k] = all_simplices(*t.factors[k], n);
    std::vector<std::vector<SimplexRef>> tuples;
    std::vector<SimplexRef> cur(m);
    const Mask all = n == 0 ? 0 : (Mask{1} << n) - 1;
    std::function<void(std::size_t, Mask)> rec = [&](std::size_t k, Mask common) {
      if (k == m) {
        if (common == 0) tuples.push_back(cur);
        return;
      }
      for (const auto& s : pools[k]) {
        cur[k] = s;
        rec(k + 1, common & word_mask(s.word));
      }
    };
    rec(0, all);
    add_tuples(t, *space, tuples, n);
  }
  finish_projections(t);
  return t;
}

TupleSpace pullback(const SimplicialMap& f, const SimplicialMap& g, int max_dim) {
  if (f.target() != g.target()) {
    throw PreconditionError("pullback legs have different targets");
  }
  TupleSpace t;
  t.factors = {f.source(), g.source()};
  auto space = std::make_shared<SimplicialSet>(max_dim);
  t.space = space;

  const auto& xs = *f.source();
  const auto& ys = *g.source();
  // Cores in B reached from the left; right generators elsewhere are skipped.
  std::set<GenId> cores;
  for (int d = 0; d <= xs.max_dim(); ++d) {
    for (GenId x : xs.generators(d)) cores.insert(f(x).gen);
  }
  std::vector<GenId> right_gens;
  for (int d = 0; d <= ys.max_dim(); ++d) {
    for (GenId y : ys.generators(d)) {
      if (cores.count(g(y).gen)) right_gens.push_back(y);
    }
  }

  for (int n = 0; n <= max_dim; ++n) {
    std::map<SimplexRef, std::vector<SimplexRef>> right;
    for (GenId y : right_gens) {
      if (y.dim > n) continue;
      for (Mask m = 0; m < (Mask{1} << n); ++m) {
        if (std::popcount(m) != n - y.dim) continue;
        SimplexRef b{y, word_from_mask(m)};
        right[g.apply(b)].push_back(std::move(b));
      }
    }
    std::vector<std::vector<SimplexRef>> tuples;
    for (const SimplexRef& a : all_simplices(xs, n)) {
      auto it = right.find(f.apply(a));
      if (it == right.end()) continue;
      const Mask ma = word_mask(a.word);
      for (const SimplexRef& b : it->second) {
        if ((ma & word_mask(b.word)) == 0) tuples.push_back({a, b});
      }
    }
    add_tuples(t, *space, tuples, n);
  }
  finish_projections(t);
  return t;
}

SimplicialMap map_into(const TupleSpace& limit, SSetPtr source,
                       std::span<const SimplicialMap> components) {
  SimplicialMap m(source, limit.space);
  for (int d = 0; d <= source->max_dim(); ++d) {
    for (GenId g : source->generators(d)) {
      std::vector<SimplexRef> parts;
      for (const auto& c : components) parts.push_back(c(g));
      m.set(g, limit.at(parts));
    }
  }
  return m;
}

SSetPtr point(int max_dim) {
  auto p = std::make_shared<SimplicialSet>(max_dim);
  p->add("*");
  return p;
}

SimplicialMap map_to_point(SSetPtr x, SSetPtr pt) {
  SimplicialMap m(x, pt);
  const GenId v{0, 0};
  for (int d = 0; d <= x->max_dim(); ++d) {
    for (GenId g : x->generators(d)) {
      m.set(g, pt->apply(nondegenerate(v), OrderMap(d + 1, 0)));
    }
  }
  return m;
}

// ---------------------------------------------------------------------------

Pushout pushout(const SimplicialMap& i, const SimplicialMap& j,
                const std::string& x_prefix) {
  if (i.source() != j.source()) {
    throw PreconditionError("pushout legs have different sources");
  }
  if (!i.is_injective_on_generators()) {
    throw PreconditionError(
        "pushout requires a cofibration leg that is injective on generators");
  }
  const auto& xs = *i.target();
  const auto& ys = *j.target();
  const auto& as = *i.source();
  const int top = std::max(xs.max_dim(), ys.max_dim());
  auto p = std::make_shared<SimplicialSet>(top);

  Pushout out;
  out.from_x_side.resize(static_cast<std::size_t>(top) + 1);
  out.origin.resize(static_cast<std::size_t>(top) + 1);
  for (int d = 0; d <= ys.max_dim(); ++d) {
    for (GenId y : ys.generators(d)) {
      const auto f = ys.faces(y);
      p->add(ys.label(y), std::vector<SimplexRef>(f.begin(), f.end()));
      out.from_x_side[d].push_back(0);
      out.origin[d].push_back(y);
    }
  }

  std::map<GenId, GenId> preimage_of;  // i(a) -> a
  for (int d = 0; d <= as.max_dim(); ++d) {
    for (GenId a : as.generators(d)) preimage_of.emplace(i(a).gen, a);
  }
  std::map<GenId, GenId> new_id;
  auto route = [&](const SimplexRef& r) -> SimplexRef {
    auto it = preimage_of.find(r.gen);
    if (it != preimage_of.end()) return j.apply(SimplexRef{it->second, r.word});
    return SimplexRef{new_id.at(r.gen), r.word};
  };
  for (int d = 0; d <= xs.max_dim(); ++d) {
    for (GenId x : xs.generators(d)) {
      if (preimage_of.count(x)) continue;
      std::vector<SimplexRef> faces;
      for (const auto& f : xs.faces(x)) faces.push_back(route(f));
      new_id[x] = p->add(x_prefix + xs.label(x), std::move(faces));
      out.from_x_side[d].push_back(1);
      out.origin[d].push_back(x);
    }
  }
  out.space = p;
  out.from_x = SimplicialMap(i.target(), p);
  for (int d = 0; d <= xs.max_dim(); ++d) {
    for (GenId x : xs.generators(d)) out.from_x.set(x, route(nondegenerate(x)));
  }
  out.from_y = SimplicialMap(j.target(), p);
  for (int d = 0; d <= ys.max_dim(); ++d) {
    for (GenId y : ys.generators(d)) out.from_y.set(y, nondegenerate(y));
  }
  return out;
}

SimplicialMap induced_from_pushout(const Pushout& p, const SimplicialMap& u,
                                   const SimplicialMap& v) {
  if (u.target() != v.target()) {
    throw PreconditionError("maps out of a pushout need a common target");
  }
  SimplicialMap m(p.space, u.target());
  for (int d = 0; d <= p.space->max_dim(); ++d) {
    for (GenId g : p.space->generators(d)) {
      const GenId o = p.origin[d][g.index];
      m.set(g, p.from_x_side[d][g.index] ? u(o) : v(o));
    }
  }
  return m;
}

Coproduct disjoint_union(const std::vector<SSetPtr>& parts, int max_dim) {
  int top = std::max(max_dim, 0);
  for (const auto& x : parts) top = std::max(top, x->max_dim());
  auto u = std::make_shared<SimplicialSet>(top);
  std::vector<std::vector<std::vector<GenId>>> ids(parts.size());
  for (int d = 0; d <= top; ++d) {
    for (std::size_t k = 0; k < parts.size(); ++k) {
      const auto& x = *parts[k];
      ids[k].resize(static_cast<std::size_t>(top) + 1);
      for (GenId g : x.generators(d)) {
        std::vector<SimplexRef> faces;
        for (const auto& f : x.faces(g)) {
          faces.push_back(SimplexRef{ids[k][f.gen.dim][f.gen.index], f.word});
        }
        ids[k][d].push_back(
            u->add(std::to_string(k) + "/" + x.label(g), std::move(faces)));
      }
    }
  }
  Coproduct c;
  c.space = u;
  for (std::size_t k = 0; k < parts.size(); ++k) {
    SimplicialMap inj(parts[k], u);
    for (int d = 0; d <= parts[k]->max_dim(); ++d) {
      for (GenId g : parts[k]->generators(d)) {
        inj.set(g, nondegenerate(ids[k][d][g.index]));
      }
    }
    c.injections.push_back(std::move(inj));
  }
  return c;
}

bool Subcomplex::contains(GenId ambient_gen) const {
  return space->find(ambient->label(ambient_gen)).has_value();
}

SimplexRef Subcomplex::restrict(const SimplexRef& ambient_simplex) const {
  auto g = space->find(ambient->label(ambient_simplex.gen));
  if (!g) throw PreconditionError("simplex is not in the subcomplex");
  return SimplexRef{*g, ambient_simplex.word};
}

Subcomplex subcomplex(SSetPtr ambient, const std::function<bool(GenId)>& keep) {
  auto s = std::make_shared<SimplicialSet>(ambient->max_dim());
  std::map<GenId, GenId> ids;
  for (int d = 0; d <= ambient->max_dim(); ++d) {
    for (GenId g : ambient->generators(d)) {
      if (!keep(g)) continue;
      std::vector<SimplexRef> faces;
      for (const auto& f : ambient->faces(g)) {
        auto it = ids.find(f.gen);
        if (it == ids.end()) {
          throw PreconditionError("selection is not closed under faces at '" +
                                  ambient->label(g) + "'");
        }
        faces.push_back(SimplexRef{it->second, f.word});
      }
      ids[g] = s->add(ambient->label(g), std::move(faces));
    }
  }
  Subcomplex sub{s, ambient, SimplicialMap(s, ambient)};
  for (const auto& [amb, own] : ids) sub.inclusion.set(own, nondegenerate(amb));
  return sub;
}

Subcomplex preimage(const SimplicialMap& f,
                    const std::function<bool(GenId)>& keep_in_target) {
  return subcomplex(f.source(),
                    [&](GenId g) { return keep_in_target(f(g).gen); });
}

// ---------------------------------------------------------------------------

RelatorWord parse_relator(const std::string& text) {
  std::size_t pos = 0;
  auto skip = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  std::function<RelatorWord()> parse_seq;
  auto parse_exponent = [&](RelatorWord base) {
    skip();
    if (pos >= text.size() || text[pos] != '^') return base;
    ++pos;
    skip();
    bool neg = false;
    if (pos < text.size() && text[pos] == '-') {
      neg = true;
      ++pos;
    }
    std::size_t start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (start == pos) throw PreconditionError("expected exponent in relator '" + text + "'");
    const int e = std::stoi(text.substr(start, pos - start));
    RelatorWord unit = base;
    if (neg) {
      std::reverse(unit.begin(), unit.end());
      for (auto& l : unit) l.inverse = !l.inverse;
    }
    RelatorWord out;
    for (int k = 0; k < e; ++k) out.insert(out.end(), unit.begin(), unit.end());
    return out;
  };
  parse_seq = [&]() {
    RelatorWord out;
    while (true) {
      skip();
      if (pos >= text.size() || text[pos] == ')') return out;
      RelatorWord term;
      if (text[pos] == '(') {
        ++pos;
        term = parse_seq();
        skip();
        if (pos >= text.size() || text[pos] != ')') {
          throw PreconditionError("unbalanced parenthesis in relator '" + text + "'");
        }
        ++pos;
      } else if (std::isalpha(static_cast<unsigned char>(text[pos]))) {
        const char c = text[pos++];
        const bool inv = std::isupper(static_cast<unsigned char>(c));
        term.push_back(Letter{std::string(1, static_cast<char>(std::tolower(c))), inv});
      } else {
        throw PreconditionError("unexpected character in relator '" + text + "'");
      }
      term = parse_exponent(std::move(term));
      out.insert(out.end(), term.begin(), term.end());
    }
  };
  RelatorWord w = parse_seq();
  if (pos != text.size()) throw PreconditionError("trailing input in relator '" + text + "'");
  return w;
}

SSetPtr presentation_complex(const std::vector<std::string>& letters,
                             const std::vector<RelatorWord>& relators,
                             int max_dim) {
  auto x = std::make_shared<SimplicialSet>(std::max(2, max_dim));
  const GenId v = x->add("v");
  const SimplexRef vr = nondegenerate(v);
  std::map<std::string, GenId> edge;
  for (const auto& l : letters) {
    if (edge.count(l)) throw PreconditionError("duplicate letter '" + l + "'");
    edge[l] = x->add(l, {vr, vr});
  }
  for (std::size_t r = 0; r < relators.size(); ++r) {
    const auto& word = relators[r];
    if (word.empty()) throw PreconditionError("empty relator");
    const std::string tag = "r" + std::to_string(r);
    const GenId hub = x->add(tag + ".hub");
    const std::size_t len = word.size();
    std::vector<GenId> spokes;
    for (std::size_t k = 0; k < len; ++k) {
      spokes.push_back(x->add(tag + ".c" + std::to_string(k),
                              {nondegenerate(hub), vr}));
    }
    for (std::size_t k = 0; k < len; ++k) {
      auto it = edge.find(word[k].name);
      if (it == edge.end()) {
        throw PreconditionError("relator uses unknown letter '" + word[k].name + "'");
      }
      const SimplexRef here = nondegenerate(spokes[k]);
      const SimplexRef next = nondegenerate(spokes[(k + 1) % len]);
      const SimplexRef side = nondegenerate(it->second);
      // Corner k -> corner k+1 along the letter; reversed for an inverse.
      if (!word[k].inverse) {
        x->add(tag + ".t" + std::to_string(k), {next, here, side});
      } else {
        x->add(tag + ".t" + std::to_string(k), {here, next, side});
      }
    }
  }
  return x;
}

Suspension suspension(SSetPtr x, int max_dim) {
  if (x->empty()) throw PreconditionError("suspension of the empty set");
  const int top = std::max(max_dim, x->max_dim() + 1);
  auto interval = standard_simplex(1, top);
  TupleSpace cyl = product(x, interval, top);
  Coproduct ends = disjoint_union({x, x});

  auto poles = std::make_shared<SimplicialSet>(x->max_dim());
  const GenId south = poles->add("S");
  const GenId north = poles->add("N");

  SimplicialMap i(ends.space, cyl.space);
  SimplicialMap j(ends.space, poles);
  for (int end = 0; end < 2; ++end) {
    const GenId pole = end == 0 ? south : north;
    for (int d = 0; d <= x->max_dim(); ++d) {
      for (GenId g : x->generators(d)) {
        const OrderMap constant(d + 1, end);
        const SimplexRef parts[2] = {nondegenerate(g),
                                     simplex_of(*interval, constant)};
        const GenId e = ends.injections[end](g).gen;
        i.set(e, cyl.at(parts));
        j.set(e, poles->apply(nondegenerate(pole), OrderMap(d + 1, 0)));
      }
    }
  }
  Pushout p = pushout(i, j);

  SimplicialMap on_poles(poles, interval);
  on_poles.set(south, simplex_of(*interval, OrderMap{0}));
  on_poles.set(north, simplex_of(*interval, OrderMap{1}));
  return Suspension{p.space, induced_from_pushout(p, cyl.projections[1], on_poles)};
}

SSetPtr cycle_graph(int n, int max_dim) {
  if (n < 1) throw RangeError("cycle needs at least one vertex");
  auto c = std::make_shared<SimplicialSet>(std::max(1, max_dim));
  for (int k = 0; k < n; ++k) c->add("c" + std::to_string(k));
  for (int k = 0; k < n; ++k) {
    c->add("e" + std::to_string(k),
           {nondegenerate(GenId{0, (k + 1) % n}), nondegenerate(GenId{0, k})});
  }
  return c;
}

SimplicialMap cycle_cover(SSetPtr from, SSetPtr to) {
  const int m = static_cast<int>(from->count(0));
  const int n = static_cast<int>(to->count(0));
  if (n == 0 || m % n != 0) throw PreconditionError("cycle cover needs n | m");
  SimplicialMap f(from, to);
  for (int k = 0; k < m; ++k) {
    f.set(GenId{0, k}, nondegenerate(GenId{0, k % n}));
    f.set(GenId{1, k}, nondegenerate(GenId{1, k % n}));
  }
  return f;
}

}  // namespace hofib
