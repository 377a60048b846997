#include "hofib/borel.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "hofib/errors.hpp"

namespace hofib {

namespace {

SimplexRef degenerate_vertex(GenId v, int q) {
  const OrderMap zeros(q + 1, 0);
  return SimplexRef{v, DegeneracyWord::from_surjection(zeros)};
}

using TupleFn = std::function<SimplexRef(const std::vector<SimplexRef>&)>;

SimplicialMap map_on_tuples(const TupleSpace& domain, SSetPtr target, const TupleFn& fn) {
  SimplicialMap m(domain.space, std::move(target));
  for (int d = 0; d <= domain.space->max_dim(); ++d) {
    for (GenId g : domain.space->generators(d)) m.set(g, fn(domain.components(nondegenerate(g))));
  }
  return m;
}

// Vertex of a discrete hom space underlying a simplex.
GenId discrete_vertex(const SimplexRef& f) {
  if (f.gen.dim != 0) throw PreconditionError("morphism space is not discrete");
  return f.gen;
}

void append(std::vector<std::string>& out, const std::vector<Diagnostic>& diagnostics,
            const std::string& where) {
  for (const auto& d : diagnostics) out.push_back(where + ": " + d.message);
}

}  // namespace

// ---------------------------------------------------------------------------
// Monoids

int Monoid::index_of(const std::string& element) const {
  const auto it = std::find(elements.begin(), elements.end(), element);
  if (it == elements.end()) throw PreconditionError("unknown monoid element '" + element + "'");
  return static_cast<int>(it - elements.begin());
}

Monoid Monoid::cyclic(int n) {
  if (n < 1) throw RangeError("cyclic monoid needs n >= 1");
  Monoid m;
  m.name = "Z" + std::to_string(n);
  for (int a = 0; a < n; ++a) {
    m.elements.push_back(std::to_string(a));
    std::vector<int> row;
    for (int b = 0; b < n; ++b) row.push_back((a + b) % n);
    m.table.push_back(std::move(row));
  }
  return m;
}

Monoid Monoid::idempotent() {
  return Monoid{"idem", {"1", "e"}, {{0, 1}, {1, 1}}, 0};
}

Monoid Monoid::trivial() { return Monoid{"trivial", {"1"}, {{0}}, 0}; }

std::vector<std::string> validate(const Monoid& m) {
  std::vector<std::string> out;
  const int n = m.size();
  if (n == 0) return {"monoid has no elements"};
  if (static_cast<int>(m.table.size()) != n) return {"table has the wrong number of rows"};
  for (const auto& row : m.table) {
    if (static_cast<int>(row.size()) != n) return {"table has a row of the wrong length"};
    for (int v : row) {
      if (v < 0 || v >= n) return {"table entry out of range"};
    }
  }
  if (m.unit < 0 || m.unit >= n) return {"unit out of range"};
  std::set<std::string> names(m.elements.begin(), m.elements.end());
  if (static_cast<int>(names.size()) != n) out.push_back("duplicate element names");
  for (int a = 0; a < n; ++a) {
    if (m.table[m.unit][a] != a || m.table[a][m.unit] != a) {
      out.push_back("unit law fails at " + m.elements[a]);
    }
  }
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      for (int c = 0; c < n; ++c) {
        if (m.table[m.table[a][b]][c] != m.table[a][m.table[b][c]]) {
          out.push_back("not associative at (" + m.elements[a] + ", " + m.elements[b] + ", " +
                        m.elements[c] + ")");
        }
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Simplicial categories

SimplicialCategory::SimplicialCategory(std::vector<std::string> objects, int max_dim)
    : max_dim_(max_dim), objects_(std::move(objects)) {
  const std::size_t n = objects_.size();
  hom_.assign(n, std::vector<SSetPtr>(n));
  for (auto& row : hom_) {
    for (auto& h : row) h = std::make_shared<SimplicialSet>(max_dim_);
  }
  identity_.assign(n, GenId{0, -1});
}

std::optional<int> SimplicialCategory::find_object(const std::string& name) const {
  for (int i = 0; i < object_count(); ++i) {
    if (objects_[i] == name) return i;
  }
  return std::nullopt;
}

SimplexRef SimplicialCategory::compose(int i, int j, int k, const SimplexRef& g,
                                       const SimplexRef& f) const {
  const auto it = composition_.find({i, j, k});
  if (it == composition_.end()) throw PreconditionError("composition is not defined");
  const std::vector<SimplexRef> parts{g, f};
  return it->second.map.apply(it->second.domain.at(parts));
}

SimplexRef SimplicialCategory::identity_simplex(int i, int q) const {
  if (identity_[i].index < 0) throw PreconditionError("identity of " + objects_[i] + " is not set");
  return degenerate_vertex(identity_[i], q);
}

void SimplicialCategory::set_hom(int i, int j, SSetPtr space) { hom_[i][j] = std::move(space); }

void SimplicialCategory::set_identity(int i, GenId vertex) {
  if (vertex.dim != 0 || !hom_[i][i]->contains(vertex)) {
    throw PreconditionError("identity must be a vertex of hom(i, i)");
  }
  identity_[i] = vertex;
}

void SimplicialCategory::set_composition(int i, int j, int k, TupleSpace domain,
                                         SimplicialMap map) {
  if (map.source() != domain.space) throw PreconditionError("composition map has the wrong source");
  if (map.target() != hom_[i][k]) throw PreconditionError("composition map has the wrong target");
  composition_.insert_or_assign(std::tuple{i, j, k}, Composition{std::move(domain), std::move(map)});
}

SimplicialCategory from_monoid(const Monoid& m, int max_dim) {
  const auto problems = validate(m);
  if (!problems.empty()) throw PreconditionError(m.name + ": " + problems.front());
  SimplicialCategory c({"*"}, max_dim);
  auto hom = std::make_shared<SimplicialSet>(max_dim);
  for (const auto& e : m.elements) hom->add(e);
  c.set_hom(0, 0, hom);
  c.set_identity(0, GenId{0, m.unit});
  TupleSpace domain = product(hom, hom, max_dim);
  SimplicialMap comp = map_on_tuples(domain, hom, [&](const std::vector<SimplexRef>& parts) {
    const int g = discrete_vertex(parts[0]).index;
    const int f = discrete_vertex(parts[1]).index;
    return degenerate_vertex(GenId{0, m.table[g][f]}, parts[0].dim());
  });
  c.set_composition(0, 0, 0, std::move(domain), std::move(comp));
  return c;
}

std::vector<std::string> validate(const SimplicialCategory& c) {
  std::vector<std::string> out;
  const int n = c.object_count();
  const int top = c.max_dim();
  for (int i = 0; i < n; ++i) {
    if (c.identity(i).index < 0) out.push_back("identity of " + c.object(i) + " is not set");
  }
  if (!out.empty()) return out;
  auto name = [&](int i, int j, const SimplexRef& f) {
    return c.object(i) + "->" + c.object(j) + " " + c.hom(i, j)->describe(f);
  };
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int q = 0; q <= top; ++q) {
        for (GenId g : c.hom(i, j)->generators(q)) {
          const SimplexRef f = nondegenerate(g);
          if (c.compose(i, j, j, c.identity_simplex(j, q), f) != f ||
              c.compose(i, i, j, f, c.identity_simplex(i, q)) != f) {
            out.push_back("unit law fails at " + name(i, j, f));
          }
        }
      }
    }
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        for (int l = 0; l < n; ++l) {
          const TupleSpace triples = product({c.hom(k, l), c.hom(j, k), c.hom(i, j)}, top);
          for (int q = 0; q <= top; ++q) {
            for (GenId t : triples.space->generators(q)) {
              const auto p = triples.components(nondegenerate(t));
              const SimplexRef left = c.compose(i, k, l, p[0], c.compose(i, j, k, p[1], p[2]));
              const SimplexRef right = c.compose(i, j, l, c.compose(j, k, l, p[0], p[1]), p[2]);
              if (left != right) {
                out.push_back("composition is not associative at " + triples.space->label(t));
              }
            }
          }
        }
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Diagrams

Diagram::Diagram(SimplicialCategory category, std::vector<SSetPtr> values)
    : category_(std::move(category)), values_(std::move(values)) {
  const int n = category_.object_count();
  if (static_cast<int>(values_.size()) != n) {
    throw PreconditionError("diagram needs one value per object");
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      TupleSpace domain = product(category_.hom(i, j), values_[j], category_.max_dim());
      SimplicialMap map(domain.space, values_[i]);
      actions_.emplace(std::pair{i, j}, Action{std::move(domain), std::move(map)});
    }
  }
}

void Diagram::set_action(int i, int j, SimplicialMap map) {
  Action& a = actions_.at({i, j});
  if (map.source() != a.domain.space || map.target() != values_[i]) {
    throw PreconditionError("action map has the wrong source or target");
  }
  a.map = std::move(map);
}

SimplexRef Diagram::act(int i, int j, const SimplexRef& f, const SimplexRef& y) const {
  const Action& a = actions_.at({i, j});
  const std::vector<SimplexRef> parts{f, y};
  return a.map.apply(a.domain.at(parts));
}

SimplicialMap Diagram::morphism_map(int i, int j, GenId f) const {
  const SimplicialSet& fj = *values_[j];
  SimplicialMap m(values_[j], values_[i]);
  for (int q = 0; q <= fj.max_dim(); ++q) {
    for (GenId y : fj.generators(q)) m.set(y, act(i, j, degenerate_vertex(f, q), nondegenerate(y)));
  }
  return m;
}

std::vector<std::string> validate(const Diagram& d) {
  std::vector<std::string> out;
  const SimplicialCategory& c = d.category();
  const int n = d.object_count();
  const int top = c.max_dim();
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      // The action is total and simplicial.
      SimplicialMap action(d.action_domain(i, j).space, d.value(i));
      bool complete = true;
      for (int q = 0; q <= top && complete; ++q) {
        for (GenId g : d.action_domain(i, j).space->generators(q)) {
          const auto parts = d.action_domain(i, j).components(nondegenerate(g));
          try {
            action.set(g, d.act(i, j, parts[0], parts[1]));
          } catch (const Error&) {
            out.push_back("action " + c.object(i) + "<-" + c.object(j) + " is not defined on " +
                          d.action_domain(i, j).space->label(g));
            complete = false;
            break;
          }
        }
      }
      if (complete) append(out, validate(action), "action " + c.object(i) + "<-" + c.object(j));
    }
  }
  if (!out.empty()) return out;
  for (int i = 0; i < n; ++i) {
    for (int q = 0; q <= top; ++q) {
      for (GenId y : d.value(i)->generators(q)) {
        const SimplexRef s = nondegenerate(y);
        if (d.act(i, i, c.identity_simplex(i, q), s) != s) {
          out.push_back("identity of " + c.object(i) + " does not fix " + d.value(i)->label(y));
        }
      }
    }
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        const TupleSpace triples = product({c.hom(j, k), c.hom(i, j), d.value(k)}, top);
        for (int q = 0; q <= top; ++q) {
          for (GenId t : triples.space->generators(q)) {
            const auto p = triples.components(nondegenerate(t));
            const SimplexRef left = d.act(i, j, p[1], d.act(j, k, p[0], p[2]));
            const SimplexRef right = d.act(i, k, c.compose(i, j, k, p[0], p[1]), p[2]);
            if (left != right) out.push_back("action is not compatible at " + triples.space->label(t));
          }
        }
      }
    }
  }
  return out;
}

Diagram trivial_diagram(const SimplicialCategory& c) {
  std::vector<SSetPtr> values;
  for (int i = 0; i < c.object_count(); ++i) {
    auto pt = std::make_shared<SimplicialSet>(c.max_dim());
    pt->add(c.object(i));
    values.push_back(pt);
  }
  Diagram d(c, values);
  for (int i = 0; i < c.object_count(); ++i) {
    for (int j = 0; j < c.object_count(); ++j) {
      d.set_action(i, j, map_on_tuples(d.action_domain(i, j), values[i],
                                       [](const std::vector<SimplexRef>& parts) {
                                         return degenerate_vertex(GenId{0, 0}, parts[0].dim());
                                       }));
    }
  }
  return d;
}

Diagram restriction_diagram(const SimplicialCategory& c, int j) {
  if (j < 0 || j >= c.object_count()) throw RangeError("object out of range");
  std::vector<SSetPtr> values;
  for (int i = 0; i < c.object_count(); ++i) values.push_back(c.hom(i, j));
  Diagram d(c, values);
  for (int i = 0; i < c.object_count(); ++i) {
    for (int k = 0; k < c.object_count(); ++k) {
      d.set_action(i, k, map_on_tuples(d.action_domain(i, k), values[i],
                                       [&](const std::vector<SimplexRef>& parts) {
                                         return c.compose(i, k, j, parts[1], parts[0]);
                                       }));
    }
  }
  return d;
}

Diagram diagram_from_maps(const SimplicialCategory& c, std::vector<SSetPtr> values,
                          const std::map<std::tuple<int, int, GenId>, SimplicialMap>& maps) {
  Diagram d(c, values);
  for (int i = 0; i < c.object_count(); ++i) {
    for (int j = 0; j < c.object_count(); ++j) {
      d.set_action(i, j, map_on_tuples(d.action_domain(i, j), values[i],
                                       [&](const std::vector<SimplexRef>& parts) {
                                         const GenId f = discrete_vertex(parts[0]);
                                         const auto it = maps.find({i, j, f});
                                         if (it == maps.end()) {
                                           throw PreconditionError(
                                               "no map given for morphism " +
                                               c.hom(i, j)->label(f));
                                         }
                                         return it->second.apply(parts[1]);
                                       }));
    }
  }
  return d;
}

// ---------------------------------------------------------------------------
// Telescope

namespace {

struct Telescope {
  SSetPtr space;
  TupleSpace cylinder;                 // X x Delta[1]
  std::vector<SimplicialMap> copies;   // X -> T, one per stage
  std::vector<SimplicialMap> tubes;    // cylinder -> T, between stages j and j + 1
  // Generator of T -> (stage, from a tube, generator of X or of the cylinder).
  std::map<GenId, std::tuple<int, bool, GenId>> decode;
};

SimplicialMap relabelled_copy(SSetPtr x, const std::string& suffix) {
  auto copy = std::make_shared<SimplicialSet>(x->max_dim());
  SimplicialMap m(x, copy);
  for (int d = 0; d <= x->max_dim(); ++d) {
    for (GenId g : x->generators(d)) {
      std::vector<SimplexRef> faces;
      for (const SimplexRef& f : x->faces(g)) faces.push_back(m.apply(f));
      m.set(g, nondegenerate(copy->add(x->label(g) + suffix, std::move(faces))));
    }
  }
  return m;
}

Telescope build_telescope(SSetPtr x, const SimplicialMap& alpha, int stages) {
  const int top = x->max_dim();
  Telescope t;
  const SSetPtr interval = standard_simplex(1, top);
  t.cylinder = product(x, interval, top);
  auto end = [&](int e) {
    SimplicialMap m(x, t.cylinder.space);
    for (int d = 0; d <= top; ++d) {
      for (GenId g : x->generators(d)) {
        const OrderMap at(d + 1, e);
        const std::vector<SimplexRef> parts{nondegenerate(g), simplex_of(*interval, at)};
        m.set(g, t.cylinder.at(parts));
      }
    }
    return m;
  };
  const SimplicialMap end0 = end(0);
  const SimplicialMap end1 = end(1);

  SimplicialMap first = relabelled_copy(x, "@0");
  t.space = first.target();
  t.copies.push_back(first);
  for (int j = 0; j < stages; ++j) {
    const Pushout glue0 = pushout(end0, t.copies[j], std::to_string(j) + "~");
    const SimplicialMap next = relabelled_copy(x, "@" + std::to_string(j + 1));
    const Pushout glue1 = pushout(compose(glue0.from_x, end1), compose(next, alpha));
    const SimplicialMap old_to_new = compose(glue1.from_x, glue0.from_y);
    for (auto& c : t.copies) c = compose(old_to_new, c);
    for (auto& c : t.tubes) c = compose(old_to_new, c);
    t.tubes.push_back(compose(glue1.from_x, glue0.from_x));
    t.copies.push_back(compose(glue1.from_y, next));
    t.space = glue1.space;
  }
  for (int d = 0; d <= top; ++d) {
    for (int j = 0; j < static_cast<int>(t.copies.size()); ++j) {
      for (GenId g : x->generators(d)) {
        const SimplexRef image = t.copies[j](g);
        if (!image.degenerate()) t.decode.emplace(image.gen, std::tuple{j, false, g});
      }
    }
    for (int j = 0; j < static_cast<int>(t.tubes.size()); ++j) {
      for (GenId g : t.cylinder.space->generators(d)) {
        const SimplexRef image = t.tubes[j](g);
        if (!image.degenerate()) t.decode.emplace(image.gen, std::tuple{j, true, g});
      }
    }
  }
  return t;
}

}  // namespace

Diagram telescope_diagram(const SimplicialCategory& c, int object, GenId alpha,
                          const TelescopeOptions& options) {
  if (object < 0 || object >= c.object_count()) throw RangeError("object out of range");
  if (alpha.dim != 0 || !c.hom(object, object)->contains(alpha)) {
    throw PreconditionError("alpha must be a vertex of the endomorphism space");
  }
  if (options.stages < 1) throw RangeError("telescope needs at least one stage");
  const int n = c.object_count();
  std::vector<Telescope> scopes;
  std::vector<Subcomplex> kept;
  std::vector<SSetPtr> values;
  for (int i = 0; i < n; ++i) {
    const SSetPtr x = c.hom(i, object);
    SimplicialMap alpha_star(x, x);
    for (int d = 0; d <= x->max_dim(); ++d) {
      for (GenId g : x->generators(d)) {
        alpha_star.set(g, c.compose(i, object, object, degenerate_vertex(alpha, d), nondegenerate(g)));
      }
    }
    Telescope t = build_telescope(x, alpha_star, options.stages);
    std::set<GenId> tail_image;
    for (int d = 0; d <= x->max_dim(); ++d) {
      for (GenId g : x->generators(d)) {
        tail_image.insert(t.copies.back().apply(alpha_star(g)).gen);
      }
    }
    const int last = options.stages;
    Subcomplex sub = subcomplex(t.space, [&](GenId g) {
      if (!options.prune_tail) return true;
      const auto& [stage, tube, source] = t.decode.at(g);
      return tube || stage != last || tail_image.count(g) > 0;
    });
    values.push_back(sub.space);
    scopes.push_back(std::move(t));
    kept.push_back(std::move(sub));
  }

  Diagram d(c, values);
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k) {
      const Telescope& from = scopes[k];
      const Telescope& to = scopes[i];
      d.set_action(i, k, map_on_tuples(d.action_domain(i, k), values[i],
                                       [&](const std::vector<SimplexRef>& parts) {
        const SimplexRef y = kept[k].inclusion.apply(parts[1]);
        const auto& [stage, tube, source] = from.decode.at(y.gen);
        const SimplexRef cell{source, y.word};
        SimplexRef image;
        if (!tube) {
          image = to.copies[stage].apply(c.compose(i, k, object, cell, parts[0]));
        } else {
          const auto comps = from.cylinder.components(cell);
          const std::vector<SimplexRef> moved{c.compose(i, k, object, comps[0], parts[0]),
                                              comps[1]};
          image = to.tubes[stage].apply(to.cylinder.at(moved));
        }
        return kept[i].restrict(image);
      }));
    }
  }
  return d;
}

// ---------------------------------------------------------------------------
// Simplicial spaces

std::vector<std::string> validate(const SimplicialSpace& x) {
  std::vector<std::string> out;
  const int top = x.top();
  if (static_cast<int>(x.faces.size()) != top + 1 ||
      static_cast<int>(x.degeneracies.size()) != top + 1) {
    return {"structure maps are missing"};
  }
  auto where = [](const char* kind, int n, int i) {
    return std::string(kind) + std::to_string(i) + " at level " + std::to_string(n);
  };
  for (int n = 0; n <= top; ++n) {
    for (int i = 0; i < static_cast<int>(x.faces[n].size()); ++i) {
      append(out, validate(x.faces[n][i]), where("d", n, i));
    }
    for (int i = 0; i < static_cast<int>(x.degeneracies[n].size()); ++i) {
      append(out, validate(x.degeneracies[n][i]), where("s", n, i));
    }
  }
  if (!out.empty()) return out;
  auto d = [&](int n, int i) -> const SimplicialMap& { return x.faces[n][i]; };
  auto s = [&](int n, int i) -> const SimplicialMap& { return x.degeneracies[n][i]; };
  for (int n = 2; n <= top; ++n) {
    for (int j = 1; j <= n; ++j) {
      for (int i = 0; i < j; ++i) {
        if (compose(d(n - 1, i), d(n, j)) != compose(d(n - 1, j - 1), d(n, i))) {
          out.push_back("d_i d_j = d_{j-1} d_i fails for i=" + std::to_string(i) +
                        ", j=" + std::to_string(j) + " at level " + std::to_string(n));
        }
      }
    }
  }
  for (int n = 0; n + 2 <= top; ++n) {
    for (int j = 0; j <= n; ++j) {
      for (int i = 0; i <= j; ++i) {
        if (compose(s(n + 1, i), s(n, j)) != compose(s(n + 1, j + 1), s(n, i))) {
          out.push_back("s_i s_j = s_{j+1} s_i fails for i=" + std::to_string(i) +
                        ", j=" + std::to_string(j) + " at level " + std::to_string(n));
        }
      }
    }
  }
  for (int n = 0; n + 1 <= top; ++n) {
    const SimplicialMap id = SimplicialMap::identity(x.levels[n]);
    for (int j = 0; j <= n; ++j) {
      for (int i = 0; i <= n + 1; ++i) {
        const SimplicialMap lhs = compose(d(n + 1, i), s(n, j));
        bool ok = true;
        if (i < j) {
          ok = lhs == compose(s(n - 1, j - 1), d(n, i));
        } else if (i == j || i == j + 1) {
          ok = lhs == id;
        } else {
          ok = lhs == compose(s(n - 1, j), d(n, i - 1));
        }
        if (!ok) {
          out.push_back("d_i s_j identity fails for i=" + std::to_string(i) +
                        ", j=" + std::to_string(j) + " at level " + std::to_string(n));
        }
      }
    }
  }
  return out;
}

SimplicialSpace constant_space(SSetPtr x, int top) {
  SimplicialSpace out;
  const SimplicialMap id = SimplicialMap::identity(x);
  for (int n = 0; n <= top; ++n) {
    out.levels.push_back(x);
    out.faces.emplace_back(n > 0 ? n + 1 : 0, id);
    out.degeneracies.emplace_back(n < top ? n + 1 : 0, id);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Borel construction

SimplexRef BorelLevel::locate(int block, std::span<const SimplexRef> components) const {
  return sum.injections[block].apply(blocks[block].at(components));
}

int BorelLevel::block_of(const std::vector<int>& tuple) const {
  const auto it = std::lower_bound(tuples.begin(), tuples.end(), tuple);
  if (it == tuples.end() || *it != tuple) throw PreconditionError("object tuple out of range");
  return static_cast<int>(it - tuples.begin());
}

std::pair<int, std::vector<SimplexRef>> BorelLevel::components(const SimplexRef& s) const {
  const auto& [block, g] = decode[s.gen.dim][s.gen.index];
  return {block, blocks[block].components(SimplexRef{g, s.word})};
}

BorelLevel borel_level(const Diagram& f, int n) {
  const SimplicialCategory& c = f.category();
  const int objects = c.object_count();
  BorelLevel level;
  level.n = n;
  std::vector<int> tuple(n + 1, 0);
  while (true) {
    level.tuples.push_back(tuple);
    int k = n;
    while (k >= 0 && ++tuple[k] == objects) tuple[k--] = 0;
    if (k < 0) break;
  }
  std::vector<SSetPtr> parts;
  for (const auto& t : level.tuples) {
    std::vector<SSetPtr> factors{f.value(t[0])};
    for (int k = 1; k <= n; ++k) factors.push_back(c.hom(t[k], t[k - 1]));
    level.blocks.push_back(product(std::move(factors), c.max_dim()));
    parts.push_back(level.blocks.back().space);
  }
  level.sum = disjoint_union(parts, c.max_dim());
  const SimplicialSet& total = *level.sum.space;
  level.decode.resize(total.max_dim() + 1);
  for (int d = 0; d <= total.max_dim(); ++d) level.decode[d].resize(total.count(d));
  for (int b = 0; b < static_cast<int>(level.blocks.size()); ++b) {
    for (int d = 0; d <= parts[b]->max_dim(); ++d) {
      for (GenId g : parts[b]->generators(d)) {
        const SimplexRef image = level.sum.injections[b](g);
        level.decode[d][image.gen.index] = {b, g};
      }
    }
  }
  return level;
}

namespace {

using LevelRule = std::function<std::pair<std::vector<int>, std::vector<SimplexRef>>(
    const std::vector<int>&, const std::vector<SimplexRef>&)>;

SimplicialMap level_map(const BorelLevel& from, const BorelLevel& to, const LevelRule& rule) {
  SimplicialMap m(from.space(), to.space());
  const SimplicialSet& x = *from.space();
  for (int d = 0; d <= x.max_dim(); ++d) {
    for (GenId g : x.generators(d)) {
      const auto [block, comps] = from.components(nondegenerate(g));
      const auto [tuple, image] = rule(from.tuples[block], comps);
      m.set(g, to.locate(to.block_of(tuple), image));
    }
  }
  return m;
}

}  // namespace

BorelSpace borel_space(const Diagram& f, int top) {
  if (top < 0) throw RangeError("truncation must be nonnegative");
  const SimplicialCategory& c = f.category();
  BorelSpace out;
  for (int n = 0; n <= top; ++n) {
    out.levels.push_back(borel_level(f, n));
    out.space.levels.push_back(out.levels.back().space());
  }
  out.space.faces.resize(top + 1);
  out.space.degeneracies.resize(top + 1);
  for (int n = 1; n <= top; ++n) {
    for (int i = 0; i <= n; ++i) {
      out.space.faces[n].push_back(level_map(
          out.levels[n], out.levels[n - 1],
          [&](const std::vector<int>& o, const std::vector<SimplexRef>& m) {
            std::vector<int> t = o;
            t.erase(t.begin() + i);
            std::vector<SimplexRef> r;
            if (i == 0) {
              r.push_back(f.act(o[1], o[0], m[1], m[0]));
              r.insert(r.end(), m.begin() + 2, m.end());
            } else if (i == n) {
              r.assign(m.begin(), m.end() - 1);
            } else {
              r.assign(m.begin(), m.begin() + i);
              r.push_back(c.compose(o[i + 1], o[i], o[i - 1], m[i], m[i + 1]));
              r.insert(r.end(), m.begin() + i + 2, m.end());
            }
            return std::pair{t, r};
          }));
    }
  }
  for (int n = 0; n < top; ++n) {
    for (int i = 0; i <= n; ++i) {
      out.space.degeneracies[n].push_back(level_map(
          out.levels[n], out.levels[n + 1],
          [&](const std::vector<int>& o, const std::vector<SimplexRef>& m) {
            std::vector<int> t = o;
            t.insert(t.begin() + i, o[i]);
            std::vector<SimplexRef> r = m;
            r.insert(r.begin() + i + 1, c.identity_simplex(o[i], m[0].dim()));
            return std::pair{t, r};
          }));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Thick realization

ThickRealization thick_realize(const SimplicialSpace& x, int top) {
  if (top < 0) top = x.top();
  if (top > x.top()) throw RangeError("realization above the top level");
  int r = top;
  for (int n = 0; n <= top; ++n) r = std::max(r, x.levels[n]->max_dim());

  ThickRealization out;
  std::vector<SSetPtr> deltas;
  deltas.push_back(standard_simplex(0, r));
  out.cells.push_back(product(deltas[0], x.levels[0], r));
  out.stages.push_back(x.levels[0]);
  out.legs.push_back(out.cells[0].projections[1]);
  out.stage_inclusions.push_back(SimplicialMap::identity(x.levels[0]));

  for (int n = 1; n <= top; ++n) {
    deltas.push_back(standard_simplex(n, r));
    const SSetPtr& delta = deltas[n];
    const SSetPtr& lower = deltas[n - 1];
    out.cells.push_back(product(delta, x.levels[n], r));
    const TupleSpace& cells = out.cells[n];
    const GenId interior = *delta->find(set_label(full_set(n)));
    const Subcomplex rim = subcomplex(cells.space, [&](GenId g) {
      return cells.projections[0](g).gen != interior;
    });
    SimplicialMap attach(rim.space, out.stages.back());
    for (int d = 0; d <= rim.space->max_dim(); ++d) {
      for (GenId g : rim.space->generators(d)) {
        const auto parts = cells.components(rim.inclusion(g));
        std::vector<int> v = vertex_sequence(*delta, parts[0]);
        int missing = 0;
        while (std::find(v.begin(), v.end(), missing) != v.end()) ++missing;
        for (int& u : v) {
          if (u > missing) --u;
        }
        const std::vector<SimplexRef> lowered{simplex_of(*lower, v),
                                              x.faces[n][missing].apply(parts[1])};
        attach.set(g, out.legs[n - 1].apply(out.cells[n - 1].at(lowered)));
      }
    }
    const Pushout glued = pushout(rim.inclusion, attach, "c" + std::to_string(n) + ":");
    for (auto& leg : out.legs) leg = compose(glued.from_y, leg);
    for (auto& inc : out.stage_inclusions) inc = compose(glued.from_y, inc);
    out.legs.push_back(glued.from_x);
    out.stages.push_back(glued.space);
    out.stage_inclusions.push_back(SimplicialMap::identity(glued.space));
  }

  const SimplicialSet& final_space = *out.space();
  out.origin.resize(final_space.max_dim() + 1);
  for (int d = 0; d <= final_space.max_dim(); ++d) {
    out.origin[d].assign(final_space.count(d), {-1, GenId{}});
  }
  for (int k = 0; k <= top; ++k) {
    const SimplicialSet& cells = *out.cells[k].space;
    for (int d = 0; d <= cells.max_dim(); ++d) {
      for (GenId g : cells.generators(d)) {
        const SimplexRef image = out.legs[k](g);
        auto& slot = out.origin[image.gen.dim][image.gen.index];
        if (!image.degenerate() && slot.first < 0) slot = {k, g};
      }
    }
  }
  return out;
}

SimplicialMap realize_map(const std::vector<SimplicialMap>& levelwise, const ThickRealization& x,
                          const ThickRealization& y) {
  if (levelwise.size() < x.cells.size() || y.cells.size() < x.cells.size()) {
    throw PreconditionError("levelwise maps do not cover the realization");
  }
  SimplicialMap m(x.space(), y.space());
  const SimplicialSet& source = *x.space();
  for (int d = 0; d <= source.max_dim(); ++d) {
    for (GenId g : source.generators(d)) {
      const auto& [k, cell] = x.origin[d][g.index];
      if (k < 0) throw InternalError("realization generator without a cell");
      const auto parts = x.cells[k].components(nondegenerate(cell));
      const auto v = vertex_sequence(*x.cells[k].factors[0], parts[0]);
      const std::vector<SimplexRef> image{simplex_of(*y.cells[k].factors[0], v),
                                          levelwise[k].apply(parts[1])};
      m.set(g, y.legs[k].apply(y.cells[k].at(image)));
    }
  }
  return m;
}

ThickRealization classifying_space(const SimplicialCategory& c, int top) {
  return thick_realize(borel_space(trivial_diagram(c), top).space, top);
}

BorelTotal borel_total(const Diagram& f, int top) {
  BorelTotal b;
  b.total = borel_space(f, top);
  b.base = borel_space(trivial_diagram(f.category()), top);
  for (int n = 0; n <= top; ++n) {
    b.levelwise.push_back(level_map(b.total.levels[n], b.base.levels[n],
                                    [](const std::vector<int>& o, const std::vector<SimplexRef>& m) {
                                      std::vector<SimplexRef> r = m;
                                      r[0] = degenerate_vertex(GenId{0, 0}, m[0].dim());
                                      return std::pair{o, r};
                                    }));
  }
  b.total_realized = thick_realize(b.total.space, top);
  b.base_realized = thick_realize(b.base.space, top);
  b.projection = realize_map(b.levelwise, b.total_realized, b.base_realized);
  return b;
}

GenId object_vertex(const BorelTotal& b, int object) {
  const BorelLevel& level = b.base.levels[0];
  const std::vector<SimplexRef> parts{nondegenerate(GenId{0, 0})};
  const SimplexRef v = level.locate(level.block_of({object}), parts);
  return b.base_realized.stage_inclusions[0].apply(v).gen;
}

SimplicialMap fiber_inclusion(const BorelTotal& b, int object, const PreimageRecord& record) {
  const BorelLevel& level = b.total.levels[0];
  const SSetPtr& value = level.blocks[level.block_of({object})].factors[0];
  SimplicialMap m(value, record.space());
  const int block = level.block_of({object});
  for (int q = 0; q <= value->max_dim(); ++q) {
    const OrderMap zeros(q + 1, 0);
    for (GenId g : value->generators(q)) {
      const std::vector<SimplexRef> parts{nondegenerate(g)};
      const SimplexRef e = b.total_realized.stage_inclusions[0].apply(level.locate(block, parts));
      const std::vector<SimplexRef> pair{simplex_of(*record.delta, zeros), e};
      m.set(g, record.limit.at(pair));
    }
  }
  return m;
}

// ---------------------------------------------------------------------------
// Group completion

namespace {

std::string failure_text(const IsoCertificate& cert) {
  if (!cert.first_failure) return "";
  for (const IsoDegree& d : cert.degrees) {
    if (d.degree == *cert.first_failure) {
      return "H_" + std::to_string(d.degree) + ": " + d.source + " -> " + d.target +
             (d.reason.empty() ? "" : " (" + d.reason + ")");
    }
  }
  return "degree " + std::to_string(*cert.first_failure);
}

void fail(Gate& gate, std::string witness) {
  gate.passed = false;
  gate.witnesses.push_back(std::move(witness));
}

Gate hypothesis_gate(const Diagram& f, int up_to) {
  Gate gate{"hypothesis", true, {}};
  for (const auto& problem : validate(f)) fail(gate, problem);
  if (!gate.passed) return gate;
  const SimplicialCategory& c = f.category();
  for (int i = 0; i < c.object_count(); ++i) {
    for (int j = 0; j < c.object_count(); ++j) {
      for (GenId m : c.hom(i, j)->generators(0)) {
        const IsoCertificate cert = is_homology_iso(f.morphism_map(i, j, m), up_to);
        if (!cert.iso) {
          fail(gate, "F(" + c.hom(i, j)->label(m) + ") : F(" + c.object(j) + ") -> F(" +
                         c.object(i) + ") fails at " + failure_text(cert));
        }
      }
    }
  }
  return gate;
}

Gate levelwise_gate(const BorelTotal& b, int top) {
  Gate gate{"levelwise", true, {}};
  for (int n = 0; n <= top; ++n) {
    const BorelLevel& base = b.base.levels[n];
    const BorelLevel& total = b.total.levels[n];
    for (GenId v : base.space()->generators(0)) {
      const PreimageRecord rec = dp(b.levelwise[n], nondegenerate(v), total.space()->max_dim());
      const int block = base.decode[0][v.index].first;
      const SSetPtr& value = total.blocks[block].factors[0];
      SimplicialMap to_value(rec.space(), value);
      for (int d = 0; d <= rec.space()->max_dim(); ++d) {
        for (GenId g : rec.space()->generators(d)) {
          to_value.set(g, total.components(rec.to_total()(g)).second[0]);
        }
      }
      if (!to_value.is_isomorphism()) {
        fail(gate, "level " + std::to_string(n) + ": preimage of " + base.space()->label(v) +
                       " is not the value at its first object");
      }
    }
  }
  return gate;
}

Gate face_gate(const Diagram& f, const BorelTotal& b, int top, int up_to) {
  Gate gate{"d0", true, {}};
  std::set<std::tuple<int, int, GenId>> tested;
  for (int n = 1; n <= top; ++n) {
    const BorelLevel& base = b.base.levels[n];
    const BorelLevel& total = b.total.levels[n];
    for (GenId v : base.space()->generators(0)) {
      const auto [block, comps] = base.components(nondegenerate(v));
      const std::vector<int>& o = base.tuples[block];
      const SSetPtr& value = f.value(o[0]);
      for (int i = 0; i <= n; ++i) {
        const SSetPtr& target = f.value(i == 0 ? o[1] : o[0]);
        SimplicialMap induced(value, target);
        for (int q = 0; q <= value->max_dim(); ++q) {
          for (GenId x : value->generators(q)) {
            std::vector<SimplexRef> parts{nondegenerate(x)};
            for (int k = 1; k <= n; ++k) parts.push_back(degenerate_vertex(comps[k].gen, q));
            const SimplexRef up = total.locate(block, parts);
            const SimplexRef down = b.total.space.faces[n][i].apply(up);
            induced.set(x, b.total.levels[n - 1].components(down).second[0]);
          }
        }
        const std::string where = "over " + base.space()->label(v) + ", d" + std::to_string(i);
        if (i > 0) {
          if (induced != SimplicialMap::identity(value)) fail(gate, where + " is not the identity");
          continue;
        }
        if (!tested.insert({o[1], o[0], comps[1].gen}).second) continue;
        const IsoCertificate cert = is_homology_iso(induced, up_to);
        if (!cert.iso) fail(gate, where + " fails at " + failure_text(cert));
      }
    }
  }
  return gate;
}

}  // namespace

bool GroupCompletionReport::passed() const {
  return std::all_of(gates.begin(), gates.end(), [](const Gate& g) { return g.passed; });
}

GroupCompletionReport group_completion_check(const Diagram& f, int top) {
  if (top < 1) throw RangeError("group completion needs truncation at least 1");
  const int up_to = top - 1;
  GroupCompletionReport report;
  report.max_dim = top;
  report.gates.push_back(hypothesis_gate(f, up_to));
  if (!report.gates.back().passed) return report;

  const BorelTotal b = borel_total(f, top);
  report.gates.push_back(levelwise_gate(b, top));
  report.gates.push_back(face_gate(f, b, top, up_to));

  Gate realization{"realization", true, {}};
  PreimageFunctor dpf(b.projection, top);
  const FibrationReport weak = weak_fibration_check(dpf, up_to);
  if (!weak.passed) {
    const PairCertificate& p = weak.pairs[*weak.first_failure];
    fail(realization, "weak check: " + p.operation + " " + p.source + " -> " + p.target +
                          " fails at " + failure_text(p.result));
  }
  const SimplicialCategory& c = f.category();
  for (int i = 0; i < c.object_count(); ++i) {
    KnownFiberSpec spec{object_vertex(b, i), f.value(i), "F(" + c.object(i) + ")",
                        [&b, i](const PreimageRecord& r) { return fiber_inclusion(b, i, r); }};
    const FibrationReport strong = strong_check_via_known_fiber(dpf, spec, up_to);
    if (!strong.passed) {
      const PairCertificate& p = strong.pairs[*strong.first_failure];
      fail(realization, "strong check for " + c.object(i) + ": " + p.operation + " " + p.source +
                            " -> " + p.target + " fails at " + failure_text(p.result));
    }
    if (!fiber_inclusion(b, i, dpf.at(nondegenerate(spec.vertex))).is_isomorphism()) {
      fail(realization, "preimage of " + c.object(i) + " is not F(" + c.object(i) + ")");
    }
  }
  report.gates.push_back(std::move(realization));

  const Homology total(*b.total_realized.space());
  const Homology base(*b.base_realized.space());
  const Homology& fiber = dpf.homology(nondegenerate(object_vertex(b, 0)));
  for (int k = 0; k <= up_to; ++k) {
    report.total_homology.push_back(total.group(k));
    report.base_homology.push_back(base.group(k));
    report.fiber_homology.push_back(fiber.group(k));
  }
  return report;
}

}  // namespace hofib
