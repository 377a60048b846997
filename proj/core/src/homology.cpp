#include "hofib/homology.hpp"

#include <algorithm>
#include <numeric>

#include "hofib/errors.hpp"
#include "hofib/smith.hpp"

namespace hofib {

int ChainComplex::rank(int k) const {
  if (k < 0 || k >= static_cast<int>(basis.size())) return 0;
  return static_cast<int>(basis[k].size());
}

ChainComplex normalized_chains(const SimplicialSet& x, Coefficients ring) {
  ChainComplex c;
  c.ring = ring;
  c.max_dim = x.max_dim();
  const int degrees = x.max_dim() + 2;
  c.basis.resize(degrees);
  c.position.resize(degrees);
  for (int k = 0; k <= x.max_dim(); ++k) {
    auto gens = x.generators(k);
    std::sort(gens.begin(), gens.end(),
              [&](GenId a, GenId b) { return x.label(a) < x.label(b); });
    c.position[k].assign(gens.size(), -1);
    for (std::size_t s = 0; s < gens.size(); ++s) c.position[k][gens[s].index] = static_cast<int>(s);
    c.basis[k] = std::move(gens);
  }
  c.boundary.reserve(degrees);
  c.boundary.emplace_back(0, c.rank(0), ring);
  for (int k = 1; k < degrees; ++k) {
    SparseMatrix d(c.rank(k - 1), c.rank(k), ring);
    for (int j = 0; j < c.rank(k); ++j) {
      const auto faces = x.faces(c.basis[k][j]);
      for (int i = 0; i <= k; ++i) {
        const SimplexRef& f = faces[i];
        if (f.degenerate()) continue;
        d.add_to(c.slot(f.gen), j, i % 2 == 0 ? 1 : -1);
      }
    }
    c.boundary.push_back(std::move(d));
  }
  return c;
}

Chain multiply(const SparseMatrix& m, const Chain& v) {
  std::map<int, Integer> acc;
  for (const auto& [j, coeff] : v) {
    for (int r : m.column_support(j)) acc[r] += m.get(r, j) * coeff;
  }
  Chain out;
  for (auto& [r, value] : acc) {
    Integer reduced = m.ring().reduce(std::move(value));
    if (reduced != 0) out.emplace(r, std::move(reduced));
  }
  return out;
}

Chain boundary_of(const ChainComplex& c, int k, const Chain& v) {
  if (k <= 0 || k >= static_cast<int>(c.boundary.size())) return {};
  return multiply(c.boundary[k], v);
}

SparseMatrix chain_map(const SimplicialMap& f, const ChainComplex& source,
                       const ChainComplex& target, int k) {
  SparseMatrix m(target.rank(k), source.rank(k), source.ring);
  for (int j = 0; j < source.rank(k); ++j) {
    const SimplexRef& image = f(source.basis[k][j]);
    if (!image.degenerate()) m.set(target.slot(image.gen), j, 1);
  }
  return m;
}

Integer HomologyGroup::order(std::size_t i) const {
  return i < torsion.size() ? torsion[i] : Integer(0);
}

std::string HomologyGroup::to_string() const {
  if (trivial()) return "0";
  std::vector<std::string> parts;
  const std::string base = ring.is_integral() ? "Z" : ring.name();
  if (free_rank == 1) parts.push_back(base);
  if (free_rank > 1) parts.push_back(base + "^" + std::to_string(free_rank));
  for (const auto& t : torsion) parts.push_back("Z/" + t.str());
  std::string out = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) out += " + " + parts[i];
  return out;
}

Homology::Homology(const SimplicialSet& x, Coefficients ring)
    : chains_(normalized_chains(x, ring)) {}

const HomologyGroup& Homology::group(int k) const { return degree(k).group; }

const Homology::Degree& Homology::degree(int k) const {
  if (k < 0) throw RangeError("homology degree must be nonnegative");
  if (auto it = cache_.find(k); it != cache_.end()) return *it->second;

  auto d = std::make_shared<Degree>();
  d->group.degree = k;
  d->group.ring = chains_.ring;
  d->group.valid = k <= valid_up_to();
  const int top = static_cast<int>(chains_.boundary.size()) - 1;
  if (k >= top) {
    d->kernel_inverse = SparseMatrix(0, 0, chains_.ring);
    d->reduce = SparseMatrix(0, 0, chains_.ring);
    return *cache_.emplace(k, d).first->second;
  }

  const int n = chains_.rank(k);
  SmithOptions a_opts;
  a_opts.right = true;
  a_opts.right_inverse = true;
  SmithForm a = smith_normal_form(chains_.boundary[k], a_opts);
  const int ra = a.rank;
  const int m = n - ra;

  // Kernel coordinates: rows ra.. of V^-1.
  SparseMatrix kernel(m, n, chains_.ring);
  for (int r = 0; r < m; ++r) {
    for (const auto& [c, v] : a.right_inverse->row(ra + r)) kernel.set(r, c, v);
  }
  SmithOptions c_opts;
  c_opts.left = true;
  c_opts.left_inverse = true;
  SmithForm cf = smith_normal_form(kernel * chains_.boundary[k + 1], c_opts);

  const SparseMatrix& v = *a.right;
  const SparseMatrix& u_inv = *cf.left_inverse;
  auto generator = [&](int i) {
    std::map<int, Integer> acc;
    for (int l : u_inv.column_support(i)) {
      const Integer w = u_inv.get(l, i);
      for (int j : v.column_support(ra + l)) acc[j] += v.get(j, ra + l) * w;
    }
    Chain out;
    for (auto& [j, value] : acc) {
      Integer reduced = chains_.ring.reduce(std::move(value));
      if (reduced != 0) out.emplace(j, std::move(reduced));
    }
    return out;
  };

  for (int i = 0; i < cf.rank; ++i) {
    if (cf.invariants[i] == 1) continue;
    d->group.torsion.push_back(cf.invariants[i]);
    d->group.basis.push_back(generator(i));
  }
  for (int i = cf.rank; i < m; ++i) d->group.basis.push_back(generator(i));
  d->group.free_rank = m - cf.rank;

  d->boundary_rank = ra;
  d->kernel_inverse = std::move(*a.right_inverse);
  d->reduce = std::move(*cf.left);
  d->invariants = std::move(cf.invariants);
  return *cache_.emplace(k, d).first->second;
}

std::vector<Integer> Homology::coordinates(int k, const Chain& cycle) const {
  const Degree& d = degree(k);
  if (d.group.basis.empty()) {
    if (!boundary_of(chains_, k, cycle).empty()) throw PreconditionError("chain is not a cycle");
    return {};
  }
  Chain y = multiply(d.kernel_inverse, cycle);
  Chain w;
  for (const auto& [r, value] : y) {
    if (r < d.boundary_rank) throw PreconditionError("chain is not a cycle");
    w.emplace(r - d.boundary_rank, value);
  }
  Chain z = multiply(d.reduce, w);
  auto at = [&](int i) {
    auto it = z.find(i);
    return it == z.end() ? Integer(0) : it->second;
  };

  std::vector<Integer> out;
  const int rank = static_cast<int>(d.invariants.size());
  for (int i = 0; i < rank; ++i) {
    const Integer& order = d.invariants[i];
    if (order == 1) continue;
    Integer value = at(i) % order;
    if (value < 0) value += order;
    out.push_back(std::move(value));
  }
  for (int i = rank; i < d.reduce.rows(); ++i) out.push_back(at(i));
  return out;
}

HomologyGroup homology(const SimplicialSet& x, int k, Coefficients ring) {
  return Homology(x, ring).group(k);
}

InducedMap induced(const SimplicialMap& f, int k, const Homology& source,
                   const Homology& target) {
  if (source.chains().rank(k) != static_cast<int>(f.source()->count(k)) ||
      target.chains().rank(k) != static_cast<int>(f.target()->count(k))) {
    throw PreconditionError("homology data does not match the map");
  }
  const HomologyGroup& g = source.group(k);
  const HomologyGroup& h = target.group(k);
  InducedMap out;
  out.degree = k;
  for (std::size_t i = 0; i < g.basis.size(); ++i) out.source_orders.push_back(g.order(i));
  for (std::size_t i = 0; i < h.basis.size(); ++i) out.target_orders.push_back(h.order(i));
  out.matrix.assign(h.basis.size(), std::vector<Integer>(g.basis.size(), 0));
  if (g.basis.empty() || h.basis.empty()) return out;

  const SparseMatrix fk = chain_map(f, source.chains(), target.chains(), k);
  for (std::size_t col = 0; col < g.basis.size(); ++col) {
    const auto coords = target.coordinates(k, multiply(fk, g.basis[col]));
    for (std::size_t row = 0; row < coords.size(); ++row) out.matrix[row][col] = coords[row];
  }
  return out;
}

InducedMap induced(const SimplicialMap& f, int k, Coefficients ring) {
  return induced(f, k, Homology(*f.source(), ring), Homology(*f.target(), ring));
}

IsoDegree classify_induced(const InducedMap& m, const HomologyGroup& source,
                           const HomologyGroup& target, const Coefficients& ring) {
  IsoDegree out;
  out.degree = m.degree;
  out.source = source.to_string();
  out.target = target.to_string();

  // Cokernel presentation [M | diag(orders of torsion rows)].
  const int rows = static_cast<int>(m.target_orders.size());
  const int cols = static_cast<int>(m.source_orders.size());
  SparseMatrix p(rows, cols + rows, ring);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) p.set(r, c, m.matrix[r][c]);
    if (m.target_orders[r] != 0) p.set(r, cols + r, m.target_orders[r]);
  }
  SmithForm s = smith_normal_form(std::move(p));
  HomologyGroup cokernel;
  cokernel.ring = ring;
  cokernel.free_rank = rows - s.rank;
  for (const auto& d : s.invariants) {
    if (d != 1) cokernel.torsion.push_back(d);
  }
  if (!cokernel.trivial()) {
    out.reason = "cokernel " + cokernel.to_string();
    return out;
  }
  if (source.free_rank != target.free_rank || source.torsion != target.torsion) {
    out.reason = "nontrivial kernel";
    return out;
  }
  out.iso = true;
  return out;
}

IsoCertificate is_homology_iso(const SimplicialMap& f, int up_to, const Homology& source,
                               const Homology& target) {
  IsoCertificate cert;
  cert.up_to = up_to;
  for (int k = 0; k <= up_to; ++k) {
    const InducedMap m = induced(f, k, source, target);
    IsoDegree d = classify_induced(m, source.group(k), target.group(k), source.ring());
    if (!d.iso && !cert.first_failure) cert.first_failure = k;
    cert.iso = cert.iso && d.iso;
    cert.degrees.push_back(std::move(d));
  }
  return cert;
}

IsoCertificate is_homology_iso(const SimplicialMap& f, int up_to, Coefficients ring) {
  return is_homology_iso(f, up_to, Homology(*f.source(), ring), Homology(*f.target(), ring));
}

bool is_acyclic(const SimplicialSet& x, int up_to, Coefficients ring) {
  if (x.empty()) return false;
  Homology h(x, ring);
  for (int k = 0; k <= up_to; ++k) {
    const HomologyGroup& g = h.group(k);
    if (k == 0 ? (g.free_rank != 1 || !g.torsion.empty()) : !g.trivial()) return false;
  }
  return true;
}

IsoCertificate OrdinaryHomologyChecker::check(const SimplicialMap& f, int up_to) const {
  return is_homology_iso(f, up_to, ring_);
}

}  // namespace hofib
