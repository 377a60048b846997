#include "hofib/simplicial_set.hpp"

#include <algorithm>

#include "hofib/errors.hpp"

namespace hofib {

std::size_t SimplexRefHash::operator()(const SimplexRef& r) const noexcept {
  std::size_t h = std::hash<int>{}(r.gen.dim) * 1000003u ^
                  std::hash<int>{}(r.gen.index);
  for (int i : r.word.indices()) h = h * 31u + static_cast<std::size_t>(i) + 7u;
  return h;
}

SimplexRef nondegenerate(GenId g) { return SimplexRef{g, {}}; }

SimplicialSet::SimplicialSet(int max_dim) : max_dim_(max_dim) {
  if (max_dim < 0) throw RangeError("negative truncation bound");
  levels_.resize(static_cast<std::size_t>(max_dim) + 1);
}

GenId SimplicialSet::add(std::string label, std::vector<SimplexRef> faces) {
  const int dim = faces.empty() ? 0 : static_cast<int>(faces.size()) - 1;
  if (faces.size() == 1) {
    throw PreconditionError("generator '" + label +
                            "' has a single face; vertices take none");
  }
  if (dim > max_dim_) {
    throw RangeError("generator '" + label + "' of dimension " +
                     std::to_string(dim) + " exceeds truncation bound " +
                     std::to_string(max_dim_));
  }
  for (const auto& f : faces) {
    if (f.dim() != dim - 1 || !contains(f.gen)) {
      throw PreconditionError("generator '" + label +
                              "' has a face that is not an existing (" +
                              std::to_string(dim - 1) + ")-simplex");
    }
  }
  if (by_label_.count(label) != 0) {
    throw PreconditionError("duplicate generator label '" + label + "'");
  }
  auto& level = levels_[dim];
  GenId id{dim, static_cast<int>(level.size())};
  by_label_.emplace(label, id);
  level.push_back(Generator{std::move(label), std::move(faces)});
  return id;
}

int SimplicialSet::top_dim() const {
  for (int d = max_dim_; d >= 0; --d) {
    if (!levels_[d].empty()) return d;
  }
  return -1;
}

bool SimplicialSet::empty() const { return by_label_.empty(); }

std::size_t SimplicialSet::count(int dim) const {
  if (dim < 0 || dim > max_dim_) return 0;
  return levels_[dim].size();
}

std::vector<std::size_t> SimplicialSet::counts() const {
  std::vector<std::size_t> out;
  const int top = top_dim();
  for (int d = 0; d <= top; ++d) out.push_back(levels_[d].size());
  return out;
}

std::size_t SimplicialSet::size() const { return by_label_.size(); }

std::vector<GenId> SimplicialSet::generators(int dim) const {
  std::vector<GenId> out;
  for (std::size_t k = 0; k < count(dim); ++k) {
    out.push_back(GenId{dim, static_cast<int>(k)});
  }
  return out;
}

bool SimplicialSet::contains(GenId g) const {
  return g.dim >= 0 && g.dim <= max_dim_ && g.index >= 0 &&
         static_cast<std::size_t>(g.index) < levels_[g.dim].size();
}

const SimplicialSet::Generator& SimplicialSet::generator(GenId g) const {
  if (!contains(g)) throw RangeError("unknown generator");
  return levels_[g.dim][g.index];
}

const std::string& SimplicialSet::label(GenId g) const {
  return generator(g).label;
}

std::span<const SimplexRef> SimplicialSet::faces(GenId g) const {
  return generator(g).faces;
}

std::optional<GenId> SimplicialSet::find(std::string_view label) const {
  auto it = by_label_.find(std::string(label));
  if (it == by_label_.end()) return std::nullopt;
  return it->second;
}

SimplexRef SimplicialSet::face_along(GenId g,
                                     std::span<const int> injection) const {
  const int m = g.dim;
  if (static_cast<int>(injection.size()) == m + 1) return nondegenerate(g);
  // Drop the smallest missing vertex j: x . delta = (d_j x) . delta'.
  int j = 0;
  while (j < static_cast<int>(injection.size()) && injection[j] == j) ++j;
  const SimplexRef& f = generator(g).faces[j];
  OrderMap reduced(injection.begin(), injection.end());
  for (int& v : reduced) {
    if (v > j) --v;
  }
  return apply(f, reduced);
}

SimplexRef SimplicialSet::apply(const SimplexRef& x,
                                std::span<const int> theta) const {
  const int n = x.dim();
  if (theta.empty() || !is_order_preserving(theta, n)) {
    throw RangeError("simplicial operator does not map into [" +
                     std::to_string(n) + "]");
  }
  const OrderMap eta = x.word.surjection(x.gen.dim);
  const OrderMap rho = compose(eta, theta);
  const Factorization fac = factor(rho);
  const SimplexRef y = face_along(x.gen, fac.injection);
  if (!y.degenerate() && fac.surjection.size() == fac.injection.size()) {
    return y;
  }
  const OrderMap eta_y = y.word.surjection(y.gen.dim);
  return SimplexRef{y.gen,
                    DegeneracyWord::from_surjection(compose(eta_y, fac.surjection))};
}

SimplexRef SimplicialSet::face(const SimplexRef& x, int i) const {
  const int n = x.dim();
  if (n == 0 || i < 0 || i > n) {
    throw RangeError("face d" + std::to_string(i) + " out of range for a " +
                     std::to_string(n) + "-simplex");
  }
  return apply(x, coface(n, i));
}

SimplexRef SimplicialSet::degeneracy(const SimplexRef& x, int i) const {
  const int n = x.dim();
  if (i < 0 || i > n) {
    throw RangeError("degeneracy s" + std::to_string(i) +
                     " out of range for a " + std::to_string(n) + "-simplex");
  }
  return apply(x, codegeneracy(n, i));
}

std::vector<SimplexRef> SimplicialSet::vertices(const SimplexRef& x) const {
  std::vector<SimplexRef> out;
  for (int v = 0; v <= x.dim(); ++v) out.push_back(apply(x, OrderMap{v}));
  return out;
}

long long SimplicialSet::euler_characteristic() const {
  long long chi = 0;
  for (int d = 0; d <= max_dim_; ++d) {
    chi += (d % 2 == 0 ? 1 : -1) * static_cast<long long>(levels_[d].size());
  }
  return chi;
}

std::string SimplicialSet::describe(const SimplexRef& x) const {
  const std::string& l = label(x.gen);
  if (!x.degenerate()) return l;
  return x.word.to_string() + " " + l;
}

std::vector<Diagnostic> validate(const SimplicialSet& x) {
  std::vector<Diagnostic> out;
  bool dangling = false;
  for (int d = 1; d <= x.max_dim(); ++d) {
    for (GenId g : x.generators(d)) {
      const auto faces = x.faces(g);
      if (static_cast<int>(faces.size()) != d + 1) {
        out.push_back({g, "expected " + std::to_string(d + 1) + " faces"});
        dangling = true;
        continue;
      }
      for (std::size_t i = 0; i < faces.size(); ++i) {
        if (!x.contains(faces[i].gen) || faces[i].dim() != d - 1) {
          out.push_back({g, "face d" + std::to_string(i) +
                                " is dangling or of wrong dimension"});
          dangling = true;
        }
      }
    }
  }
  if (dangling) return out;
  for (int d = 2; d <= x.max_dim(); ++d) {
    for (GenId g : x.generators(d)) {
      const auto faces = x.faces(g);
      for (int j = 1; j <= d; ++j) {
        for (int i = 0; i < j; ++i) {
          const SimplexRef lhs = x.face(faces[j], i);
          const SimplexRef rhs = x.face(faces[i], j - 1);
          if (lhs != rhs) {
            out.push_back({g, "d" + std::to_string(i) + " d" +
                                  std::to_string(j) + " = " +
                                  x.describe(lhs) + " but d" +
                                  std::to_string(j - 1) + " d" +
                                  std::to_string(i) + " = " +
                                  x.describe(rhs)});
          }
        }
      }
    }
  }
  return out;
}

}  // namespace hofib
