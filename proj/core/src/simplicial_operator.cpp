#include "hofib/simplicial_operator.hpp"

#include <algorithm>
#include <bit>

#include "hofib/errors.hpp"

namespace hofib {

DegeneracyWord DegeneracyWord::normalize(std::span<const int> applied,
                                         int base_dim) {
  // s_{a_1} ... s_{a_k} x = x . sigma^{a_k} ... sigma^{a_1}; build the
  // composite surjection on [base_dim + k] by applying sigma^{a_1} first.
  const int top = base_dim + static_cast<int>(applied.size());
  OrderMap eta = identity_map(top);
  int current = top;
  for (int a : applied) {
    if (a < 0 || a >= current) {
      throw RangeError("degeneracy index s" + std::to_string(a) +
                       " out of range for dimension " +
                       std::to_string(current - 1));
    }
    for (int& v : eta) {
      if (v > a) --v;
    }
    --current;
  }
  return from_surjection(eta);
}

DegeneracyWord DegeneracyWord::from_surjection(std::span<const int> eta) {
  DegeneracyWord w;
  for (int j = static_cast<int>(eta.size()) - 2; j >= 0; --j) {
    if (eta[j] == eta[j + 1]) w.indices_.push_back(j);
  }
  return w;
}

DegeneracyWord DegeneracyWord::from_indices(std::vector<int> indices) {
  for (std::size_t k = 0; k < indices.size(); ++k) {
    if (indices[k] < 0 || (k > 0 && indices[k] >= indices[k - 1])) {
      throw RangeError("degeneracy word is not strictly decreasing");
    }
  }
  DegeneracyWord w;
  w.indices_ = std::move(indices);
  return w;
}

OrderMap DegeneracyWord::surjection(int base_dim) const {
  const int top = base_dim + static_cast<int>(indices_.size());
  OrderMap eta(top + 1, 0);
  for (int j = 0; j < top; ++j) {
    eta[j + 1] = eta[j] + (contains(j) ? 0 : 1);
  }
  return eta;
}

bool DegeneracyWord::contains(int i) const {
  return std::find(indices_.begin(), indices_.end(), i) != indices_.end();
}

std::string DegeneracyWord::to_string() const {
  std::string out;
  for (int i : indices_) {
    if (!out.empty()) out += ' ';
    out += 's' + std::to_string(i);
  }
  return out;
}

OrderMap identity_map(int n) {
  OrderMap m(n + 1);
  for (int k = 0; k <= n; ++k) m[k] = k;
  return m;
}

OrderMap coface(int n, int i) {
  OrderMap m;
  m.reserve(n);
  for (int k = 0; k <= n; ++k) {
    if (k != i) m.push_back(k);
  }
  return m;
}

OrderMap codegeneracy(int n, int i) {
  OrderMap m(n + 2);
  for (int k = 0; k <= n + 1; ++k) m[k] = k <= i ? k : k - 1;
  return m;
}

OrderMap compose(std::span<const int> outer, std::span<const int> inner) {
  OrderMap m(inner.size());
  for (std::size_t k = 0; k < inner.size(); ++k) m[k] = outer[inner[k]];
  return m;
}

bool is_order_preserving(std::span<const int> map, int codomain) {
  for (std::size_t k = 0; k < map.size(); ++k) {
    if (map[k] < 0 || map[k] > codomain) return false;
    if (k > 0 && map[k] < map[k - 1]) return false;
  }
  return true;
}

Factorization factor(std::span<const int> map) {
  Factorization f;
  f.surjection.reserve(map.size());
  for (std::size_t k = 0; k < map.size(); ++k) {
    if (k == 0 || map[k] != map[k - 1]) f.injection.push_back(map[k]);
    f.surjection.push_back(static_cast<int>(f.injection.size()) - 1);
  }
  return f;
}

OrderMap section(std::span<const int> surjection) {
  OrderMap s;
  for (std::size_t k = 0; k < surjection.size(); ++k) {
    if (k == 0 || surjection[k] != surjection[k - 1]) {
      s.push_back(static_cast<int>(k));
    }
  }
  return s;
}

std::vector<OrderMap> all_order_maps(int q, int n) {
  std::vector<OrderMap> out;
  OrderMap cur(q + 1, 0);
  while (true) {
    out.push_back(cur);
    int k = q;
    while (k >= 0 && cur[k] == n) --k;
    if (k < 0) break;
    const int v = cur[k] + 1;
    for (int j = k; j <= q; ++j) cur[j] = v;
  }
  return out;
}

VertexSet vertex_set_of(std::span<const int> values) {
  VertexSet s = 0;
  for (int v : values) s |= VertexSet{1} << v;
  return s;
}

std::vector<int> vertices_of(VertexSet s) {
  std::vector<int> out;
  for (int v = 0; v < 32; ++v) {
    if (s & (VertexSet{1} << v)) out.push_back(v);
  }
  return out;
}

int set_size(VertexSet s) { return std::popcount(s); }

VertexSet full_set(int n) {
  return n >= 31 ? ~VertexSet{0} : (VertexSet{1} << (n + 1)) - 1;
}

std::string set_label(VertexSet s) {
  std::string out = "{";
  bool first = true;
  for (int v : vertices_of(s)) {
    if (!first) out += ',';
    out += std::to_string(v);
    first = false;
  }
  return out + "}";
}

}  // namespace hofib
