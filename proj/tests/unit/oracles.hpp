#pragma once

// Reference computations used as oracles in the suites.  They share no code
// with the library's reduction: dense matrices, textbook elimination.

#include <algorithm>
#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "hofib/simplicial_set.hpp"

namespace oracle {

using Int = boost::multiprecision::cpp_int;
using Dense = std::vector<std::vector<Int>>;

// Invariant factors (nonzero diagonal of the Smith form, as absolute values)
// by repeated gcd elimination on a copy of the matrix.
inline std::vector<Int> invariant_factors(Dense a) {
  const std::size_t rows = a.size();
  const std::size_t cols = rows ? a[0].size() : 0;
  std::vector<Int> out;
  std::size_t t = 0;
  while (t < rows && t < cols) {
    std::size_t pr = rows, pc = cols;
    Int best = 0;
    for (std::size_t r = t; r < rows; ++r) {
      for (std::size_t c = t; c < cols; ++c) {
        const Int v = abs(a[r][c]);
        if (v != 0 && (best == 0 || v < best)) {
          best = v;
          pr = r;
          pc = c;
        }
      }
    }
    if (best == 0) break;
    std::swap(a[t], a[pr]);
    for (auto& row : a) std::swap(row[t], row[pc]);
    bool clean = true;
    for (std::size_t r = t + 1; r < rows; ++r) {
      const Int q = a[r][t] / a[t][t];
      if (q != 0) {
        for (std::size_t c = t; c < cols; ++c) a[r][c] -= q * a[t][c];
      }
      if (a[r][t] != 0) clean = false;
    }
    for (std::size_t c = t + 1; c < cols; ++c) {
      const Int q = a[t][c] / a[t][t];
      if (q != 0) {
        for (std::size_t r = t; r < rows; ++r) a[r][c] -= q * a[r][t];
      }
      if (a[t][c] != 0) clean = false;
    }
    if (!clean) continue;
    // Divisibility: fold any entry not divisible by the pivot into row t.
    bool divisible = true;
    for (std::size_t r = t + 1; r < rows && divisible; ++r) {
      for (std::size_t c = t + 1; c < cols; ++c) {
        if (a[r][c] % a[t][t] != 0) {
          for (std::size_t k = t; k < cols; ++k) a[t][k] += a[r][k];
          divisible = false;
          break;
        }
      }
    }
    if (!divisible) continue;
    out.push_back(abs(a[t][t]));
    ++t;
  }
  return out;
}

inline std::size_t rank_mod(Dense a, long p) {
  const std::size_t rows = a.size();
  const std::size_t cols = rows ? a[0].size() : 0;
  for (auto& row : a) {
    for (auto& v : row) v = ((v % p) + p) % p;
  }
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t pivot = rank;
    while (pivot < rows && a[pivot][c] == 0) ++pivot;
    if (pivot == rows) continue;
    std::swap(a[pivot], a[rank]);
    Int inv = 1;
    for (long k = 1; k < p; ++k) {
      if ((a[rank][c] * k) % p == 1) inv = k;
    }
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == rank || a[r][c] == 0) continue;
      const Int f = (a[r][c] * inv) % p;
      for (std::size_t k = 0; k < cols; ++k) a[r][k] = ((a[r][k] - f * a[rank][k]) % p + p) % p;
    }
    ++rank;
  }
  return rank;
}

struct Group {
  long free_rank = 0;
  std::vector<Int> torsion;
};

// H_k from dense boundaries d[k] : C_k -> C_{k-1} (d[0] has zero rows),
// for k = 0..d.size()-2.
inline std::vector<Group> homology(const std::vector<Dense>& d, const std::vector<long>& dims) {
  std::vector<Group> out;
  std::vector<long> ranks;
  std::vector<std::vector<Int>> invariants;
  for (const auto& m : d) {
    invariants.push_back(m.empty() || m[0].empty() ? std::vector<Int>{} : invariant_factors(m));
    ranks.push_back(static_cast<long>(invariants.back().size()));
  }
  for (std::size_t k = 0; k + 1 < d.size(); ++k) {
    Group g;
    g.free_rank = dims[k] - ranks[k] - ranks[k + 1];
    for (const Int& v : invariants[k + 1]) {
      if (v > 1) g.torsion.push_back(v);
    }
    std::sort(g.torsion.begin(), g.torsion.end());
    out.push_back(std::move(g));
  }
  return out;
}

// Normalized chains of a simplicial set, read directly off the face lists.
inline std::vector<Dense> boundaries(const hofib::SimplicialSet& x, std::vector<long>& dims) {
  const int top = x.max_dim();
  dims.clear();
  for (int k = 0; k <= top; ++k) dims.push_back(static_cast<long>(x.count(k)));
  dims.push_back(0);
  std::vector<Dense> d;
  d.push_back(Dense(0, std::vector<Int>(dims[0])));
  for (int k = 1; k <= top + 1; ++k) {
    Dense m(dims[k - 1], std::vector<Int>(dims[k], 0));
    if (k <= top) {
      for (hofib::GenId g : x.generators(k)) {
        const auto faces = x.faces(g);
        for (int i = 0; i <= k; ++i) {
          if (faces[i].degenerate()) continue;
          m[faces[i].gen.index][g.index] += (i % 2 == 0) ? 1 : -1;
        }
      }
    }
    d.push_back(std::move(m));
  }
  return d;
}

inline std::vector<Group> homology_of(const hofib::SimplicialSet& x) {
  std::vector<long> dims;
  const auto d = boundaries(x, dims);
  auto h = homology(d, dims);
  h.resize(std::max(0, x.max_dim()));  // degrees valid below the truncation
  return h;
}

// Homology of the nerve of a finite monoid from the unnormalized bar
// complex with trivial coefficients: C_n = Z[M^n], d = sum (-1)^i d_i with
// d_0 dropping the first entry, d_i multiplying entries i and i+1, d_n
// dropping the last.  Degrees 0..top.
inline std::vector<Group> bar_homology(const std::vector<std::vector<int>>& table, int top) {
  const long m = static_cast<long>(table.size());
  auto power = [&](int n) {
    long p = 1;
    for (int k = 0; k < n; ++k) p *= m;
    return p;
  };
  auto decode = [&](long index, int n) {
    std::vector<int> t(n);
    for (int k = n - 1; k >= 0; --k) {
      t[k] = static_cast<int>(index % m);
      index /= m;
    }
    return t;
  };
  auto encode = [&](const std::vector<int>& t) {
    long index = 0;
    for (int v : t) index = index * m + v;
    return index;
  };
  std::vector<long> dims;
  for (int n = 0; n <= top + 1; ++n) dims.push_back(power(n));
  std::vector<Dense> d;
  d.push_back(Dense(0, std::vector<Int>(1)));
  for (int n = 1; n <= top + 1; ++n) {
    Dense mat(dims[n - 1], std::vector<Int>(dims[n], 0));
    for (long col = 0; col < dims[n]; ++col) {
      const auto t = decode(col, n);
      for (int i = 0; i <= n; ++i) {
        std::vector<int> f;
        if (i == 0) {
          f.assign(t.begin() + 1, t.end());
        } else if (i == n) {
          f.assign(t.begin(), t.end() - 1);
        } else {
          f = t;
          f[i - 1] = table[t[i - 1]][t[i]];
          f.erase(f.begin() + i);
        }
        mat[encode(f)][col] += (i % 2 == 0) ? 1 : -1;
      }
    }
    d.push_back(std::move(mat));
  }
  return homology(d, dims);
}

}  // namespace oracle
