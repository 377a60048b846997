#include "hofib/sparse_matrix.hpp"

#include <utility>

#include "hofib/errors.hpp"

namespace hofib {

Integer Coefficients::reduce(Integer v) const {
  if (modulus == 0) return v;
  v %= modulus;
  if (v < 0) v += modulus;
  return v;
}

std::string Coefficients::name() const {
  return modulus == 0 ? "Z" : "Z" + std::to_string(modulus);
}

Coefficients Coefficients::parse(const std::string& text) {
  if (text == "Z") return {};
  if (text.size() > 1 && text[0] == 'Z') {
    std::size_t used = 0;
    int p = 0;
    try {
      p = std::stoi(text.substr(1), &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == text.size() - 1 && p >= 2) {
      for (int d = 2; d * d <= p; ++d) {
        if (p % d == 0) throw PreconditionError("coefficient modulus must be prime");
      }
      return Coefficients{p};
    }
  }
  throw PreconditionError("unknown coefficients '" + text + "' (use Z, Z2, Z3, ...)");
}

SparseMatrix::SparseMatrix(int rows, int cols, Coefficients ring)
    : rows_(rows), cols_(cols), ring_(ring), rows_data_(rows), col_support_(cols) {}

SparseMatrix SparseMatrix::identity(int n, Coefficients ring) {
  SparseMatrix m(n, n, ring);
  for (int k = 0; k < n; ++k) m.set(k, k, 1);
  return m;
}

SparseMatrix SparseMatrix::from_dense(const std::vector<std::vector<Integer>>& dense,
                                      Coefficients ring) {
  const int r = static_cast<int>(dense.size());
  const int c = r == 0 ? 0 : static_cast<int>(dense[0].size());
  SparseMatrix m(r, c, ring);
  for (int i = 0; i < r; ++i) {
    for (int j = 0; j < c; ++j) m.set(i, j, dense[i][j]);
  }
  return m;
}

std::size_t SparseMatrix::nonzeros() const {
  std::size_t n = 0;
  for (const auto& r : rows_data_) n += r.size();
  return n;
}

Integer SparseMatrix::get(int r, int c) const {
  const auto& row = rows_data_[r];
  auto it = row.find(c);
  return it == row.end() ? Integer(0) : it->second;
}

void SparseMatrix::set(int r, int c, Integer v) {
  v = ring_.reduce(std::move(v));
  auto& row = rows_data_[r];
  if (v == 0) {
    if (row.erase(c)) col_support_[c].erase(r);
    return;
  }
  row[c] = std::move(v);
  col_support_[c].insert(r);
}

void SparseMatrix::add_to(int r, int c, const Integer& v) {
  if (v == 0) return;
  set(r, c, get(r, c) + v);
}

void SparseMatrix::add_row_multiple(int dst, int src, const Integer& q) {
  if (q == 0 || dst == src) return;
  const Row source = rows_data_[src];
  for (const auto& [c, v] : source) add_to(dst, c, q * v);
}

void SparseMatrix::add_col_multiple(int dst, int src, const Integer& q) {
  if (q == 0 || dst == src) return;
  const std::set<int> support = col_support_[src];
  for (int r : support) add_to(r, dst, q * rows_data_[r].at(src));
}

void SparseMatrix::swap_rows(int a, int b) {
  if (a == b) return;
  for (const auto& [c, v] : rows_data_[a]) col_support_[c].erase(a);
  for (const auto& [c, v] : rows_data_[b]) col_support_[c].erase(b);
  std::swap(rows_data_[a], rows_data_[b]);
  for (const auto& [c, v] : rows_data_[a]) col_support_[c].insert(a);
  for (const auto& [c, v] : rows_data_[b]) col_support_[c].insert(b);
}

void SparseMatrix::swap_cols(int a, int b) {
  if (a == b) return;
  std::set<int> touched = col_support_[a];
  touched.insert(col_support_[b].begin(), col_support_[b].end());
  for (int r : touched) {
    auto& row = rows_data_[r];
    auto ia = row.find(a);
    auto ib = row.find(b);
    Integer va = ia == row.end() ? Integer(0) : ia->second;
    Integer vb = ib == row.end() ? Integer(0) : ib->second;
    row.erase(a);
    row.erase(b);
    if (vb != 0) row[a] = std::move(vb);
    if (va != 0) row[b] = std::move(va);
  }
  std::swap(col_support_[a], col_support_[b]);
}

void SparseMatrix::scale_row(int r, const Integer& unit) {
  Row& row = rows_data_[r];
  for (auto it = row.begin(); it != row.end();) {
    it->second = ring_.reduce(it->second * unit);
    if (it->second == 0) {
      col_support_[it->first].erase(r);
      it = row.erase(it);
    } else {
      ++it;
    }
  }
}

void SparseMatrix::scale_col(int c, const Integer& unit) {
  const std::set<int> support = col_support_[c];
  for (int r : support) set(r, c, rows_data_[r].at(c) * unit);
}

SparseMatrix SparseMatrix::transpose() const {
  SparseMatrix t(cols_, rows_, ring_);
  for (int r = 0; r < rows_; ++r) {
    for (const auto& [c, v] : rows_data_[r]) t.set(c, r, v);
  }
  return t;
}

SparseMatrix SparseMatrix::operator*(const SparseMatrix& rhs) const {
  if (cols_ != rhs.rows_) throw PreconditionError("matrix shape mismatch");
  SparseMatrix out(rows_, rhs.cols_, ring_);
  for (int r = 0; r < rows_; ++r) {
    std::map<int, Integer> acc;
    for (const auto& [k, v] : rows_data_[r]) {
      for (const auto& [c, w] : rhs.rows_data_[k]) acc[c] += v * w;
    }
    for (auto& [c, v] : acc) out.set(r, c, std::move(v));
  }
  return out;
}

bool SparseMatrix::operator==(const SparseMatrix& rhs) const {
  return rows_ == rhs.rows_ && cols_ == rhs.cols_ && rows_data_ == rhs.rows_data_;
}

bool SparseMatrix::is_zero() const {
  for (const auto& r : rows_data_) {
    if (!r.empty()) return false;
  }
  return true;
}

std::vector<std::vector<Integer>> SparseMatrix::to_dense() const {
  std::vector<std::vector<Integer>> d(rows_, std::vector<Integer>(cols_, 0));
  for (int r = 0; r < rows_; ++r) {
    for (const auto& [c, v] : rows_data_[r]) d[r][c] = v;
  }
  return d;
}

}  // namespace hofib
