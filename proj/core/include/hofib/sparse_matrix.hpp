#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace hofib {

using Integer = boost::multiprecision::cpp_int;

// Coefficient ring: the integers (modulus 0) or Z/p for a prime p.
struct Coefficients {
  int modulus = 0;

  bool is_integral() const { return modulus == 0; }
  Integer reduce(Integer v) const;
  std::string name() const;  // "Z", "Z2", ...
  static Coefficients parse(const std::string& text);

  bool operator==(const Coefficients&) const = default;
};

/// Sparse matrix over Z or Z/p, stored by rows with a column support index
/// so that both row and column operations stay proportional to the touched
/// entries.
class SparseMatrix {
 public:
  using Row = std::map<int, Integer>;

  SparseMatrix() = default;
  SparseMatrix(int rows, int cols, Coefficients ring = {});
  static SparseMatrix identity(int n, Coefficients ring = {});
  static SparseMatrix from_dense(const std::vector<std::vector<Integer>>& dense,
                                 Coefficients ring = {});

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  const Coefficients& ring() const { return ring_; }
  std::size_t nonzeros() const;

  Integer get(int r, int c) const;
  void set(int r, int c, Integer v);
  void add_to(int r, int c, const Integer& v);

  const Row& row(int r) const { return rows_data_[r]; }
  const std::set<int>& column_support(int c) const { return col_support_[c]; }

  // row dst += q * row src
  void add_row_multiple(int dst, int src, const Integer& q);
  // col dst += q * col src
  void add_col_multiple(int dst, int src, const Integer& q);
  void swap_rows(int a, int b);
  void swap_cols(int a, int b);
  void scale_row(int r, const Integer& unit);
  void scale_col(int c, const Integer& unit);

  SparseMatrix transpose() const;
  SparseMatrix operator*(const SparseMatrix& rhs) const;
  bool operator==(const SparseMatrix& rhs) const;
  bool is_zero() const;

  std::vector<std::vector<Integer>> to_dense() const;

 private:
  int rows_ = 0;
  int cols_ = 0;
  Coefficients ring_;
  std::vector<Row> rows_data_;
  std::vector<std::set<int>> col_support_;
};

}  // namespace hofib
