#pragma once

#include <optional>
#include <vector>

#include "hofib/sparse_matrix.hpp"

namespace hofib {

struct SmithOptions {
  bool left = false;           // U
  bool left_inverse = false;   // U^-1
  bool right = false;          // V
  bool right_inverse = false;  // V^-1
};

/// U * M * V = D with D diagonal, d_1 | d_2 | ... and U, V unimodular.
/// Over Z/p every nonzero invariant is normalized to 1.
struct SmithForm {
  SparseMatrix diagonal;
  std::vector<Integer> invariants;  // nonzero diagonal entries, in order
  int rank = 0;
  std::optional<SparseMatrix> left;
  std::optional<SparseMatrix> left_inverse;
  std::optional<SparseMatrix> right;
  std::optional<SparseMatrix> right_inverse;
};

// Pivoting: smallest magnitude first, ties broken by (row, column) index.
SmithForm smith_normal_form(SparseMatrix m, const SmithOptions& options = {});

Integer inverse_mod(const Integer& a, int p);

}  // namespace hofib
