#include "hofib/smith.hpp"

#include <boost/multiprecision/integer.hpp>

#include "hofib/errors.hpp"

namespace hofib {

Integer inverse_mod(const Integer& a, int p) {
  Integer r = a % p;
  if (r < 0) r += p;
  if (r == 0) throw PreconditionError("zero has no inverse");
  return boost::multiprecision::powm(r, Integer(p - 2), Integer(p));
}

namespace {

class Reducer {
 public:
  Reducer(SparseMatrix m, const SmithOptions& o) : m_(std::move(m)), ring_(m_.ring()) {
    if (o.left) u_ = SparseMatrix::identity(m_.rows(), ring_);
    if (o.left_inverse) u_inv_ = SparseMatrix::identity(m_.rows(), ring_);
    if (o.right) v_ = SparseMatrix::identity(m_.cols(), ring_);
    if (o.right_inverse) v_inv_ = SparseMatrix::identity(m_.cols(), ring_);
  }

  SmithForm run() {
    SmithForm out;
    const int limit = std::min(m_.rows(), m_.cols());
    for (int t = 0; t < limit; ++t) {
      auto pivot = find_pivot(t);
      if (!pivot) break;
      row_swap(t, pivot->first);
      col_swap(t, pivot->second);
      eliminate(t);
      normalize(t);
      out.invariants.push_back(m_.get(t, t));
    }
    out.rank = static_cast<int>(out.invariants.size());
    out.diagonal = std::move(m_);
    out.left = std::move(u_);
    out.left_inverse = std::move(u_inv_);
    out.right = std::move(v_);
    out.right_inverse = std::move(v_inv_);
    return out;
  }

 private:
  Integer magnitude(const Integer& v) const {
    if (!ring_.is_integral()) return 1;
    return v < 0 ? Integer(-v) : v;
  }

  Integer quotient(const Integer& a, const Integer& b) const {
    if (ring_.is_integral()) return a / b;
    return ring_.reduce(a * inverse_mod(b, ring_.modulus));
  }

  std::optional<std::pair<int, int>> find_pivot(int t) const {
    std::optional<std::pair<int, int>> best;
    Integer best_mag;
    for (int r = t; r < m_.rows(); ++r) {
      const auto& row = m_.row(r);
      for (auto it = row.lower_bound(t); it != row.end(); ++it) {
        Integer mag = magnitude(it->second);
        if (!best || mag < best_mag) {
          best = {r, it->first};
          best_mag = std::move(mag);
          if (best_mag == 1) return best;
        }
      }
    }
    return best;
  }

  void eliminate(int t) {
    while (true) {
      bool clean = true;
      const Integer p = m_.get(t, t);
      const std::set<int> rows = m_.column_support(t);
      for (int r : rows) {
        if (r == t) continue;
        row_add(r, t, -quotient(m_.get(r, t), p));
        if (m_.get(r, t) != 0) clean = false;
      }
      std::vector<int> cols;
      for (const auto& [c, v] : m_.row(t)) {
        if (c != t) cols.push_back(c);
      }
      for (int c : cols) {
        col_add(c, t, -quotient(m_.get(t, c), p));
        if (m_.get(t, c) != 0) clean = false;
      }
      if (!clean) {
        move_smallest_to_pivot(t);
        continue;
      }
      if (ring_.is_integral() && magnitude(p) != 1 && fix_divisibility(t, p)) {
        continue;
      }
      return;
    }
  }

  void move_smallest_to_pivot(int t) {
    std::pair<int, int> best{t, t};
    Integer best_mag = magnitude(m_.get(t, t));
    for (int r : m_.column_support(t)) {
      Integer mag = magnitude(m_.get(r, t));
      if (mag < best_mag) {
        best = {r, t};
        best_mag = mag;
      }
    }
    for (const auto& [c, v] : m_.row(t)) {
      Integer mag = magnitude(v);
      if (mag < best_mag) {
        best = {t, c};
        best_mag = mag;
      }
    }
    row_swap(t, best.first);
    col_swap(t, best.second);
  }

  // Adds a row holding an entry not divisible by the pivot into row t.
  bool fix_divisibility(int t, const Integer& p) {
    for (int r = t + 1; r < m_.rows(); ++r) {
      for (const auto& [c, v] : m_.row(r)) {
        if (c > t && v % p != 0) {
          row_add(t, r, 1);
          return true;
        }
      }
    }
    return false;
  }

  void normalize(int t) {
    const Integer p = m_.get(t, t);
    if (ring_.is_integral()) {
      if (p < 0) row_scale(t, -1, -1);
    } else if (p != 1) {
      row_scale(t, inverse_mod(p, ring_.modulus), p);
    }
  }

  void row_add(int dst, int src, const Integer& q) {
    if (q == 0) return;
    m_.add_row_multiple(dst, src, q);
    if (u_) u_->add_row_multiple(dst, src, q);
    if (u_inv_) u_inv_->add_col_multiple(src, dst, -q);
  }
  void col_add(int dst, int src, const Integer& q) {
    if (q == 0) return;
    m_.add_col_multiple(dst, src, q);
    if (v_) v_->add_col_multiple(dst, src, q);
    if (v_inv_) v_inv_->add_row_multiple(src, dst, -q);
  }
  void row_swap(int a, int b) {
    if (a == b) return;
    m_.swap_rows(a, b);
    if (u_) u_->swap_rows(a, b);
    if (u_inv_) u_inv_->swap_cols(a, b);
  }
  void col_swap(int a, int b) {
    if (a == b) return;
    m_.swap_cols(a, b);
    if (v_) v_->swap_cols(a, b);
    if (v_inv_) v_inv_->swap_rows(a, b);
  }
  void row_scale(int r, const Integer& unit, const Integer& inverse) {
    m_.scale_row(r, unit);
    if (u_) u_->scale_row(r, unit);
    if (u_inv_) u_inv_->scale_col(r, inverse);
  }

  SparseMatrix m_;
  Coefficients ring_;
  std::optional<SparseMatrix> u_, u_inv_, v_, v_inv_;
};

}  // namespace

SmithForm smith_normal_form(SparseMatrix m, const SmithOptions& options) {
  return Reducer(std::move(m), options).run();
}

}  // namespace hofib
