#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace hofib {

// An order-preserving map [q] -> [n], stored as its value sequence
// (values[k] is the image of k).  The codomain is implicit and passed
// where it matters.
using OrderMap = std::vector<int>;

// A nonempty subset of {0, ..., 31}, used for faces of standard simplices.
using VertexSet = std::uint32_t;

/// Degeneracy word in Eilenberg-Zilber normal form: s_{i_1} ... s_{i_k}
/// with i_1 > i_2 > ... > i_k.  Equivalently the set of positions j of the
/// associated surjection eta with eta(j) == eta(j + 1).
class DegeneracyWord {
 public:
  DegeneracyWord() = default;

  // Normalizes an arbitrary application sequence s_{a_1} s_{a_2} ... s_{a_k}
  // (leftmost applied last) applied to a simplex of dimension `base_dim`.
  static DegeneracyWord normalize(std::span<const int> applied, int base_dim);
  static DegeneracyWord from_surjection(std::span<const int> eta);
  // Takes the index set directly; throws unless strictly decreasing.
  static DegeneracyWord from_indices(std::vector<int> indices);

  // Surjection [base_dim + length] -> [base_dim].
  OrderMap surjection(int base_dim) const;

  const std::vector<int>& indices() const { return indices_; }
  std::size_t length() const { return indices_.size(); }
  bool empty() const { return indices_.empty(); }
  bool contains(int i) const;

  std::string to_string() const;  // "s1 s0", empty for the identity

  auto operator<=>(const DegeneracyWord&) const = default;

 private:
  std::vector<int> indices_;  // strictly decreasing
};

OrderMap identity_map(int n);
OrderMap coface(int n, int i);      // delta^i : [n-1] -> [n], skips i
OrderMap codegeneracy(int n, int i);  // sigma^i : [n+1] -> [n], hits i twice

// (outer o inner)(k) = outer[inner[k]]
OrderMap compose(std::span<const int> outer, std::span<const int> inner);

bool is_order_preserving(std::span<const int> map, int codomain);

struct Factorization {
  OrderMap surjection;  // [q] -> [l]
  OrderMap injection;   // [l] -> [n], strictly increasing
};
// Unique epi-mono factorization of an order-preserving map.
Factorization factor(std::span<const int> map);

// First-preimage section of a surjection.
OrderMap section(std::span<const int> surjection);

// Enumerate all order-preserving maps [q] -> [n].
std::vector<OrderMap> all_order_maps(int q, int n);

VertexSet vertex_set_of(std::span<const int> values);
std::vector<int> vertices_of(VertexSet s);
int set_size(VertexSet s);
VertexSet full_set(int n);  // {0..n}
std::string set_label(VertexSet s);  // "{0,2}"

}  // namespace hofib
