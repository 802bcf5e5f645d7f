#pragma once

#include <cstddef>
#include <utility>

namespace tmcf {

/// 2x2 matrix over a commutative ring, row-major.
template <class Ring>
struct Mat2 {
  Ring m00;
  Ring m01;
  Ring m10;
  Ring m11;

  static Mat2 identity() { return {Ring::one(), Ring::zero(), Ring::zero(), Ring::one()}; }
  Ring det() const { return m00 * m11 + m01 * m10; }
  bool is_symmetric() const { return m01 == m10; }
  friend bool operator==(const Mat2&, const Mat2&) = default;
};

template <class Ring>
Mat2<Ring> operator*(const Mat2<Ring>& x, const Mat2<Ring>& y) {
  return {x.m00 * y.m00 + x.m01 * y.m10, x.m00 * y.m01 + x.m01 * y.m11,
          x.m10 * y.m00 + x.m11 * y.m10, x.m10 * y.m01 + x.m11 * y.m11};
}

/// Product leaf(lo) * leaf(lo+1) * ... * leaf(hi-1) over a balanced tree, so
/// that operand sizes stay matched. Equal to the left fold by associativity.
template <class Ring, class Leaf>
Mat2<Ring> product_tree(std::size_t lo, std::size_t hi, const Leaf& leaf) {
  if (hi <= lo) return Mat2<Ring>::identity();
  if (hi - lo == 1) return leaf(lo);
  const std::size_t mid = lo + (hi - lo) / 2;
  return product_tree<Ring>(lo, mid, leaf) * product_tree<Ring>(mid, hi, leaf);
}

/// Products along the Thue-Morse word: given A = X(a), B = X(b) returns the
/// pair (X(mu^{2l}(a)), X(mu^{2l}(b))) where mu(a) = ab, mu(b) = ba. The first
/// is the product over the length-4^l prefix of the word.
template <class Ring>
std::pair<Mat2<Ring>, Mat2<Ring>> tm_block_product(Mat2<Ring> A, Mat2<Ring> B, unsigned levels) {
  for (unsigned l = 0; l < levels; ++l) {
    const Mat2<Ring> ab = A * B;
    const Mat2<Ring> ba = B * A;
    Mat2<Ring> next_a = ab * ba;
    Mat2<Ring> next_b = ba * ab;
    A = std::move(next_a);
    B = std::move(next_b);
  }
  return {std::move(A), std::move(B)};
}

}  // namespace tmcf
