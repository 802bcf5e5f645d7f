#pragma once

#include <cstddef>
#include <vector>

#include "tmcf/poly.hpp"

namespace tmcf {

/// Dense bit vector over GF(2), 64 entries per word.
class BitVector {
 public:
  BitVector() = default;
  explicit BitVector(std::size_t size) : size_(size), words_((size + kWordBits - 1) / kWordBits) {}

  std::size_t size() const { return size_; }
  bool get(std::size_t i) const { return (words_[i / kWordBits] >> (i % kWordBits)) & 1u; }
  void set(std::size_t i, bool v = true) {
    const Word mask = Word{1} << (i % kWordBits);
    if (v) {
      words_[i / kWordBits] |= mask;
    } else {
      words_[i / kWordBits] &= ~mask;
    }
  }
  void flip(std::size_t i) { words_[i / kWordBits] ^= Word{1} << (i % kWordBits); }
  bool is_zero() const;
  /// Inner product over GF(2).
  bool dot(const BitVector& other) const;
  BitVector& operator^=(const BitVector& other);
  friend bool operator==(const BitVector&, const BitVector&) = default;

 private:
  std::size_t size_ = 0;
  std::vector<Word> words_;
};

/// Dense matrix over GF(2) stored as row bit vectors.
class BitMatrix {
 public:
  BitMatrix(std::size_t rows, std::size_t cols) : cols_(cols), rows_(rows, BitVector(cols)) {}

  std::size_t rows() const { return rows_.size(); }
  std::size_t cols() const { return cols_; }
  bool get(std::size_t r, std::size_t c) const { return rows_[r].get(c); }
  void set(std::size_t r, std::size_t c, bool v = true) { rows_[r].set(c, v); }
  BitVector& row(std::size_t r) { return rows_[r]; }
  const BitVector& row(std::size_t r) const { return rows_[r]; }

  /// Reduced row echelon form in place; returns the pivot column of each
  /// nonzero row, in order.
  std::vector<std::size_t> reduce();

 private:
  std::size_t cols_;
  std::vector<BitVector> rows_;
};

std::size_t rank(BitMatrix m);
/// Determinant of a square matrix.
bool determinant(BitMatrix m);

struct Kernel {
  /// One basis vector per free column; basis[i] has its highest set index at
  /// free_columns[i] and is otherwise supported on pivot columns below it.
  std::vector<std::size_t> free_columns;
  std::vector<BitVector> basis;
};
Kernel kernel(BitMatrix m);

/// Nullspace of a growing system, maintained one equation at a time.
class IncrementalKernel {
 public:
  /// Starts from the whole space of dimension n.
  explicit IncrementalKernel(std::size_t n);

  /// Restricts to vectors orthogonal to `row`; returns the new dimension.
  std::size_t add_equation(const BitVector& row);
  std::size_t dimension() const { return basis_.size(); }
  const std::vector<BitVector>& basis() const { return basis_; }

 private:
  std::vector<BitVector> basis_;
};

}  // namespace tmcf
