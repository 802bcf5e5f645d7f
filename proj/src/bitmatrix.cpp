#include "tmcf/bitmatrix.hpp"

#include <algorithm>
#include <bit>

#include "tmcf/errors.hpp"

namespace tmcf {

bool BitVector::is_zero() const {
  return std::all_of(words_.begin(), words_.end(), [](Word w) { return w == 0; });
}

bool BitVector::dot(const BitVector& other) const {
  Word acc = 0;
  const std::size_t n = std::min(words_.size(), other.words_.size());
  for (std::size_t i = 0; i < n; ++i) acc ^= words_[i] & other.words_[i];
  return (std::popcount(acc) & 1) != 0;
}

BitVector& BitVector::operator^=(const BitVector& other) {
  if (other.size_ != size_) throw InvalidArgument("BitVector: size mismatch");
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] ^= other.words_[i];
  return *this;
}

std::vector<std::size_t> BitMatrix::reduce() {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols_ && r < rows_.size(); ++c) {
    std::size_t p = r;
    while (p < rows_.size() && !rows_[p].get(c)) ++p;
    if (p == rows_.size()) continue;
    std::swap(rows_[p], rows_[r]);
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      if (i != r && rows_[i].get(c)) rows_[i] ^= rows_[r];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

std::size_t rank(BitMatrix m) { return m.reduce().size(); }

bool determinant(BitMatrix m) {
  if (m.rows() != m.cols()) throw InvalidArgument("determinant of a non-square matrix");
  return m.reduce().size() == m.rows();
}

Kernel kernel(BitMatrix m) {
  const auto pivots = m.reduce();
  std::vector<bool> is_pivot(m.cols(), false);
  for (std::size_t c : pivots) is_pivot[c] = true;
  Kernel k;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    BitVector v(m.cols());
    v.set(f);
    for (std::size_t r = 0; r < pivots.size(); ++r) {
      if (m.get(r, f)) v.set(pivots[r]);
    }
    k.free_columns.push_back(f);
    k.basis.push_back(std::move(v));
  }
  return k;
}

IncrementalKernel::IncrementalKernel(std::size_t n) {
  basis_.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    BitVector v(n);
    v.set(i);
    basis_.push_back(std::move(v));
  }
}

std::size_t IncrementalKernel::add_equation(const BitVector& row) {
  std::size_t pivot = basis_.size();
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    if (!row.dot(basis_[i])) continue;
    if (pivot == basis_.size()) {
      pivot = i;
    } else {
      basis_[i] ^= basis_[pivot];
    }
  }
  if (pivot != basis_.size()) basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(pivot));
  return basis_.size();
}

}  // namespace tmcf
