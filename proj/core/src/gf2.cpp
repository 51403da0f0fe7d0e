#include "shiftlab/gf2.hpp"

#include <stdexcept>

namespace shiftlab {

BitMatrix::BitMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), words_((cols + 63) / 64), data_(rows * words_, 0) {}

bool BitMatrix::get(std::size_t r, std::size_t c) const {
  return (data_[r * words_ + c / 64] >> (c % 64)) & 1u;
}

void BitMatrix::set(std::size_t r, std::size_t c, bool v) {
  std::uint64_t mask = std::uint64_t(1) << (c % 64);
  if (v)
    data_[r * words_ + c / 64] |= mask;
  else
    data_[r * words_ + c / 64] &= ~mask;
}

void BitMatrix::xor_rows(std::size_t dst, std::size_t src) {
  for (std::size_t w = 0; w < words_; ++w)
    data_[dst * words_ + w] ^= data_[src * words_ + w];
}

void BitMatrix::append_row() {
  ++rows_;
  data_.resize(rows_ * words_, 0);
}

void BitMatrix::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t w = 0; w < words_; ++w)
    std::swap(data_[a * words_ + w], data_[b * words_ + w]);
}

std::vector<std::size_t> BitMatrix::rref() {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < cols_ && row < rows_; ++col) {
    std::size_t pivot = row;
    while (pivot < rows_ && !get(pivot, col)) ++pivot;
    if (pivot == rows_) continue;
    swap_rows(row, pivot);
    for (std::size_t r = 0; r < rows_; ++r)
      if (r != row && get(r, col)) xor_rows(r, row);
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

std::size_t BitMatrix::rank() const {
  BitMatrix copy = *this;
  return copy.rref().size();
}

BitMatrix BitMatrix::kernel_basis() const {
  BitMatrix copy = *this;
  std::vector<std::size_t> pivots = copy.rref();
  std::vector<std::uint8_t> is_pivot(cols_, 0);
  for (std::size_t c : pivots) is_pivot[c] = 1;
  std::size_t dim = cols_ - pivots.size();
  BitMatrix basis(dim, cols_);
  std::size_t out = 0;
  for (std::size_t f = 0; f < cols_; ++f) {
    if (is_pivot[f]) continue;
    basis.set(out, f, true);
    for (std::size_t r = 0; r < pivots.size(); ++r)
      if (copy.get(r, f)) basis.set(out, pivots[r], true);
    ++out;
  }
  return basis;
}

std::optional<std::vector<std::uint8_t>> BitMatrix::min_nonzero_row_vector()
    const {
  BitMatrix copy = *this;
  std::vector<std::size_t> pivots = copy.rref();
  if (pivots.empty()) return std::nullopt;
  // In RREF every nonzero combination starts at the pivot of some chosen
  // row, so the row with the latest pivot is the lex-least element.
  return copy.row_as_vector(pivots.size() - 1);
}

bool BitMatrix::row_space_contains(const std::vector<std::uint8_t>& v) const {
  BitMatrix copy = *this;
  copy.append_row();
  for (std::size_t c = 0; c < cols_; ++c)
    copy.set(copy.rows() - 1, c, v[c] != 0);
  return copy.rref().size() == rank();
}

std::vector<std::uint8_t> BitMatrix::row_as_vector(std::size_t r) const {
  std::vector<std::uint8_t> out(cols_);
  for (std::size_t c = 0; c < cols_; ++c) out[c] = get(r, c) ? 1 : 0;
  return out;
}

void Gf2System::add_equation(const std::vector<std::size_t>& columns,
                             bool rhs) {
  if (a.cols() == 0 && a.rows() == 0)
    throw std::logic_error("Gf2System matrix must be sized before use");
  a.append_row();
  std::size_t r = a.rows() - 1;
  for (std::size_t c : columns) a.set(r, c, !a.get(r, c));
  b.push_back(rhs ? 1 : 0);
}

std::optional<std::vector<std::uint8_t>> Gf2System::solve() const {
  // Augment with b as an extra column and reduce.
  BitMatrix aug(a.rows(), a.cols() + 1);
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c) aug.set(r, c, a.get(r, c));
    aug.set(r, a.cols(), b[r] != 0);
  }
  std::vector<std::size_t> pivots = aug.rref();
  for (std::size_t c : pivots)
    if (c == a.cols()) return std::nullopt;  // 0 = 1 row
  std::vector<std::uint8_t> x(a.cols(), 0);
  for (std::size_t r = 0; r < pivots.size(); ++r)
    x[pivots[r]] = aug.get(r, a.cols()) ? 1 : 0;
  return x;
}

bool Gf2System::consistent() const { return solve().has_value(); }

}  // namespace shiftlab
