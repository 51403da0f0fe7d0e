#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace shiftlab {

/// Dense bit-packed matrix over GF(2); rows are 64-bit blocks.
class BitMatrix {
 public:
  BitMatrix() = default;
  BitMatrix(std::size_t rows, std::size_t cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  bool get(std::size_t r, std::size_t c) const;
  void set(std::size_t r, std::size_t c, bool v);
  void xor_rows(std::size_t dst, std::size_t src);
  void append_row();
  void swap_rows(std::size_t a, std::size_t b);

  /// In-place reduced row echelon form; returns the pivot column of each
  /// pivot row, in increasing order.  Column order is the given order.
  std::vector<std::size_t> rref();

  std::size_t rank() const;

  /// Basis of {x : Ax = 0}, one row per basis vector (may be empty).
  BitMatrix kernel_basis() const;

  /// Lexicographically least nonzero vector of the row space under the
  /// column order (earlier columns more significant, 0 < 1), or nullopt if
  /// the row space is trivial.
  std::optional<std::vector<std::uint8_t>> min_nonzero_row_vector() const;

  /// Whether v lies in the row space.
  bool row_space_contains(const std::vector<std::uint8_t>& v) const;

  std::vector<std::uint8_t> row_as_vector(std::size_t r) const;

 private:
  std::size_t rows_ = 0, cols_ = 0, words_ = 0;
  std::vector<std::uint64_t> data_;
};

/// Linear system Ax = b over GF(2).
struct Gf2System {
  BitMatrix a;
  std::vector<std::uint8_t> b;

  void add_equation(const std::vector<std::size_t>& columns, bool rhs);

  /// Any particular solution, or nullopt if inconsistent.
  std::optional<std::vector<std::uint8_t>> solve() const;
  bool consistent() const;
};

}  // namespace shiftlab
