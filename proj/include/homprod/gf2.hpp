#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace homprod {

// Dense bit vector over GF(2). Bits past size() in the last word are kept zero.
class BinVector {
 public:
  BinVector() = default;
  explicit BinVector(std::size_t n);

  static BinVector from_bits(std::initializer_list<int> bits);
  static BinVector from_string(std::string_view bits);
  static BinVector from_support(std::size_t n, std::span<const std::size_t> support);
  static BinVector unit(std::size_t n, std::size_t i);

  std::size_t size() const noexcept { return size_; }
  bool get(std::size_t i) const;
  void set(std::size_t i, bool value = true);
  void flip(std::size_t i);

  std::size_t weight() const noexcept;
  bool is_zero() const noexcept;
  bool dot(const BinVector& other) const;
  std::vector<std::size_t> support() const;

  BinVector& operator+=(const BinVector& other);
  BinVector slice(std::size_t begin, std::size_t length) const;
  static BinVector concat(const BinVector& a, const BinVector& b);

  std::span<const std::uint64_t> words() const noexcept { return words_; }
  std::span<std::uint64_t> words() noexcept { return words_; }

  std::string to_string() const;

  friend bool operator==(const BinVector&, const BinVector&) = default;

 private:
  std::size_t size_ = 0;
  std::vector<std::uint64_t> words_;
};

BinVector operator+(BinVector a, const BinVector& b);

// |a OR b|
std::size_t union_weight(const BinVector& a, const BinVector& b);

// Lexicographic order on sorted supports; ties between different lengths go to the shorter.
bool support_less(const BinVector& a, const BinVector& b);

class BinMatrix {
 public:
  BinMatrix() = default;
  BinMatrix(std::size_t rows, std::size_t cols);

  static BinMatrix identity(std::size_t n);
  static BinMatrix from_rows(std::initializer_list<std::initializer_list<int>> rows);
  static BinMatrix from_strings(std::span<const std::string> rows, std::size_t cols);
  static BinMatrix from_row_vectors(std::vector<BinVector> rows, std::size_t cols);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  bool get(std::size_t r, std::size_t c) const { return data_[r].get(c); }
  void set(std::size_t r, std::size_t c, bool value = true) { data_[r].set(c, value); }
  void flip(std::size_t r, std::size_t c) { data_[r].flip(c); }

  const BinVector& row(std::size_t r) const { return data_[r]; }
  BinVector& row(std::size_t r) { return data_[r]; }
  void set_row(std::size_t r, const BinVector& v);
  BinVector column(std::size_t c) const;
  void set_column(std::size_t c, const BinVector& v);

  std::size_t weight() const noexcept;
  bool is_zero() const noexcept;
  std::vector<std::size_t> column_weights() const;

  BinMatrix transpose() const;
  BinMatrix& operator+=(const BinMatrix& other);

  // Copies src into this matrix with its top-left corner at (r0, c0).
  void place(std::size_t r0, std::size_t c0, const BinMatrix& src);
  BinMatrix block(std::size_t r0, std::size_t c0, std::size_t nrows, std::size_t ncols) const;

  static BinMatrix kron(const BinMatrix& a, const BinMatrix& b);
  static BinMatrix hstack(const std::vector<BinMatrix>& parts);
  static BinMatrix vstack(const std::vector<BinMatrix>& parts);
  static BinMatrix block_diag(const BinMatrix& a, const BinMatrix& b);

  std::string to_string() const;

  friend bool operator==(const BinMatrix&, const BinMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<BinVector> data_;
};

BinMatrix operator+(BinMatrix a, const BinMatrix& b);
BinMatrix operator*(const BinMatrix& a, const BinMatrix& b);
BinVector operator*(const BinMatrix& a, const BinVector& x);

struct Echelon {
  BinMatrix reduced;                // reduced row echelon form, zero rows last
  std::vector<std::size_t> pivots;  // pivot column of each nonzero row
};

Echelon row_echelon(const BinMatrix& m);
std::size_t rank(const BinMatrix& m);
std::size_t nullity(const BinMatrix& m);

// Basis of ker(m), one vector per free column in increasing column order.
std::vector<BinVector> kernel_basis(const BinMatrix& m);
BinMatrix kernel_matrix(const BinMatrix& m);  // basis vectors as rows

// A solution of m x = b with every free variable zero, or nullopt.
std::optional<BinVector> solve(const BinMatrix& m, const BinVector& b);

// Rows span the annihilator of im(m): b is in im(m) iff annihilator(m) * b == 0.
BinMatrix image_annihilator(const BinMatrix& m);

// Reusable solver for repeated right-hand sides against one matrix.
class Gf2Solver {
 public:
  Gf2Solver() = default;
  explicit Gf2Solver(const BinMatrix& m);

  std::size_t rank() const noexcept { return pivots_.size(); }
  std::optional<BinVector> solve(const BinVector& b) const;
  bool in_image(const BinVector& b) const;

 private:
  BinVector transform(const BinVector& b) const;

  std::size_t cols_ = 0;
  BinMatrix ops_;  // row operations: ops_ * m == reduced form
  std::vector<std::size_t> pivots_;
};

// v in F_2^{rows*cols} viewed as a rows x cols matrix, row-major. Matches kron index order,
// so kron(A, B) * flatten(X) == flatten(A * X * B^T).
BinMatrix reshape(const BinVector& v, std::size_t rows, std::size_t cols);
BinVector flatten(const BinMatrix& m);

// 0-based indices of nonzero columns / rows.
std::vector<std::size_t> colsupp(const BinMatrix& m);
std::vector<std::size_t> rowsupp(const BinMatrix& m);

}  // namespace homprod
