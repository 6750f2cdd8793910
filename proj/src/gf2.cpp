#include "homprod/gf2.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace homprod {

namespace {

constexpr std::size_t kWordBits = 64;

std::size_t word_count(std::size_t n) { return (n + kWordBits - 1) / kWordBits; }

void require(bool cond, const char* what) {
  if (!cond) throw std::invalid_argument(what);
}

}  // namespace

BinVector::BinVector(std::size_t n) : size_(n), words_(word_count(n), 0) {}

BinVector BinVector::from_bits(std::initializer_list<int> bits) {
  BinVector v(bits.size());
  std::size_t i = 0;
  for (int b : bits) {
    require(b == 0 || b == 1, "bit values must be 0 or 1");
    if (b) v.set(i);
    ++i;
  }
  return v;
}

BinVector BinVector::from_string(std::string_view bits) {
  BinVector v(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i) {
    require(bits[i] == '0' || bits[i] == '1', "bit string must contain only 0 and 1");
    if (bits[i] == '1') v.set(i);
  }
  return v;
}

BinVector BinVector::from_support(std::size_t n, std::span<const std::size_t> support) {
  BinVector v(n);
  for (std::size_t i : support) {
    require(i < n, "support index out of range");
    v.flip(i);
  }
  return v;
}

BinVector BinVector::unit(std::size_t n, std::size_t i) {
  BinVector v(n);
  v.set(i);
  return v;
}

bool BinVector::get(std::size_t i) const {
  if (i >= size_) throw std::out_of_range("BinVector index out of range");
  return (words_[i / kWordBits] >> (i % kWordBits)) & 1u;
}

void BinVector::set(std::size_t i, bool value) {
  if (i >= size_) throw std::out_of_range("BinVector index out of range");
  const std::uint64_t mask = std::uint64_t{1} << (i % kWordBits);
  if (value)
    words_[i / kWordBits] |= mask;
  else
    words_[i / kWordBits] &= ~mask;
}

void BinVector::flip(std::size_t i) {
  if (i >= size_) throw std::out_of_range("BinVector index out of range");
  words_[i / kWordBits] ^= std::uint64_t{1} << (i % kWordBits);
}

std::size_t BinVector::weight() const noexcept {
  std::size_t w = 0;
  for (auto word : words_) w += static_cast<std::size_t>(std::popcount(word));
  return w;
}

bool BinVector::is_zero() const noexcept {
  return std::all_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w == 0; });
}

bool BinVector::dot(const BinVector& other) const {
  require(size_ == other.size_, "dot product of vectors with different lengths");
  std::uint64_t acc = 0;
  for (std::size_t i = 0; i < words_.size(); ++i) acc ^= words_[i] & other.words_[i];
  return std::popcount(acc) & 1;
}

std::vector<std::size_t> BinVector::support() const {
  std::vector<std::size_t> out;
  for (std::size_t w = 0; w < words_.size(); ++w) {
    std::uint64_t word = words_[w];
    while (word) {
      out.push_back(w * kWordBits + static_cast<std::size_t>(std::countr_zero(word)));
      word &= word - 1;
    }
  }
  return out;
}

BinVector& BinVector::operator+=(const BinVector& other) {
  require(size_ == other.size_, "adding vectors with different lengths");
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] ^= other.words_[i];
  return *this;
}

BinVector BinVector::slice(std::size_t begin, std::size_t length) const {
  require(begin + length <= size_, "slice out of range");
  BinVector out(length);
  for (std::size_t i = 0; i < length; ++i)
    if (get(begin + i)) out.set(i);
  return out;
}

BinVector BinVector::concat(const BinVector& a, const BinVector& b) {
  BinVector out(a.size() + b.size());
  for (std::size_t i : a.support()) out.set(i);
  for (std::size_t i : b.support()) out.set(a.size() + i);
  return out;
}

std::string BinVector::to_string() const {
  std::string s(size_, '0');
  for (std::size_t i : support()) s[i] = '1';
  return s;
}

BinVector operator+(BinVector a, const BinVector& b) {
  a += b;
  return a;
}

std::size_t union_weight(const BinVector& a, const BinVector& b) {
  require(a.size() == b.size(), "union of vectors with different lengths");
  std::size_t w = 0;
  auto wa = a.words();
  auto wb = b.words();
  for (std::size_t i = 0; i < wa.size(); ++i)
    w += static_cast<std::size_t>(std::popcount(wa[i] | wb[i]));
  return w;
}

bool support_less(const BinVector& a, const BinVector& b) {
  auto sa = a.support();
  auto sb = b.support();
  return std::lexicographical_compare(sa.begin(), sa.end(), sb.begin(), sb.end());
}

BinMatrix::BinMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows, BinVector(cols)) {}

BinMatrix BinMatrix::identity(std::size_t n) {
  BinMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i);
  return m;
}

BinMatrix BinMatrix::from_rows(std::initializer_list<std::initializer_list<int>> rows) {
  std::vector<BinVector> data;
  std::size_t cols = rows.size() ? rows.begin()->size() : 0;
  for (const auto& r : rows) {
    require(r.size() == cols, "ragged matrix rows");
    data.push_back(BinVector::from_bits(r));
  }
  return from_row_vectors(std::move(data), cols);
}

BinMatrix BinMatrix::from_strings(std::span<const std::string> rows, std::size_t cols) {
  std::vector<BinVector> data;
  for (const auto& r : rows) {
    require(r.size() == cols, "row length does not match column count");
    data.push_back(BinVector::from_string(r));
  }
  return from_row_vectors(std::move(data), cols);
}

BinMatrix BinMatrix::from_row_vectors(std::vector<BinVector> rows, std::size_t cols) {
  for (const auto& r : rows) require(r.size() == cols, "row length does not match column count");
  BinMatrix m;
  m.rows_ = rows.size();
  m.cols_ = cols;
  m.data_ = std::move(rows);
  return m;
}

void BinMatrix::set_row(std::size_t r, const BinVector& v) {
  require(v.size() == cols_, "row length mismatch");
  data_.at(r) = v;
}

BinVector BinMatrix::column(std::size_t c) const {
  if (c >= cols_) throw std::out_of_range("column index out of range");
  BinVector v(rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    if (data_[r].get(c)) v.set(r);
  return v;
}

void BinMatrix::set_column(std::size_t c, const BinVector& v) {
  require(v.size() == rows_, "column length mismatch");
  for (std::size_t r = 0; r < rows_; ++r) data_[r].set(c, v.get(r));
}

std::size_t BinMatrix::weight() const noexcept {
  std::size_t w = 0;
  for (const auto& r : data_) w += r.weight();
  return w;
}

bool BinMatrix::is_zero() const noexcept {
  return std::all_of(data_.begin(), data_.end(), [](const BinVector& r) { return r.is_zero(); });
}

std::vector<std::size_t> BinMatrix::column_weights() const {
  std::vector<std::size_t> w(cols_, 0);
  for (const auto& r : data_)
    for (std::size_t c : r.support()) ++w[c];
  return w;
}

BinMatrix BinMatrix::transpose() const {
  BinMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c : data_[r].support()) t.data_[c].set(r);
  return t;
}

BinMatrix& BinMatrix::operator+=(const BinMatrix& other) {
  require(rows_ == other.rows_ && cols_ == other.cols_, "adding matrices of different shapes");
  for (std::size_t r = 0; r < rows_; ++r) data_[r] += other.data_[r];
  return *this;
}

void BinMatrix::place(std::size_t r0, std::size_t c0, const BinMatrix& src) {
  require(r0 + src.rows_ <= rows_ && c0 + src.cols_ <= cols_, "block does not fit");
  for (std::size_t r = 0; r < src.rows_; ++r)
    for (std::size_t c = 0; c < src.cols_; ++c) data_[r0 + r].set(c0 + c, src.get(r, c));
}

BinMatrix BinMatrix::block(std::size_t r0, std::size_t c0, std::size_t nrows,
                           std::size_t ncols) const {
  require(r0 + nrows <= rows_ && c0 + ncols <= cols_, "block out of range");
  BinMatrix out(nrows, ncols);
  for (std::size_t r = 0; r < nrows; ++r) out.data_[r] = data_[r0 + r].slice(c0, ncols);
  return out;
}

BinMatrix BinMatrix::kron(const BinMatrix& a, const BinMatrix& b) {
  BinMatrix out(a.rows_ * b.rows_, a.cols_ * b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t j : a.data_[i].support())
      for (std::size_t k = 0; k < b.rows_; ++k) {
        BinVector& dst = out.data_[i * b.rows_ + k];
        for (std::size_t l : b.data_[k].support()) dst.set(j * b.cols_ + l);
      }
  return out;
}

BinMatrix BinMatrix::hstack(const std::vector<BinMatrix>& parts) {
  if (parts.empty()) return {};
  std::size_t rows = parts.front().rows_;
  std::size_t cols = 0;
  for (const auto& p : parts) {
    require(p.rows_ == rows, "hstack with mismatched row counts");
    cols += p.cols_;
  }
  BinMatrix out(rows, cols);
  std::size_t c0 = 0;
  for (const auto& p : parts) {
    for (std::size_t r = 0; r < rows; ++r)
      for (std::size_t c : p.data_[r].support()) out.data_[r].set(c0 + c);
    c0 += p.cols_;
  }
  return out;
}

BinMatrix BinMatrix::vstack(const std::vector<BinMatrix>& parts) {
  if (parts.empty()) return {};
  std::size_t cols = parts.front().cols_;
  std::vector<BinVector> rows;
  for (const auto& p : parts) {
    require(p.cols_ == cols, "vstack with mismatched column counts");
    rows.insert(rows.end(), p.data_.begin(), p.data_.end());
  }
  return from_row_vectors(std::move(rows), cols);
}

BinMatrix BinMatrix::block_diag(const BinMatrix& a, const BinMatrix& b) {
  BinMatrix out(a.rows_ + b.rows_, a.cols_ + b.cols_);
  out.place(0, 0, a);
  out.place(a.rows_, a.cols_, b);
  return out;
}

std::string BinMatrix::to_string() const {
  std::string s;
  for (const auto& r : data_) {
    s += r.to_string();
    s += '\n';
  }
  return s;
}

BinMatrix operator+(BinMatrix a, const BinMatrix& b) {
  a += b;
  return a;
}

BinMatrix operator*(const BinMatrix& a, const BinMatrix& b) {
  require(a.cols() == b.rows(), "matrix product with incompatible shapes");
  BinMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    BinVector& dst = out.row(i);
    for (std::size_t k : a.row(i).support()) dst += b.row(k);
  }
  return out;
}

BinVector operator*(const BinMatrix& a, const BinVector& x) {
  require(a.cols() == x.size(), "matrix-vector product with incompatible shapes");
  BinVector out(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    if (a.row(i).dot(x)) out.set(i);
  return out;
}

namespace {

// Gauss-Jordan elimination, pivots chosen left to right. Applies the same row
// operations to `companion` when it is non-null.
std::vector<std::size_t> eliminate(BinMatrix& m, BinMatrix* companion) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && !m.get(p, c)) ++p;
    if (p == m.rows()) continue;
    if (p != r) {
      std::swap(m.row(p), m.row(r));
      if (companion) std::swap(companion->row(p), companion->row(r));
    }
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i != r && m.get(i, c)) {
        m.row(i) += m.row(r);
        if (companion) companion->row(i) += companion->row(r);
      }
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace

Echelon row_echelon(const BinMatrix& m) {
  Echelon e{m, {}};
  e.pivots = eliminate(e.reduced, nullptr);
  return e;
}

std::size_t rank(const BinMatrix& m) {
  // Eliminate along the shorter dimension.
  BinMatrix work = m.rows() <= m.cols() ? m : m.transpose();
  return eliminate(work, nullptr).size();
}

std::size_t nullity(const BinMatrix& m) { return m.cols() - rank(m); }

std::vector<BinVector> kernel_basis(const BinMatrix& m) {
  Echelon e = row_echelon(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (std::size_t p : e.pivots) is_pivot[p] = true;
  std::vector<BinVector> basis;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    BinVector v(m.cols());
    v.set(f);
    for (std::size_t r = 0; r < e.pivots.size(); ++r)
      if (e.reduced.get(r, f)) v.set(e.pivots[r]);
    basis.push_back(std::move(v));
  }
  return basis;
}

BinMatrix kernel_matrix(const BinMatrix& m) {
  return BinMatrix::from_row_vectors(kernel_basis(m), m.cols());
}

std::optional<BinVector> solve(const BinMatrix& m, const BinVector& b) {
  require(b.size() == m.rows(), "right-hand side length mismatch");
  BinMatrix aug = BinMatrix::hstack({m, BinMatrix(m.rows(), 1)});
  for (std::size_t r = 0; r < m.rows(); ++r) aug.set(r, m.cols(), b.get(r));
  std::vector<std::size_t> pivots = eliminate(aug, nullptr);
  BinVector x(m.cols());
  for (std::size_t r = 0; r < pivots.size(); ++r) {
    if (pivots[r] == m.cols()) return std::nullopt;
    if (aug.get(r, m.cols())) x.set(pivots[r]);
  }
  return x;
}

BinMatrix image_annihilator(const BinMatrix& m) { return kernel_matrix(m.transpose()); }

Gf2Solver::Gf2Solver(const BinMatrix& m) : cols_(m.cols()), ops_(BinMatrix::identity(m.rows())) {
  BinMatrix work = m;
  pivots_ = eliminate(work, &ops_);
}

BinVector Gf2Solver::transform(const BinVector& b) const {
  require(b.size() == ops_.cols(), "right-hand side length mismatch");
  return ops_ * b;
}

std::optional<BinVector> Gf2Solver::solve(const BinVector& b) const {
  BinVector t = transform(b);
  for (std::size_t r = pivots_.size(); r < t.size(); ++r)
    if (t.get(r)) return std::nullopt;
  BinVector x(cols_);
  for (std::size_t r = 0; r < pivots_.size(); ++r)
    if (t.get(r)) x.set(pivots_[r]);
  return x;
}

bool Gf2Solver::in_image(const BinVector& b) const {
  BinVector t = transform(b);
  for (std::size_t r = pivots_.size(); r < t.size(); ++r)
    if (t.get(r)) return false;
  return true;
}

BinMatrix reshape(const BinVector& v, std::size_t rows, std::size_t cols) {
  require(v.size() == rows * cols, "reshape size mismatch");
  BinMatrix m(rows, cols);
  for (std::size_t i : v.support()) m.set(i / cols, i % cols);
  return m;
}

BinVector flatten(const BinMatrix& m) {
  BinVector v(m.rows() * m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c : m.row(r).support()) v.set(r * m.cols() + c);
  return v;
}

std::vector<std::size_t> colsupp(const BinMatrix& m) {
  BinVector acc(m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    auto dst = acc.words();
    auto src = m.row(r).words();
    for (std::size_t i = 0; i < dst.size(); ++i) dst[i] |= src[i];
  }
  return acc.support();
}

std::vector<std::size_t> rowsupp(const BinMatrix& m) {
  std::vector<std::size_t> out;
  for (std::size_t r = 0; r < m.rows(); ++r)
    if (!m.row(r).is_zero()) out.push_back(r);
  return out;
}

}  // namespace homprod
