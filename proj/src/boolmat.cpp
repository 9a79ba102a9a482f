#include "mgg/boolmat.hpp"

#include <bit>

#include "mgg/errors.hpp"

namespace mgg {

namespace {

constexpr std::size_t kBits = 64;

std::size_t words_for(std::size_t n) { return (n + kBits - 1) / kBits; }

std::uint64_t tail_mask(std::size_t n) {
  std::size_t r = n % kBits;
  return r == 0 ? ~std::uint64_t{0} : ((std::uint64_t{1} << r) - 1);
}

}  // namespace

// ---- BoolVector ----

BoolVector::BoolVector(std::size_t n, bool value)
    : n_(n), w_(words_for(n), value ? ~std::uint64_t{0} : 0) {
  trim();
}

BoolVector::BoolVector(std::initializer_list<int> bits) : BoolVector(bits.size()) {
  std::size_t i = 0;
  for (int b : bits) set(i++, b != 0);
}

bool BoolVector::get(std::size_t i) const {
  if (i >= n_) throw DimensionError("vector index out of range");
  return (w_[i / kBits] >> (i % kBits)) & 1u;
}

void BoolVector::set(std::size_t i, bool v) {
  if (i >= n_) throw DimensionError("vector index out of range");
  auto bit = std::uint64_t{1} << (i % kBits);
  if (v)
    w_[i / kBits] |= bit;
  else
    w_[i / kBits] &= ~bit;
}

void BoolVector::check_same(const BoolVector& o) const {
  if (n_ != o.n_)
    throw DimensionError("vector length mismatch: " + std::to_string(n_) + " vs " +
                         std::to_string(o.n_));
}

void BoolVector::trim() {
  if (!w_.empty()) w_.back() &= tail_mask(n_);
}

BoolVector BoolVector::operator&(const BoolVector& o) const {
  check_same(o);
  BoolVector r = *this;
  for (std::size_t k = 0; k < w_.size(); ++k) r.w_[k] &= o.w_[k];
  return r;
}

BoolVector BoolVector::operator|(const BoolVector& o) const {
  check_same(o);
  BoolVector r = *this;
  for (std::size_t k = 0; k < w_.size(); ++k) r.w_[k] |= o.w_[k];
  return r;
}

BoolVector BoolVector::operator^(const BoolVector& o) const {
  check_same(o);
  BoolVector r = *this;
  for (std::size_t k = 0; k < w_.size(); ++k) r.w_[k] ^= o.w_[k];
  return r;
}

BoolVector BoolVector::operator~() const {
  BoolVector r = *this;
  for (auto& w : r.w_) w = ~w;
  r.trim();
  return r;
}

bool BoolVector::any() const {
  for (auto w : w_)
    if (w) return true;
  return false;
}

std::size_t BoolVector::count() const {
  std::size_t c = 0;
  for (auto w : w_) c += std::popcount(w);
  return c;
}

std::string BoolVector::str() const {
  std::string s = "(";
  for (std::size_t i = 0; i < n_; ++i) {
    if (i) s += ',';
    s += get(i) ? '1' : '0';
  }
  return s + ")";
}

// ---- BoolMatrix ----

BoolMatrix::BoolMatrix(std::size_t rows, std::size_t cols, bool value)
    : rows_(rows),
      cols_(cols),
      stride_(words_for(cols)),
      w_(rows * words_for(cols), value ? ~std::uint64_t{0} : 0) {
  trim();
}

BoolMatrix::BoolMatrix(std::initializer_list<std::initializer_list<int>> rows) {
  std::size_t r = rows.size();
  std::size_t c = r ? rows.begin()->size() : 0;
  *this = BoolMatrix(r, c);
  std::size_t i = 0;
  for (const auto& row : rows) {
    if (row.size() != c) throw DimensionError("ragged matrix literal");
    std::size_t j = 0;
    for (int b : row) set(i, j++, b != 0);
    ++i;
  }
}

BoolMatrix BoolMatrix::identity(std::size_t n) {
  BoolMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i);
  return m;
}

bool BoolMatrix::get(std::size_t i, std::size_t j) const {
  if (i >= rows_ || j >= cols_) throw DimensionError("matrix index out of range");
  return (row_ptr(i)[j / kBits] >> (j % kBits)) & 1u;
}

void BoolMatrix::set(std::size_t i, std::size_t j, bool v) {
  if (i >= rows_ || j >= cols_) throw DimensionError("matrix index out of range");
  auto bit = std::uint64_t{1} << (j % kBits);
  if (v)
    row_ptr(i)[j / kBits] |= bit;
  else
    row_ptr(i)[j / kBits] &= ~bit;
}

BoolVector BoolMatrix::row(std::size_t i) const {
  if (i >= rows_) throw DimensionError("row index out of range");
  BoolVector v(cols_);
  for (std::size_t k = 0; k < stride_; ++k) v.w_[k] = row_ptr(i)[k];
  return v;
}

BoolMatrix BoolMatrix::transpose() const {
  BoolMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < stride_; ++k) {
      std::uint64_t w = row_ptr(i)[k];
      while (w) {
        std::size_t j = k * kBits + std::countr_zero(w);
        t.set(j, i);
        w &= w - 1;
      }
    }
  return t;
}

void BoolMatrix::check_same(const BoolMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_)
    throw DimensionError("matrix shape mismatch: " + std::to_string(rows_) + "x" +
                         std::to_string(cols_) + " vs " + std::to_string(o.rows_) + "x" +
                         std::to_string(o.cols_));
}

void BoolMatrix::trim() {
  if (stride_ == 0) return;
  auto mask = tail_mask(cols_);
  for (std::size_t i = 0; i < rows_; ++i) row_ptr(i)[stride_ - 1] &= mask;
}

BoolMatrix BoolMatrix::operator&(const BoolMatrix& o) const {
  check_same(o);
  BoolMatrix r = *this;
  for (std::size_t k = 0; k < w_.size(); ++k) r.w_[k] &= o.w_[k];
  return r;
}

BoolMatrix BoolMatrix::operator|(const BoolMatrix& o) const {
  check_same(o);
  BoolMatrix r = *this;
  for (std::size_t k = 0; k < w_.size(); ++k) r.w_[k] |= o.w_[k];
  return r;
}

BoolMatrix BoolMatrix::operator^(const BoolMatrix& o) const {
  check_same(o);
  BoolMatrix r = *this;
  for (std::size_t k = 0; k < w_.size(); ++k) r.w_[k] ^= o.w_[k];
  return r;
}

BoolMatrix BoolMatrix::operator~() const {
  BoolMatrix r = *this;
  for (auto& w : r.w_) w = ~w;
  r.trim();
  return r;
}

bool BoolMatrix::any() const {
  for (auto w : w_)
    if (w) return true;
  return false;
}

std::size_t BoolMatrix::count() const {
  std::size_t c = 0;
  for (auto w : w_) c += std::popcount(w);
  return c;
}

std::string BoolMatrix::str() const {
  std::string s = "[";
  for (std::size_t i = 0; i < rows_; ++i) {
    s += i ? ",[" : "[";
    for (std::size_t j = 0; j < cols_; ++j) {
      if (j) s += ',';
      s += get(i, j) ? '1' : '0';
    }
    s += ']';
  }
  return s + "]";
}

// ---- free functions ----

BoolMatrix elementwise(LogicOp op, const BoolMatrix& a, const BoolMatrix& b) {
  switch (op) {
    case LogicOp::And: return a & b;
    case LogicOp::Or: return a | b;
    case LogicOp::Xor: return a ^ b;
    case LogicOp::Not: return ~a;
  }
  return a;
}

BoolVector elementwise(LogicOp op, const BoolVector& a, const BoolVector& b) {
  switch (op) {
    case LogicOp::And: return a & b;
    case LogicOp::Or: return a | b;
    case LogicOp::Xor: return a ^ b;
    case LogicOp::Not: return ~a;
  }
  return a;
}

// Row i of the product is the OR of the rows k of b selected by row i of a.
BoolMatrix bool_product(const BoolMatrix& a, const BoolMatrix& b) {
  if (a.cols_ != b.rows_)
    throw DimensionError("inner dimensions differ: " + std::to_string(a.cols_) + " vs " +
                         std::to_string(b.rows_));
  BoolMatrix r(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i) {
    std::uint64_t* out = r.row_ptr(i);
    for (std::size_t k = 0; k < a.stride_; ++k) {
      std::uint64_t w = a.row_ptr(i)[k];
      while (w) {
        std::size_t src = k * kBits + std::countr_zero(w);
        const std::uint64_t* in = b.row_ptr(src);
        for (std::size_t q = 0; q < r.stride_; ++q) out[q] |= in[q];
        w &= w - 1;
      }
    }
  }
  return r;
}

BoolVector bool_product(const BoolMatrix& a, const BoolVector& v) {
  if (a.cols_ != v.n_)
    throw DimensionError("inner dimensions differ: " + std::to_string(a.cols_) + " vs " +
                         std::to_string(v.n_));
  BoolVector r(a.rows_);
  for (std::size_t i = 0; i < a.rows_; ++i) {
    const std::uint64_t* row = a.row_ptr(i);
    for (std::size_t k = 0; k < a.stride_; ++k)
      if (row[k] & v.w_[k]) {
        r.set(i);
        break;
      }
  }
  return r;
}

BoolMatrix tensor(const BoolVector& u, const BoolVector& v) {
  BoolMatrix m(u.size(), v.size());
  for (std::size_t i = 0; i < u.size(); ++i)
    if (u.get(i))
      for (std::size_t j = 0; j < v.size(); ++j)
        if (v.get(j)) m.set(i, j);
  return m;
}

}  // namespace mgg
