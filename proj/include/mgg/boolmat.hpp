#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

namespace mgg {

class BoolMatrix;

class BoolVector {
 public:
  BoolVector() = default;
  explicit BoolVector(std::size_t n, bool value = false);
  BoolVector(std::initializer_list<int> bits);

  std::size_t size() const { return n_; }
  bool get(std::size_t i) const;
  void set(std::size_t i, bool v = true);

  BoolVector operator&(const BoolVector& o) const;
  BoolVector operator|(const BoolVector& o) const;
  BoolVector operator^(const BoolVector& o) const;
  BoolVector operator~() const;
  bool operator==(const BoolVector& o) const = default;

  bool any() const;
  std::size_t count() const;
  std::string str() const;

 private:
  friend class BoolMatrix;
  friend BoolVector bool_product(const BoolMatrix&, const BoolVector&);
  void check_same(const BoolVector& o) const;
  void trim();

  std::size_t n_ = 0;
  std::vector<std::uint64_t> w_;
};

// Row-major, bit-packed. Each row occupies a whole number of 64-bit words so
// that row kernels never straddle rows.
class BoolMatrix {
 public:
  BoolMatrix() = default;
  BoolMatrix(std::size_t rows, std::size_t cols, bool value = false);
  BoolMatrix(std::initializer_list<std::initializer_list<int>> rows);

  static BoolMatrix square(std::size_t n) { return BoolMatrix(n, n); }
  static BoolMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool get(std::size_t i, std::size_t j) const;
  void set(std::size_t i, std::size_t j, bool v = true);

  BoolVector row(std::size_t i) const;
  BoolMatrix transpose() const;

  BoolMatrix operator&(const BoolMatrix& o) const;
  BoolMatrix operator|(const BoolMatrix& o) const;
  BoolMatrix operator^(const BoolMatrix& o) const;
  BoolMatrix operator~() const;
  bool operator==(const BoolMatrix& o) const = default;

  bool any() const;
  std::size_t count() const;
  std::string str() const;

 private:
  friend BoolMatrix bool_product(const BoolMatrix&, const BoolMatrix&);
  friend BoolVector bool_product(const BoolMatrix&, const BoolVector&);
  void check_same(const BoolMatrix& o) const;
  void trim();
  const std::uint64_t* row_ptr(std::size_t i) const { return w_.data() + i * stride_; }
  std::uint64_t* row_ptr(std::size_t i) { return w_.data() + i * stride_; }

  std::size_t rows_ = 0, cols_ = 0, stride_ = 0;
  std::vector<std::uint64_t> w_;
};

enum class LogicOp { And, Or, Xor, Not };

// Binary ops require equal shapes; b is ignored for Not.
BoolMatrix elementwise(LogicOp op, const BoolMatrix& a, const BoolMatrix& b = {});
BoolVector elementwise(LogicOp op, const BoolVector& a, const BoolVector& b = {});

BoolMatrix bool_product(const BoolMatrix& a, const BoolMatrix& b);
BoolVector bool_product(const BoolMatrix& a, const BoolVector& v);

inline bool norm1(const BoolVector& v) { return v.any(); }

// result[i][j] = u[i] and v[j]
BoolMatrix tensor(const BoolVector& u, const BoolVector& v);

}  // namespace mgg
