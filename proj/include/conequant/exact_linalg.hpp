#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "conequant/scalar.hpp"

namespace conequant {

/// Dense row-major matrix over Q(i). Small sizes only (tens of rows).
class ExactMatrix {
public:
  ExactMatrix() = default;
  ExactMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  static ExactMatrix identity(std::size_t n);
  static ExactMatrix from_rows(const std::vector<std::vector<Scalar>>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Scalar& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Scalar& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  ExactMatrix transpose() const;
  std::vector<Scalar> row(std::size_t r) const;
  std::vector<std::vector<Scalar>> to_rows() const;
  friend ExactMatrix operator*(const ExactMatrix& a, const ExactMatrix& b);
  friend ExactMatrix operator+(const ExactMatrix& a, const ExactMatrix& b);
  friend ExactMatrix operator-(const ExactMatrix& a, const ExactMatrix& b);
  friend bool operator==(const ExactMatrix& a, const ExactMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }
  std::vector<Scalar> apply(const std::vector<Scalar>& v) const;

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Scalar> data_;
};

/// Reduced row echelon form in place; returns pivot columns.
std::vector<std::size_t> row_reduce(ExactMatrix& m);
std::size_t rank(ExactMatrix m);
Scalar determinant(ExactMatrix m);
/// Throws std::domain_error when singular.
ExactMatrix inverse(const ExactMatrix& m);
/// Basis of {x : m x = 0}.
std::vector<std::vector<Scalar>> null_space(const ExactMatrix& m);

/// Solutions of m x = b: none, unique, or an affine family described by the
/// particular solution plus the null-space dimension.
struct LinearSolution {
  std::optional<std::vector<Scalar>> particular;
  std::size_t free_dimension = 0;
  bool unique() const { return particular.has_value() && free_dimension == 0; }
};
LinearSolution solve(const ExactMatrix& m, const std::vector<Scalar>& b);

/// Inertia of a real symmetric rational matrix via congruence diagonalization.
struct Inertia {
  std::size_t positive = 0;
  std::size_t negative = 0;
  std::size_t zero = 0;
};
/// Throws std::invalid_argument if m is not real symmetric.
Inertia inertia(const ExactMatrix& m);

}  // namespace conequant
