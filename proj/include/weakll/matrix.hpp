#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "weakll/combinat.hpp"
#include "weakll/scalar.hpp"

namespace weakll {

using Vec = std::vector<Scalar>;

/// Dense row-major matrix over exact rationals.
class Matrix {
 public:
  Matrix() : rows_(0), cols_(0) {}
  Matrix(Index rows, Index cols)
      : rows_(rows), cols_(cols), entries_(static_cast<size_t>(rows * cols)) {}

  static Matrix identity(Index n);

  Index rows() const { return rows_; }
  Index cols() const { return cols_; }

  Scalar& at(Index r, Index c) { return entries_[static_cast<size_t>(r * cols_ + c)]; }
  const Scalar& at(Index r, Index c) const {
    return entries_[static_cast<size_t>(r * cols_ + c)];
  }

  const std::vector<Scalar>& entries() const { return entries_; }

  bool operator==(const Matrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && entries_ == o.entries_;
  }
  bool operator!=(const Matrix& o) const { return !(*this == o); }

  bool is_zero() const;

  Matrix operator*(const Matrix& o) const;
  Matrix operator+(const Matrix& o) const;
  Matrix operator-(const Matrix& o) const;
  Matrix scaled(const Scalar& s) const;
  Matrix transposed() const;
  Vec apply(const Vec& x) const;

  /// Kronecker product with left-major index flattening:
  /// (A (x) B)[(i,j),(k,l)] = A[i,k] * B[j,l], row index i*B.rows+j.
  static Matrix kron(const Matrix& a, const Matrix& b);

  Index rank() const;
  std::optional<Matrix> inverse() const;

 private:
  Index rows_, cols_;
  std::vector<Scalar> entries_;
};

/// Basis of the null space, exact; empty when the matrix is injective.
std::vector<Vec> kernel_basis(const Matrix& m);

/// Coefficients expressing `target` in the span of `generators`,
/// or nullopt when target is outside the span. All vectors must have
/// equal length (throws std::invalid_argument otherwise).
std::optional<Vec> solve_membership(const Vec& target,
                                    const std::vector<Vec>& generators);

/// Decides, for a functional l and functionals ls on the same space:
///   first  = [ intersection of Ker(ls[k]) is contained in Ker(l) ]
///   second = [ l lies in span(ls) ]
/// computed along independent routes (kernel bases vs. membership).
std::pair<bool, bool> kernel_containment_iff_span(const Vec& l,
                                                  const std::vector<Vec>& ls);

}  // namespace weakll
