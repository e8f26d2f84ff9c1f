#include "weakll/matrix.hpp"

#include <stdexcept>

namespace weakll {

Matrix Matrix::identity(Index n) {
  Matrix m(n, n);
  for (Index i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

bool Matrix::is_zero() const {
  for (const auto& e : entries_)
    if (e != 0) return false;
  return true;
}

Matrix Matrix::operator*(const Matrix& o) const {
  if (cols_ != o.rows_) throw std::invalid_argument("matrix product: shape mismatch");
  Matrix r(rows_, o.cols_);
  for (Index i = 0; i < rows_; ++i)
    for (Index k = 0; k < cols_; ++k) {
      const Scalar& a = at(i, k);
      if (a == 0) continue;
      for (Index j = 0; j < o.cols_; ++j) {
        const Scalar& b = o.at(k, j);
        if (b != 0) r.at(i, j) += a * b;
      }
    }
  return r;
}

Matrix Matrix::operator+(const Matrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_)
    throw std::invalid_argument("matrix sum: shape mismatch");
  Matrix r(rows_, cols_);
  for (size_t i = 0; i < entries_.size(); ++i) r.entries_[i] = entries_[i] + o.entries_[i];
  return r;
}

Matrix Matrix::operator-(const Matrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_)
    throw std::invalid_argument("matrix difference: shape mismatch");
  Matrix r(rows_, cols_);
  for (size_t i = 0; i < entries_.size(); ++i) r.entries_[i] = entries_[i] - o.entries_[i];
  return r;
}

Matrix Matrix::scaled(const Scalar& s) const {
  Matrix r(rows_, cols_);
  for (size_t i = 0; i < entries_.size(); ++i) r.entries_[i] = entries_[i] * s;
  return r;
}

Matrix Matrix::transposed() const {
  Matrix r(cols_, rows_);
  for (Index i = 0; i < rows_; ++i)
    for (Index j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
  return r;
}

Vec Matrix::apply(const Vec& x) const {
  if (static_cast<Index>(x.size()) != cols_)
    throw std::invalid_argument("matrix apply: dimension mismatch");
  Vec y(static_cast<size_t>(rows_));
  for (Index i = 0; i < rows_; ++i) {
    Scalar acc = 0;
    for (Index j = 0; j < cols_; ++j)
      if (at(i, j) != 0 && x[static_cast<size_t>(j)] != 0)
        acc += at(i, j) * x[static_cast<size_t>(j)];
    y[static_cast<size_t>(i)] = acc;
  }
  return y;
}

Matrix Matrix::kron(const Matrix& a, const Matrix& b) {
  Matrix r(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index k = 0; k < a.cols(); ++k) {
      const Scalar& av = a.at(i, k);
      if (av == 0) continue;
      for (Index j = 0; j < b.rows(); ++j)
        for (Index l = 0; l < b.cols(); ++l) {
          const Scalar& bv = b.at(j, l);
          if (bv != 0) r.at(i * b.rows() + j, k * b.cols() + l) = av * bv;
        }
    }
  return r;
}

namespace {

// Row echelon reduction with first-nonzero pivoting. Returns pivot
// column of each pivot row; `m` ends in reduced row echelon form.
std::vector<Index> rref(Matrix& m) {
  std::vector<Index> pivots;
  Index row = 0;
  for (Index col = 0; col < m.cols() && row < m.rows(); ++col) {
    Index pr = -1;
    for (Index i = row; i < m.rows(); ++i)
      if (m.at(i, col) != 0) {
        pr = i;
        break;
      }
    if (pr < 0) continue;
    if (pr != row)
      for (Index j = 0; j < m.cols(); ++j) std::swap(m.at(pr, j), m.at(row, j));
    const Scalar inv = Scalar(1) / m.at(row, col);
    for (Index j = col; j < m.cols(); ++j) m.at(row, j) *= inv;
    for (Index i = 0; i < m.rows(); ++i) {
      if (i == row || m.at(i, col) == 0) continue;
      const Scalar f = m.at(i, col);
      for (Index j = col; j < m.cols(); ++j) m.at(i, j) -= f * m.at(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

}  // namespace

Index Matrix::rank() const {
  Matrix m = *this;
  return static_cast<Index>(rref(m).size());
}

std::optional<Matrix> Matrix::inverse() const {
  if (rows_ != cols_) return std::nullopt;
  Matrix aug(rows_, 2 * cols_);
  for (Index i = 0; i < rows_; ++i) {
    for (Index j = 0; j < cols_; ++j) aug.at(i, j) = at(i, j);
    aug.at(i, cols_ + i) = 1;
  }
  auto pivots = rref(aug);
  Index left_pivots = 0;
  for (Index p : pivots)
    if (p < cols_) ++left_pivots;
  if (left_pivots != rows_) return std::nullopt;
  Matrix inv(rows_, cols_);
  for (Index i = 0; i < rows_; ++i)
    for (Index j = 0; j < cols_; ++j) inv.at(i, j) = aug.at(i, cols_ + j);
  return inv;
}

std::vector<Vec> kernel_basis(const Matrix& m) {
  Matrix r = m;
  auto pivots = rref(r);
  std::vector<bool> is_pivot(static_cast<size_t>(m.cols()), false);
  for (Index p : pivots) is_pivot[static_cast<size_t>(p)] = true;
  std::vector<Vec> basis;
  for (Index free = 0; free < m.cols(); ++free) {
    if (is_pivot[static_cast<size_t>(free)]) continue;
    Vec v(static_cast<size_t>(m.cols()));
    v[static_cast<size_t>(free)] = 1;
    for (size_t pr = 0; pr < pivots.size(); ++pr)
      v[static_cast<size_t>(pivots[pr])] = -r.at(static_cast<Index>(pr), free);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<Vec> solve_membership(const Vec& target,
                                    const std::vector<Vec>& generators) {
  const Index dim = static_cast<Index>(target.size());
  for (const auto& g : generators)
    if (static_cast<Index>(g.size()) != dim)
      throw std::invalid_argument("solve_membership: dimension mismatch");
  const Index n = static_cast<Index>(generators.size());
  Matrix aug(dim, n + 1);
  for (Index i = 0; i < dim; ++i) {
    for (Index j = 0; j < n; ++j) aug.at(i, j) = generators[static_cast<size_t>(j)][static_cast<size_t>(i)];
    aug.at(i, n) = target[static_cast<size_t>(i)];
  }
  auto pivots = rref(aug);
  // Inconsistent iff the augmented column is a pivot.
  if (!pivots.empty() && pivots.back() == n) return std::nullopt;
  Vec coeffs(static_cast<size_t>(n));
  for (size_t pr = 0; pr < pivots.size(); ++pr)
    coeffs[static_cast<size_t>(pivots[pr])] = aug.at(static_cast<Index>(pr), n);
  return coeffs;
}

std::pair<bool, bool> kernel_containment_iff_span(const Vec& l,
                                                  const std::vector<Vec>& ls) {
  const size_t dim = l.size();
  for (const auto& f : ls)
    if (f.size() != dim)
      throw std::invalid_argument("kernel_containment_iff_span: dimension mismatch");

  Matrix stacked(static_cast<Index>(ls.size()), static_cast<Index>(dim));
  for (size_t i = 0; i < ls.size(); ++i)
    for (size_t j = 0; j < dim; ++j)
      stacked.at(static_cast<Index>(i), static_cast<Index>(j)) = ls[i][j];

  bool contained = true;
  for (const auto& v : kernel_basis(stacked)) {
    Scalar acc = 0;
    for (size_t j = 0; j < dim; ++j) acc += l[j] * v[j];
    if (acc != 0) {
      contained = false;
      break;
    }
  }
  const bool in_span = solve_membership(l, ls).has_value();
  return {contained, in_span};
}

}  // namespace weakll
