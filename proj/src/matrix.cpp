#include "qfan/matrix.hpp"

#include "qfan/errors.hpp"

namespace qfan {

Vec vec_add(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) fail(ErrorCode::DimensionMismatch, "vector sizes differ");
  Vec r = a;
  for (std::size_t i = 0; i < r.size(); ++i) r[i] += b[i];
  return r;
}

Vec vec_sub(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) fail(ErrorCode::DimensionMismatch, "vector sizes differ");
  Vec r = a;
  for (std::size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
  return r;
}

Vec vec_scale(const Scalar& s, const Vec& v) {
  Vec r = v;
  for (auto& x : r) x = s * x;
  return r;
}

Scalar vec_dot(const Vec& a, const Vec& b) {
  if (a.size() != b.size() || a.empty())
    fail(ErrorCode::DimensionMismatch, "dot product dimension mismatch");
  Scalar s = a[0] * b[0];
  for (std::size_t i = 1; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

bool vec_is_zero(const Vec& v) {
  for (const auto& x : v)
    if (!x.is_zero()) return false;
  return true;
}

bool vec_positive_multiple(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) return false;
  if (vec_is_zero(a) || vec_is_zero(b)) return false;
  // find first nonzero of b, candidate lambda = a_i / b_i, then compare
  std::size_t i = 0;
  while (i < b.size() && b[i].is_zero()) ++i;
  if (i == b.size() || a[i].is_zero()) return false;
  Scalar lambda = a[i] / b[i];
  if (lambda.sign() <= 0) return false;
  for (std::size_t j = 0; j < a.size(); ++j)
    if (a[j] != lambda * b[j]) return false;
  return true;
}

Vec ray_normalize(const Vec& v) {
  std::size_t i = 0;
  while (i < v.size() && v[i].is_zero()) ++i;
  if (i == v.size()) return v;
  Scalar s = v[i].abs();
  Vec r = v;
  for (auto& x : r) x = x / s;
  return r;
}

ExactMatrix::ExactMatrix(int rows, int cols, FieldPtr field)
    : rows_(rows), cols_(cols), f_(std::move(field)) {
  e_.assign(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols), f_->zero());
}

ExactMatrix ExactMatrix::identity(int n, FieldPtr field) {
  ExactMatrix m(n, n, field);
  for (int i = 0; i < n; ++i) m.at(i, i) = field->one();
  return m;
}

ExactMatrix ExactMatrix::from_rows(const std::vector<Vec>& rows) {
  if (rows.empty() || rows[0].empty())
    fail(ErrorCode::DimensionMismatch, "from_rows needs at least one nonempty row");
  ExactMatrix m(static_cast<int>(rows.size()), static_cast<int>(rows[0].size()),
                rows[0][0].field());
  for (std::size_t i = 0; i < rows.size(); ++i) m.set_row(static_cast<int>(i), rows[i]);
  return m;
}

ExactMatrix ExactMatrix::from_columns(const std::vector<Vec>& cols) {
  if (cols.empty() || cols[0].empty())
    fail(ErrorCode::DimensionMismatch, "from_columns needs at least one nonempty column");
  ExactMatrix m(static_cast<int>(cols[0].size()), static_cast<int>(cols.size()),
                cols[0][0].field());
  for (std::size_t j = 0; j < cols.size(); ++j) m.set_col(static_cast<int>(j), cols[j]);
  return m;
}

Scalar& ExactMatrix::at(int i, int j) {
  return e_[static_cast<std::size_t>(i) * static_cast<std::size_t>(cols_) +
            static_cast<std::size_t>(j)];
}

const Scalar& ExactMatrix::at(int i, int j) const {
  return e_[static_cast<std::size_t>(i) * static_cast<std::size_t>(cols_) +
            static_cast<std::size_t>(j)];
}

Vec ExactMatrix::row(int i) const {
  Vec r;
  r.reserve(static_cast<std::size_t>(cols_));
  for (int j = 0; j < cols_; ++j) r.push_back(at(i, j));
  return r;
}

Vec ExactMatrix::col(int j) const {
  Vec r;
  r.reserve(static_cast<std::size_t>(rows_));
  for (int i = 0; i < rows_; ++i) r.push_back(at(i, j));
  return r;
}

void ExactMatrix::set_row(int i, const Vec& v) {
  if (static_cast<int>(v.size()) != cols_) fail(ErrorCode::DimensionMismatch, "bad row size");
  for (int j = 0; j < cols_; ++j) at(i, j) = v[static_cast<std::size_t>(j)];
}

void ExactMatrix::set_col(int j, const Vec& v) {
  if (static_cast<int>(v.size()) != rows_) fail(ErrorCode::DimensionMismatch, "bad column size");
  for (int i = 0; i < rows_; ++i) at(i, j) = v[static_cast<std::size_t>(i)];
}

ExactMatrix ExactMatrix::transpose() const {
  ExactMatrix m(cols_, rows_, f_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) m.at(j, i) = at(i, j);
  return m;
}

ExactMatrix operator*(const ExactMatrix& a, const ExactMatrix& b) {
  if (a.cols_ != b.rows_) fail(ErrorCode::DimensionMismatch, "matrix product shape mismatch");
  ExactMatrix m(a.rows_, b.cols_, a.f_);
  for (int i = 0; i < a.rows_; ++i)
    for (int k = 0; k < a.cols_; ++k) {
      const Scalar& aik = a.at(i, k);
      if (aik.is_zero()) continue;
      for (int j = 0; j < b.cols_; ++j) m.at(i, j) += aik * b.at(k, j);
    }
  return m;
}

ExactMatrix operator+(const ExactMatrix& a, const ExactMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
    fail(ErrorCode::DimensionMismatch, "matrix sum shape mismatch");
  ExactMatrix m = a;
  for (int i = 0; i < a.rows_; ++i)
    for (int j = 0; j < a.cols_; ++j) m.at(i, j) += b.at(i, j);
  return m;
}

ExactMatrix operator-(const ExactMatrix& a, const ExactMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
    fail(ErrorCode::DimensionMismatch, "matrix difference shape mismatch");
  ExactMatrix m = a;
  for (int i = 0; i < a.rows_; ++i)
    for (int j = 0; j < a.cols_; ++j) m.at(i, j) -= b.at(i, j);
  return m;
}

bool operator==(const ExactMatrix& a, const ExactMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) return false;
  for (int i = 0; i < a.rows_; ++i)
    for (int j = 0; j < a.cols_; ++j)
      if (a.at(i, j) != b.at(i, j)) return false;
  return true;
}

Vec ExactMatrix::apply(const Vec& x) const {
  if (static_cast<int>(x.size()) != cols_)
    fail(ErrorCode::DimensionMismatch, "matrix apply dimension mismatch");
  Vec r(static_cast<std::size_t>(rows_), f_->zero());
  for (int i = 0; i < rows_; ++i) {
    Scalar s = f_->zero();
    for (int j = 0; j < cols_; ++j) s += at(i, j) * x[static_cast<std::size_t>(j)];
    r[static_cast<std::size_t>(i)] = s;
  }
  return r;
}

namespace {

// Row echelon of a working copy; returns pivot columns. Optionally reduces
// fully (Gauss-Jordan) and can carry an augmented right-hand side.
struct Echelon {
  std::vector<Vec> rows;
  std::vector<int> pivot_cols;
};

Echelon echelon(const ExactMatrix& m, std::vector<Vec>* aug = nullptr) {
  Echelon e;
  e.rows.reserve(static_cast<std::size_t>(m.rows()));
  for (int i = 0; i < m.rows(); ++i) e.rows.push_back(m.row(i));
  int nrows = m.rows(), ncols = m.cols();
  int r = 0;
  for (int c = 0; c < ncols && r < nrows; ++c) {
    int pivot = -1;
    for (int i = r; i < nrows; ++i)
      if (!e.rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)].is_zero()) {
        pivot = i;
        break;
      }
    if (pivot < 0) continue;
    std::swap(e.rows[static_cast<std::size_t>(pivot)], e.rows[static_cast<std::size_t>(r)]);
    if (aug) std::swap((*aug)[static_cast<std::size_t>(pivot)], (*aug)[static_cast<std::size_t>(r)]);
    Scalar inv = e.rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)].inverse();
    e.rows[static_cast<std::size_t>(r)] = vec_scale(inv, e.rows[static_cast<std::size_t>(r)]);
    if (aug) (*aug)[static_cast<std::size_t>(r)] = vec_scale(inv, (*aug)[static_cast<std::size_t>(r)]);
    for (int i = 0; i < nrows; ++i) {
      if (i == r) continue;
      Scalar f = e.rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)];
      if (f.is_zero()) continue;
      e.rows[static_cast<std::size_t>(i)] =
          vec_sub(e.rows[static_cast<std::size_t>(i)],
                  vec_scale(f, e.rows[static_cast<std::size_t>(r)]));
      if (aug)
        (*aug)[static_cast<std::size_t>(i)] =
            vec_sub((*aug)[static_cast<std::size_t>(i)],
                    vec_scale(f, (*aug)[static_cast<std::size_t>(r)]));
    }
    e.pivot_cols.push_back(c);
    ++r;
  }
  return e;
}

}  // namespace

int ExactMatrix::rank() const {
  if (rows_ == 0 || cols_ == 0) return 0;
  return static_cast<int>(echelon(*this).pivot_cols.size());
}

std::vector<Vec> ExactMatrix::kernel_basis() const {
  std::vector<Vec> basis;
  if (cols_ == 0) return basis;
  if (rows_ == 0) {
    for (int j = 0; j < cols_; ++j) {
      Vec v(static_cast<std::size_t>(cols_), f_->zero());
      v[static_cast<std::size_t>(j)] = f_->one();
      basis.push_back(std::move(v));
    }
    return basis;
  }
  Echelon e = echelon(*this);
  std::vector<bool> is_pivot(static_cast<std::size_t>(cols_), false);
  for (int c : e.pivot_cols) is_pivot[static_cast<std::size_t>(c)] = true;
  for (int c = 0; c < cols_; ++c) {
    if (is_pivot[static_cast<std::size_t>(c)]) continue;
    Vec v(static_cast<std::size_t>(cols_), f_->zero());
    v[static_cast<std::size_t>(c)] = f_->one();
    for (std::size_t r = 0; r < e.pivot_cols.size(); ++r)
      v[static_cast<std::size_t>(e.pivot_cols[r])] = -e.rows[r][static_cast<std::size_t>(c)];
    basis.push_back(std::move(v));
  }
  return basis;
}

ExactMatrix ExactMatrix::inverse() const {
  if (rows_ != cols_) fail(ErrorCode::NotInvertible, "inverse of a non-square matrix");
  std::vector<Vec> aug;
  for (int i = 0; i < rows_; ++i) {
    Vec v(static_cast<std::size_t>(cols_), f_->zero());
    v[static_cast<std::size_t>(i)] = f_->one();
    aug.push_back(std::move(v));
  }
  Echelon e = echelon(*this, &aug);
  if (static_cast<int>(e.pivot_cols.size()) != rows_)
    fail(ErrorCode::NotInvertible, "matrix is singular");
  return ExactMatrix::from_rows(aug);
}

Scalar ExactMatrix::det() const {
  if (rows_ != cols_) fail(ErrorCode::DimensionMismatch, "determinant of a non-square matrix");
  // fraction-free not needed; elimination over the field with sign tracking
  std::vector<Vec> rows;
  for (int i = 0; i < rows_; ++i) rows.push_back(row(i));
  Scalar d = f_->one();
  int r = 0;
  for (int c = 0; c < cols_ && r < rows_; ++c) {
    int pivot = -1;
    for (int i = r; i < rows_; ++i)
      if (!rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)].is_zero()) {
        pivot = i;
        break;
      }
    if (pivot < 0) return f_->zero();
    if (pivot != r) {
      std::swap(rows[static_cast<std::size_t>(pivot)], rows[static_cast<std::size_t>(r)]);
      d = -d;
    }
    Scalar pv = rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
    d *= pv;
    Scalar inv = pv.inverse();
    for (int i = r + 1; i < rows_; ++i) {
      Scalar f = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)];
      if (f.is_zero()) continue;
      rows[static_cast<std::size_t>(i)] = vec_sub(
          rows[static_cast<std::size_t>(i)],
          vec_scale(f * inv, rows[static_cast<std::size_t>(r)]));
    }
    ++r;
  }
  if (r < rows_) return f_->zero();
  return d;
}

std::optional<Vec> ExactMatrix::solve(const Vec& b) const {
  if (static_cast<int>(b.size()) != rows_)
    fail(ErrorCode::DimensionMismatch, "solve: rhs size mismatch");
  std::vector<Vec> aug;
  for (const auto& x : b) aug.push_back(Vec{x});
  Echelon e = echelon(*this, &aug);
  // consistency: zero rows must have zero rhs
  for (int i = static_cast<int>(e.pivot_cols.size()); i < rows_; ++i)
    if (!aug[static_cast<std::size_t>(i)][0].is_zero()) return std::nullopt;
  Vec x(static_cast<std::size_t>(cols_), f_->zero());
  for (std::size_t r = 0; r < e.pivot_cols.size(); ++r)
    x[static_cast<std::size_t>(e.pivot_cols[r])] = aug[r][0];
  return x;
}

bool ExactMatrix::all_integer() const {
  for (const auto& s : e_)
    if (!s.is_integer()) return false;
  return true;
}

bool ExactMatrix::all_rational() const {
  for (const auto& s : e_)
    if (!s.is_rational()) return false;
  return true;
}

Vec solve_affine_projection(const ExactMatrix& constraint, const Vec& rhs, const Vec& anchor) {
  auto x0 = constraint.solve(rhs);
  if (!x0) fail(ErrorCode::Infeasible, "constraint system is infeasible");
  if (anchor.size() != x0->size())
    fail(ErrorCode::DimensionMismatch, "anchor dimension mismatch");
  std::vector<Vec> kernel = constraint.kernel_basis();
  if (kernel.empty()) return *x0;
  ExactMatrix K = ExactMatrix::from_columns(kernel);
  ExactMatrix Kt = K.transpose();
  ExactMatrix gram = Kt * K;
  Vec target = Kt.apply(vec_sub(anchor, *x0));
  auto y = gram.solve(target);
  // Gram matrix of independent columns is invertible
  Vec x = vec_add(*x0, K.apply(*y));
  return x;
}

}  // namespace qfan
