#include "bpb/complex_matrix.hpp"

#include <cmath>

#include "bpb/kernels.hpp"

namespace bpb {

ComplexMatrix::ComplexMatrix(std::size_t dim, std::initializer_list<Complex> values)
    : ComplexMatrix(dim) {
  if (values.size() != dim * dim)
    fail(ErrorCode::InvalidArgument, "initializer size does not match dim*dim");
  std::size_t k = 0;
  for (const Complex& v : values) entries_[k++] = v;
}

ComplexMatrix ComplexMatrix::identity(std::size_t dim) {
  ComplexMatrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
  return m;
}

bool ComplexMatrix::all_finite() const noexcept {
  for (const Complex& v : entries_)
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
  return true;
}

namespace {
void require_same_dim(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.dim() != b.dim()) fail(ErrorCode::DimensionMismatch, "matrix dims differ");
}
}  // namespace

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& rhs) {
  require_same_dim(*this, rhs);
  for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] += rhs.entries_[k];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& rhs) {
  require_same_dim(*this, rhs);
  for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] -= rhs.entries_[k];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex scale) {
  for (Complex& v : entries_) v *= scale;
  return *this;
}

ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix& rhs) { return lhs += rhs; }
ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix& rhs) { return lhs -= rhs; }
ComplexMatrix operator*(Complex scale, ComplexMatrix m) { return m *= scale; }

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_dim(a, b);
  ComplexMatrix c(a.dim());
  kernels::matmul(a.data(), b.data(), c.data(), a.dim());
  return c;
}

ComplexMatrix adjoint(const ComplexMatrix& m) {
  ComplexMatrix r(m.dim());
  for (std::size_t i = 0; i < m.dim(); ++i)
    for (std::size_t j = 0; j < m.dim(); ++j) r(j, i) = std::conj(m(i, j));
  return r;
}

double frobenius_norm(const ComplexMatrix& m) {
  double sum = 0.0;
  for (std::size_t i = 0; i < m.dim(); ++i)
    for (std::size_t j = 0; j < m.dim(); ++j) sum += std::norm(m(i, j));
  return std::sqrt(sum);
}

Complex trace(const ComplexMatrix& m) {
  Complex t = 0.0;
  for (std::size_t i = 0; i < m.dim(); ++i) t += m(i, i);
  return t;
}

Complex inner(const ComplexVector& u, const ComplexVector& v) {
  if (u.size() != v.size()) fail(ErrorCode::DimensionMismatch, "vector dims differ");
  Complex s = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) s += u[i] * std::conj(v[i]);
  return s;
}

double vec_norm(const ComplexVector& v) {
  double sum = 0.0;
  for (const Complex& x : v) sum += std::norm(x);
  return std::sqrt(sum);
}

std::vector<Complex> ComplexMatrix::apply(const std::vector<Complex>& v) const {
  if (dim_ != v.size()) fail(ErrorCode::DimensionMismatch, "matrix/vector dims differ");
  std::vector<Complex> out(dim_, Complex(0.0));
  const Complex* row = entries_.data();
  for (std::size_t i = 0; i < dim_; ++i, row += dim_) {
    Complex s = 0.0;
    for (std::size_t j = 0; j < dim_; ++j) s += row[j] * v[j];
    out[i] = s;
  }
  return out;
}

ComplexMatrix outer(const ComplexVector& u, const ComplexVector& v) {
  if (u.size() != v.size()) fail(ErrorCode::DimensionMismatch, "vector dims differ");
  ComplexMatrix m(u.size());
  for (std::size_t i = 0; i < u.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) m(i, j) = u[i] * std::conj(v[j]);
  return m;
}

UnitVector::UnitVector(ComplexVector entries) : entries_(std::move(entries)) {
  if (entries_.empty()) fail(ErrorCode::InvalidArgument, "unit vector needs dim >= 1");
  const double n = vec_norm(entries_);
  if (std::abs(n - 1.0) > 1e-12)
    fail(ErrorCode::InvalidArgument, "vector norm " + std::to_string(n) + " is not 1");
}

UnitVector UnitVector::normalized(ComplexVector entries) {
  const double n = vec_norm(entries);
  if (n == 0.0) fail(ErrorCode::InvalidArgument, "cannot normalize the zero vector");
  for (Complex& x : entries) x /= n;
  return UnitVector(std::move(entries));
}

UnitVector UnitVector::basis(std::size_t dim, std::size_t index) {
  ComplexVector v(dim, Complex(0.0));
  v.at(index) = 1.0;
  return UnitVector(std::move(v));
}

double distance(const UnitVector& a, const UnitVector& b) {
  if (a.dim() != b.dim()) fail(ErrorCode::DimensionMismatch, "vector dims differ");
  double sum = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) sum += std::norm(a[i] - b[i]);
  return std::sqrt(sum);
}

Complex inner(const UnitVector& u, const UnitVector& v) { return inner(u.entries(), v.entries()); }

Complex quadratic_form(const ComplexMatrix& m, const UnitVector& x) {
  return inner(m.apply(x.entries()), x.entries());
}

}  // namespace bpb
