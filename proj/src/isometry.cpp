#include "bpb/isometry.hpp"

#include <cmath>

#include "bpb/linalg.hpp"

namespace bpb {

ComplexMatrix transitive_isometry(const UnitVector& x, const UnitVector& y) {
  if (x.dim() != y.dim()) fail(ErrorCode::DimensionMismatch, "x and y dims differ");
  const std::size_t n = x.dim();
  const Complex alpha = inner(y, x);  // y = alpha x + beta w

  ComplexVector residual(n);
  for (std::size_t i = 0; i < n; ++i) residual[i] = y[i] - alpha * x[i];
  const double beta = vec_norm(residual);

  ComplexMatrix r = ComplexMatrix::identity(n);
  if (beta <= 1e-13) {
    // y is a phase multiple of x: rank-one phase correction on span{x}
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) r(i, j) += (alpha - 1.0) * x[i] * std::conj(x[j]);
  } else {
    ComplexVector w = residual;
    for (Complex& c : w) c /= beta;
    // On the (x, w) plane the block [[alpha, -beta], [beta, conj(alpha)]]
    // realises the minimal-distance rotation; identity elsewhere.
    const Complex axx = alpha - 1.0;
    const Complex aww = std::conj(alpha) - 1.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        const Complex xj = std::conj(x[j]);
        const Complex wj = std::conj(w[j]);
        r(i, j) += axx * x[i] * xj + beta * w[i] * xj - beta * x[i] * wj + aww * w[i] * wj;
      }
  }

  const double target = distance(x, y);
  const double achieved = operator_norm(r - ComplexMatrix::identity(n));
  if (std::abs(achieved - target) > 1e-8)
    fail(ErrorCode::NoConvergence, "rotation misses the distance identity by " +
                                       std::to_string(std::abs(achieved - target)));
  return r;
}

ComplexMatrix conjugate_transport(const ComplexMatrix& t, const UnitVector& x,
                                  const UnitVector& y) {
  if (t.dim() != x.dim() || t.dim() != y.dim())
    fail(ErrorCode::DimensionMismatch, "operator and point dims differ");
  const ComplexMatrix r = transitive_isometry(x, y);
  return adjoint(r) * t * r;
}

ComplexMatrix pointify(const ComplexMatrix& s_tilde, const UnitVector& x1, const UnitVector& x0,
                       AttainMode mode) {
  if (s_tilde.dim() != x1.dim() || s_tilde.dim() != x0.dim())
    fail(ErrorCode::DimensionMismatch, "operator and point dims differ");

  if (mode == AttainMode::Nu) {
    const double nu = numerical_radius_value(s_tilde, 1e-9);
    if (std::abs(nu - 1.0) > 1e-8)
      fail(ErrorCode::PreconditionViolated,
           "nu(S~) = " + std::to_string(nu) + " is not 1 within 1e-8");
    const double attained = std::abs(quadratic_form(s_tilde, x1));
    if (std::abs(attained - 1.0) > 1e-8)
      fail(ErrorCode::PreconditionViolated,
           "|<S~ x1, x1>| = " + std::to_string(attained) + " is not 1 within 1e-8");
  } else {
    const double norm = operator_norm(s_tilde);
    const double at_x1 = vec_norm(s_tilde.apply(x1.entries()));
    if (std::abs(norm - 1.0) > 1e-8 || std::abs(at_x1 - 1.0) > 1e-8)
      fail(ErrorCode::PreconditionViolated, "||S~|| = " + std::to_string(norm) +
                                                ", ||S~ x1|| = " + std::to_string(at_x1) +
                                                "; both must be 1 within 1e-8");
  }

  return conjugate_transport(s_tilde, x0, x1);
}

}  // namespace bpb
