#include "bpb/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "bpb/kernels.hpp"

namespace bpb {

namespace {
constexpr double kPi = std::numbers::pi;
}

ComplexMatrix hermitian_part(const ComplexMatrix& t) {
  ComplexMatrix h(t.dim());
  for (std::size_t i = 0; i < t.dim(); ++i)
    for (std::size_t j = 0; j < t.dim(); ++j)
      h(i, j) = 0.5 * (t(i, j) + std::conj(t(j, i)));
  return h;
}

ComplexMatrix skew_part_hermitian(const ComplexMatrix& t) {
  const Complex half_over_i(0.0, -0.5);
  ComplexMatrix h(t.dim());
  for (std::size_t i = 0; i < t.dim(); ++i)
    for (std::size_t j = 0; j < t.dim(); ++j)
      h(i, j) = half_over_i * (t(i, j) - std::conj(t(j, i)));
  return h;
}

// ----------------------------------------------------------------------
// cyclic complex Jacobi
// ----------------------------------------------------------------------

EigenDecomposition hermitian_eig(const ComplexMatrix& input) {
  const std::size_t n = input.dim();
  const double fro_in = frobenius_norm(input);
  {
    double defect_sq = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        defect_sq += std::norm(input(i, j) - std::conj(input(j, i)));
    if (std::sqrt(defect_sq) > 1e-8 * std::max(1.0, fro_in))
      fail(ErrorCode::NotHermitian, "Hermitian defect " + std::to_string(std::sqrt(defect_sq)));
  }

  ComplexMatrix a = hermitian_part(input);
  ComplexMatrix v = ComplexMatrix::identity(n);
  EigenDecomposition out;
  if (n == 1) {
    out.eigenvalues = {a(0, 0).real()};
    out.eigenvectors = v;
    return out;
  }

  const double fro = frobenius_norm(a);
  const double off_threshold = 1e-13 * fro;
  const double elem_threshold = off_threshold / (2.0 * static_cast<double>(n));
  const std::size_t budget = 30 * n * n;
  std::size_t rotations = 0;

  for (;;) {
    double off_sq = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off_sq += std::norm(a(p, q));
    if (std::sqrt(2.0 * off_sq) <= off_threshold) break;

    bool rotated = false;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const Complex apq = a(p, q);
        const double g = std::abs(apq);
        if (g <= elem_threshold) continue;
        if (++rotations > budget)
          fail(ErrorCode::NoConvergence, "Jacobi sweep budget exhausted");
        rotated = true;

        const double alpha = a(p, p).real();
        const double beta = a(q, q).real();
        const Complex phase = apq / g;
        const double psi = (alpha - beta) / (2.0 * g);
        const double t = (psi >= 0.0) ? -1.0 / (psi + std::sqrt(psi * psi + 1.0))
                                      : 1.0 / (-psi + std::sqrt(psi * psi + 1.0));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;

        const double app_new = c * c * alpha - 2.0 * c * s * g + s * s * beta;
        const double aqq_new = s * s * alpha + 2.0 * c * s * g + c * c * beta;

        for (std::size_t r = 0; r < n; ++r) {
          const Complex tp = a(r, p), tq = a(r, q);
          a(r, p) = c * tp - s * std::conj(phase) * tq;
          a(r, q) = s * phase * tp + c * tq;
        }
        for (std::size_t r = 0; r < n; ++r) {
          const Complex tp = a(p, r), tq = a(q, r);
          a(p, r) = c * tp - s * phase * tq;
          a(q, r) = s * std::conj(phase) * tp + c * tq;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = app_new;
        a(q, q) = aqq_new;

        for (std::size_t r = 0; r < n; ++r) {
          const Complex tp = v(r, p), tq = v(r, q);
          v(r, p) = c * tp - s * std::conj(phase) * tq;
          v(r, q) = s * phase * tp + c * tq;
        }
      }
    }
    if (!rotated) break;
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return a(i, i).real() > a(j, j).real(); });

  out.eigenvalues.resize(n);
  out.eigenvectors = ComplexMatrix(n);
  for (std::size_t col = 0; col < n; ++col) {
    out.eigenvalues[col] = a(order[col], order[col]).real();
    for (std::size_t r = 0; r < n; ++r) out.eigenvectors(r, col) = v(r, order[col]);
  }
  return out;
}

// ----------------------------------------------------------------------
// norms
// ----------------------------------------------------------------------

double lambda_max_hermitian(const ComplexMatrix& h) {
  kernels::HermitianWorkspace ws;
  return kernels::lambda_max_tridiag(h.data(), h.dim(), ws);
}

double lambda_min_hermitian(const ComplexMatrix& h) {
  kernels::HermitianWorkspace ws;
  return kernels::lambda_min_tridiag(h.data(), h.dim(), ws);
}

double operator_norm(const ComplexMatrix& t) {
  if (t.dim() == 1) return std::abs(t(0, 0));
  const ComplexMatrix gram = adjoint(t) * t;
  return std::sqrt(std::max(0.0, lambda_max_hermitian(gram)));
}

std::vector<double> singular_values(const ComplexMatrix& t) {
  const ComplexMatrix gram = adjoint(t) * t;
  EigenDecomposition eig = hermitian_eig(gram);
  std::vector<double> s(t.dim());
  for (std::size_t j = 0; j < t.dim(); ++j) s[j] = std::sqrt(std::max(0.0, eig.eigenvalues[j]));
  return s;
}

double schatten_norm(const ComplexMatrix& t, double p) {
  if (std::isinf(p)) return operator_norm(t);
  if (!(p >= 1.0)) fail(ErrorCode::InvalidP, "Schatten exponent must satisfy p >= 1");
  const std::vector<double> s = singular_values(t);
  const double top = s.empty() ? 0.0 : s.front();
  if (top == 0.0) return 0.0;
  double sum = 0.0;
  for (double v : s) sum += std::pow(v / top, p);
  return top * std::pow(sum, 1.0 / p);
}

// ----------------------------------------------------------------------
// polar decomposition via the Gram eigensystem
// ----------------------------------------------------------------------

namespace {
ComplexVector matrix_column(const ComplexMatrix& m, std::size_t col) {
  ComplexVector v(m.dim());
  for (std::size_t r = 0; r < m.dim(); ++r) v[r] = m(r, col);
  return v;
}

// Orthogonalizes v against the first `count` columns of basis (twice, for
// stability) and normalizes; returns false if v collapses.
bool gram_schmidt_insert(ComplexMatrix& basis, std::size_t count, ComplexVector& v) {
  for (int pass = 0; pass < 2; ++pass) {
    for (std::size_t j = 0; j < count; ++j) {
      Complex proj = 0.0;
      for (std::size_t r = 0; r < basis.dim(); ++r) proj += v[r] * std::conj(basis(r, j));
      for (std::size_t r = 0; r < basis.dim(); ++r) v[r] -= proj * basis(r, j);
    }
  }
  const double nrm = vec_norm(v);
  if (nrm < 0.5) return false;
  for (Complex& x : v) x /= nrm;
  return true;
}
}  // namespace

PolarFactors polar_decompose(const ComplexMatrix& t) {
  const std::size_t n = t.dim();
  const ComplexMatrix gram = adjoint(t) * t;
  EigenDecomposition eig = hermitian_eig(gram);
  const ComplexMatrix& w = eig.eigenvectors;

  const double smax = std::sqrt(std::max(0.0, eig.eigenvalues[0]));
  const double rank_tol = 1e-12 * smax;

  ComplexMatrix uhat(n);
  std::vector<double> svals(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    ComplexVector wj = matrix_column(w, j);
    ComplexVector img = t.apply(wj);
    const double nrm = vec_norm(img);
    svals[j] = nrm;
    bool placed = false;
    if (nrm > rank_tol && smax > 0.0) {
      for (Complex& x : img) x /= nrm;
      if (gram_schmidt_insert(uhat, j, img)) {
        for (std::size_t r = 0; r < n; ++r) uhat(r, j) = img[r];
        placed = true;
      }
    }
    if (!placed) {
      // kernel direction: complete with the eigenvector itself, falling back
      // to standard basis vectors until one survives orthogonalization
      ComplexVector cand = wj;
      if (!gram_schmidt_insert(uhat, j, cand)) {
        for (std::size_t b = 0; b < n && !placed; ++b) {
          cand.assign(n, Complex(0.0));
          cand[b] = 1.0;
          placed = gram_schmidt_insert(uhat, j, cand);
        }
        if (!placed) fail(ErrorCode::NoConvergence, "isometry completion failed");
      }
      for (std::size_t r = 0; r < n; ++r) uhat(r, j) = cand[r];
    }
  }

  // modulus = W diag(s) W*, isometry = Uhat W*
  ComplexMatrix ws(n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t j = 0; j < n; ++j) ws(r, j) = w(r, j) * svals[j];
  const ComplexMatrix wadj = adjoint(w);
  PolarFactors out;
  out.modulus = ws * wadj;
  ComplexMatrix us(n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t j = 0; j < n; ++j) us(r, j) = uhat(r, j);
  out.isometry_part = us * wadj;
  return out;
}

// ----------------------------------------------------------------------
// numerical radius
// ----------------------------------------------------------------------

namespace {
constexpr std::size_t kSweepAngles = 720;

ComplexMatrix rotated_hermitian(const ComplexMatrix& hr, const ComplexMatrix& hi, double angle) {
  const double c = std::cos(angle), s = std::sin(angle);
  ComplexMatrix h(hr.dim());
  for (std::size_t i = 0; i < hr.dim(); ++i)
    for (std::size_t j = 0; j < hr.dim(); ++j) h(i, j) = c * hr(i, j) - s * hi(i, j);
  return h;
}

double profile_value(const ComplexMatrix& hr, const ComplexMatrix& hi, double angle,
                     kernels::HermitianWorkspace& ws, std::vector<Complex>& scratch) {
  const std::size_t n = hr.dim();
  scratch.resize(n * n);
  const double c = std::cos(angle), s = std::sin(angle);
  const Complex* r = hr.data();
  const Complex* im = hi.data();
  for (std::size_t k = 0; k < n * n; ++k) scratch[k] = c * r[k] - s * im[k];
  return kernels::lambda_max_tridiag(scratch.data(), n, ws);
}

// Golden-section maximization of the angle profile on [lo, hi].
double golden_refine(const ComplexMatrix& hr, const ComplexMatrix& hi, double lo, double hi_ang,
                     double tol, double* best_angle) {
  kernels::HermitianWorkspace ws;
  std::vector<Complex> scratch;
  constexpr double invphi = 0.6180339887498949;
  const double scale = std::max(1.0, frobenius_norm(hr) + frobenius_norm(hi));
  const double width_target = std::max(1e-12, tol / scale);

  double a = lo, b = hi_ang;
  double x1 = b - invphi * (b - a);
  double x2 = a + invphi * (b - a);
  double f1 = profile_value(hr, hi, x1, ws, scratch);
  double f2 = profile_value(hr, hi, x2, ws, scratch);
  while (b - a > width_target) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + invphi * (b - a);
      f2 = profile_value(hr, hi, x2, ws, scratch);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - invphi * (b - a);
      f1 = profile_value(hr, hi, x1, ws, scratch);
    }
  }
  *best_angle = (f1 >= f2) ? x1 : x2;
  return std::max(f1, f2);
}

// Monotone ascent of |<T x, x>|: alternate the optimal phase with shifted
// power steps on the rotated Hermitian part.
UnitVector ascent_polish(const ComplexMatrix& t, const ComplexMatrix& hr, const ComplexMatrix& hi,
                         const UnitVector& start, int max_rounds) {
  ComplexVector x = start.entries();
  const std::size_t n = t.dim();
  const double shift = frobenius_norm(hr) + frobenius_norm(hi) + 1.0;
  double best = std::abs(inner(t.apply(x), x));
  for (int round = 0; round < max_rounds; ++round) {
    const Complex z = inner(t.apply(x), x);
    const double angle = (std::abs(z) == 0.0) ? 0.0 : -std::arg(z);
    const ComplexMatrix h = rotated_hermitian(hr, hi, angle);
    for (int sub = 0; sub < 8; ++sub) {
      ComplexVector y = h.apply(x);
      for (std::size_t i = 0; i < n; ++i) y[i] += shift * x[i];
      const double nrm = vec_norm(y);
      if (nrm == 0.0) break;
      for (std::size_t i = 0; i < n; ++i) x[i] = y[i] / nrm;
    }
    const double val = std::abs(inner(t.apply(x), x));
    if (val <= best + 1e-15) {
      best = val;
      break;
    }
    best = val;
  }
  return UnitVector::normalized(std::move(x));
}

struct SweepOutcome {
  double value;
  double best_angle;
};

SweepOutcome radius_sweep(const ComplexMatrix& hr, const ComplexMatrix& hi, double tol) {
  std::vector<double> angles(kSweepAngles);
  for (std::size_t k = 0; k < kSweepAngles; ++k)
    angles[k] = 2.0 * kPi * static_cast<double>(k) / kSweepAngles;
  std::vector<double> profile(kSweepAngles);
  kernels::radius_profile(hr, hi, angles, profile.data());

  std::size_t best = 0;
  for (std::size_t k = 1; k < kSweepAngles; ++k)
    if (profile[k] > profile[best]) best = k;

  const double step = 2.0 * kPi / kSweepAngles;
  double refined_angle = angles[best];
  const double refined =
      golden_refine(hr, hi, angles[best] - step, angles[best] + step, tol, &refined_angle);
  SweepOutcome out{};
  if (refined >= profile[best]) {
    out.value = refined;
    out.best_angle = refined_angle;
  } else {
    out.value = profile[best];
    out.best_angle = angles[best];
  }
  return out;
}

UnitVector top_eigenvector(const ComplexMatrix& h) {
  EigenDecomposition eig = hermitian_eig(h);
  ComplexVector v(h.dim());
  for (std::size_t r = 0; r < h.dim(); ++r) v[r] = eig.eigenvectors(r, 0);
  return UnitVector::normalized(std::move(v));
}
}  // namespace

double numerical_radius_value(const ComplexMatrix& t, double tol) {
  if (!(tol > 0.0)) fail(ErrorCode::InvalidArgument, "tolerance must be positive");
  if (frobenius_norm(t) == 0.0) return 0.0;
  const ComplexMatrix hr = hermitian_part(t);
  const ComplexMatrix hi = skew_part_hermitian(t);
  return radius_sweep(hr, hi, tol).value;
}

RadiusResult numerical_radius(const ComplexMatrix& t, double tol) {
  if (!(tol > 0.0)) fail(ErrorCode::InvalidArgument, "tolerance must be positive");
  const std::size_t n = t.dim();
  if (frobenius_norm(t) == 0.0) return {0.0, UnitVector::basis(n, 0)};

  const ComplexMatrix hr = hermitian_part(t);
  const ComplexMatrix hi = skew_part_hermitian(t);
  const SweepOutcome sweep = radius_sweep(hr, hi, tol);

  UnitVector witness = top_eigenvector(rotated_hermitian(hr, hi, sweep.best_angle));
  witness = ascent_polish(t, hr, hi, witness, 40);
  const double attained = std::abs(quadratic_form(t, witness));
  return {std::max(sweep.value, attained), witness};
}

RadiusResult numerical_radius_seeded(const ComplexMatrix& t, double tol, const UnitVector& seed) {
  if (!(tol > 0.0)) fail(ErrorCode::InvalidArgument, "tolerance must be positive");
  if (t.dim() != seed.dim()) fail(ErrorCode::DimensionMismatch, "seed dimension mismatch");
  if (frobenius_norm(t) == 0.0) return {0.0, seed};

  const ComplexMatrix hr = hermitian_part(t);
  const ComplexMatrix hi = skew_part_hermitian(t);
  const SweepOutcome sweep = radius_sweep(hr, hi, tol);

  const UnitVector local = ascent_polish(t, hr, hi, seed, 120);
  const double local_val = std::abs(quadratic_form(t, local));
  return {std::max(sweep.value, local_val), local};
}

// ----------------------------------------------------------------------
// class membership
// ----------------------------------------------------------------------

const char* class_name(OperatorClass c) {
  switch (c) {
    case OperatorClass::General: return "general";
    case OperatorClass::Positive: return "positive";
    case OperatorClass::SelfAdjoint: return "selfadjoint";
    case OperatorClass::AntiSymmetric: return "antisymmetric";
    case OperatorClass::Unitary: return "unitary";
    case OperatorClass::Normal: return "normal";
    case OperatorClass::SchattenP: return "schatten";
  }
  return "unknown";
}

std::optional<OperatorClass> class_from_name(const std::string& name) {
  for (OperatorClass c : {OperatorClass::General, OperatorClass::Positive,
                          OperatorClass::SelfAdjoint, OperatorClass::AntiSymmetric,
                          OperatorClass::Unitary, OperatorClass::Normal, OperatorClass::SchattenP})
    if (name == class_name(c)) return c;
  return std::nullopt;
}

double default_class_tol(const ComplexMatrix& t) {
  return 1e-8 * std::max(1.0, operator_norm(t));
}

bool class_check(const ComplexMatrix& t, OperatorClass c, double tol) {
  if (!(tol > 0.0)) fail(ErrorCode::InvalidArgument, "tolerance must be positive");
  const ComplexMatrix tadj = adjoint(t);
  switch (c) {
    case OperatorClass::General:
    case OperatorClass::SchattenP:
      return true;
    case OperatorClass::SelfAdjoint:
      return operator_norm(t - tadj) <= tol;
    case OperatorClass::AntiSymmetric:
      return operator_norm(t + tadj) <= tol;
    case OperatorClass::Unitary:
      return operator_norm(tadj * t - ComplexMatrix::identity(t.dim())) <= tol;
    case OperatorClass::Normal:
      return operator_norm(t * tadj - tadj * t) <= tol;
    case OperatorClass::Positive: {
      if (operator_norm(t - tadj) > tol) return false;
      return lambda_min_hermitian(hermitian_part(t)) >= -tol;
    }
  }
  return false;
}

}  // namespace bpb
