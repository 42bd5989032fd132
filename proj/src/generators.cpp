#include "bpb/generators.hpp"

#include <cmath>

#include "bpb/nu_correction.hpp"
#include "bpb/spectral.hpp"

namespace bpb {

ComplexMatrix random_complex_gaussian(std::size_t dim, Rng& rng) {
  ComplexMatrix m(dim);
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j) m(i, j) = rng.complex_gaussian();
  return m;
}

UnitVector random_unit_vector(std::size_t dim, Rng& rng) {
  ComplexVector v(dim);
  for (std::size_t i = 0; i < dim; ++i) v[i] = rng.complex_gaussian();
  return UnitVector::normalized(std::move(v));
}

ComplexMatrix random_unitary(std::size_t dim, Rng& rng) {
  // modified Gram-Schmidt on a Gaussian matrix, two passes per column
  ComplexMatrix g = random_complex_gaussian(dim, rng);
  ComplexMatrix q(dim);
  for (std::size_t col = 0; col < dim; ++col) {
    ComplexVector v(dim);
    for (std::size_t r = 0; r < dim; ++r) v[r] = g(r, col);
    for (int pass = 0; pass < 2; ++pass)
      for (std::size_t prev = 0; prev < col; ++prev) {
        Complex proj = 0.0;
        for (std::size_t r = 0; r < dim; ++r) proj += v[r] * std::conj(q(r, prev));
        for (std::size_t r = 0; r < dim; ++r) v[r] -= proj * q(r, prev);
      }
    double nrm = vec_norm(v);
    while (nrm < 1e-8) {  // regenerate a collapsed column
      for (std::size_t r = 0; r < dim; ++r) v[r] = rng.complex_gaussian();
      for (std::size_t prev = 0; prev < col; ++prev) {
        Complex proj = 0.0;
        for (std::size_t r = 0; r < dim; ++r) proj += v[r] * std::conj(q(r, prev));
        for (std::size_t r = 0; r < dim; ++r) v[r] -= proj * q(r, prev);
      }
      nrm = vec_norm(v);
    }
    for (std::size_t r = 0; r < dim; ++r) q(r, col) = v[r] / nrm;
  }
  return q;
}

namespace {

struct Shaped {
  ComplexMatrix matrix;
  // exact witness of the top eigenvalue when the construction provides one
  bool has_eigen_witness = false;
  ComplexVector eigen_witness;
};

Shaped shape_matrix(OperatorClass c, std::size_t dim, bool nu_mode, Rng& rng) {
  Shaped out{ComplexMatrix(dim), false, {}};
  switch (c) {
    case OperatorClass::General:
    case OperatorClass::SchattenP: {
      out.matrix = random_complex_gaussian(dim, rng);
      const double scale = nu_mode ? numerical_radius_value(out.matrix, 1e-10)
                                   : operator_norm(out.matrix);
      out.matrix *= Complex(1.0 / scale);
      return out;
    }
    case OperatorClass::SelfAdjoint: {
      out.matrix = hermitian_part(random_complex_gaussian(dim, rng));
      out.matrix *= Complex(1.0 / operator_norm(out.matrix));
      return out;
    }
    case OperatorClass::AntiSymmetric: {
      const ComplexMatrix a = random_complex_gaussian(dim, rng);
      out.matrix = Complex(0.5) * (a - adjoint(a));
      out.matrix *= Complex(1.0 / operator_norm(out.matrix));
      return out;
    }
    case OperatorClass::Positive: {
      const ComplexMatrix a = random_complex_gaussian(dim, rng);
      out.matrix = adjoint(a) * a;
      out.matrix *= Complex(1.0 / operator_norm(out.matrix));
      return out;
    }
    case OperatorClass::Unitary: {
      out.matrix = random_unitary(dim, rng);
      return out;
    }
    case OperatorClass::Normal: {
      const ComplexMatrix u = random_unitary(dim, rng);
      ComplexVector diag(dim);
      double top = 0.0;
      std::size_t top_idx = 0;
      for (std::size_t j = 0; j < dim; ++j) {
        diag[j] = rng.complex_gaussian();
        if (std::abs(diag[j]) > top) {
          top = std::abs(diag[j]);
          top_idx = j;
        }
      }
      for (Complex& z : diag) z /= top;  // spectral radius exactly 1
      ComplexMatrix scaled(dim);
      for (std::size_t r = 0; r < dim; ++r)
        for (std::size_t j = 0; j < dim; ++j) scaled(r, j) = u(r, j) * diag[j];
      out.matrix = scaled * adjoint(u);
      out.has_eigen_witness = true;
      out.eigen_witness.resize(dim);
      for (std::size_t r = 0; r < dim; ++r) out.eigen_witness[r] = u(r, top_idx);
      return out;
    }
  }
  fail(ErrorCode::InvalidArgument, "unknown operator class");
}

UnitVector exact_witness(const Shaped& shaped, OperatorClass c, bool nu_mode, Rng& rng) {
  const ComplexMatrix& t = shaped.matrix;
  if (shaped.has_eigen_witness) return UnitVector::normalized(shaped.eigen_witness);

  if (c == OperatorClass::Unitary) {
    if (!nu_mode) return random_unit_vector(t.dim(), rng);  // every point attains the norm
    // any eigenvector attains |<Tx,x>| = 1; project a random vector
    const SpectralMeasure e = normal_spectral_measure(t);
    const UnitVector r = random_unit_vector(t.dim(), rng);
    for (const auto& pt : e.points) {
      ComplexVector proj = pt.projection.apply(r.entries());
      if (vec_norm(proj) > 1e-3) return UnitVector::normalized(std::move(proj));
    }
    return r;
  }

  if (nu_mode &&
      (c == OperatorClass::SelfAdjoint || c == OperatorClass::Positive ||
       c == OperatorClass::AntiSymmetric)) {
    // radius witness = eigenvector of the largest |eigenvalue|
    const ComplexMatrix herm =
        (c == OperatorClass::AntiSymmetric) ? hermitian_part(Complex(0.0, 1.0) * t) : t;
    EigenDecomposition eig = hermitian_eig(herm);
    const std::size_t last = t.dim() - 1;
    const std::size_t idx =
        std::abs(eig.eigenvalues[0]) >= std::abs(eig.eigenvalues[last]) ? 0 : last;
    ComplexVector v(t.dim());
    for (std::size_t r = 0; r < t.dim(); ++r) v[r] = eig.eigenvectors(r, idx);
    return UnitVector::normalized(std::move(v));
  }

  if (nu_mode) return numerical_radius(t, 1e-10).witness;

  // norm mode: top right singular vector
  EigenDecomposition eig = hermitian_eig(adjoint(t) * t);
  ComplexVector v(t.dim());
  for (std::size_t r = 0; r < t.dim(); ++r) v[r] = eig.eigenvectors(r, 0);
  return UnitVector::normalized(std::move(v));
}

}  // namespace

Instance gen_instance(OperatorClass c, std::size_t dim, double epsilon, bool nu_mode,
                      std::uint64_t seed) {
  if (dim < 2) fail(ErrorCode::InvalidArgument, "generator needs dim >= 2");
  if (!(epsilon > 0.0 && epsilon < 1.0)) fail(ErrorCode::InvalidEpsilon, "epsilon not in (0,1)");
  if (nu_mode && c == OperatorClass::Normal && !(epsilon < 0.5))
    fail(ErrorCode::InvalidEpsilon, "normal-radius instances need epsilon < 1/2");
  Rng rng(seed);

  const Shaped shaped = shape_matrix(c, dim, nu_mode, rng);
  const UnitVector star = exact_witness(shaped, c, nu_mode, rng);

  // perturbation direction orthogonal to the witness
  ComplexVector dir(dim);
  for (std::size_t i = 0; i < dim; ++i) dir[i] = rng.complex_gaussian();
  const Complex overlap = inner(dir, star.entries());
  for (std::size_t i = 0; i < dim; ++i) dir[i] -= overlap * star[i];
  const double dn = vec_norm(dir);
  if (dn > 1e-12)
    for (Complex& z : dir) z /= dn;

  const double threshold = nu_mode
                               ? nu_threshold(c, epsilon, std::nullopt)
                               : 1.0 - epsilon * epsilon / 4.0;
  const double target = 1.0 - 0.9 * (1.0 - threshold);  // 10% margin inside the gap

  double delta = std::min(0.35 * epsilon, 0.25);
  if (dn <= 1e-12) delta = 0.0;
  for (int halvings = 0; halvings < 120; ++halvings) {
    ComplexVector cand(dim);
    for (std::size_t i = 0; i < dim; ++i) cand[i] = star[i] + delta * dir[i];
    const UnitVector x0 = UnitVector::normalized(std::move(cand));
    const double value = nu_mode ? std::abs(quadratic_form(shaped.matrix, x0))
                                 : vec_norm(shaped.matrix.apply(x0.entries()));
    if (value > target) return {shaped.matrix, x0};
    delta *= 0.5;
  }
  return {shaped.matrix, star};
}

}  // namespace bpb
