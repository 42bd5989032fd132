#include "bpb/spectral.hpp"

#include <algorithm>
#include <cmath>

namespace bpb {

SpectralRegion SpectralRegion::full() {
  return {[](Complex) { return true; }, "full"};
}

SpectralRegion SpectralRegion::empty() {
  return {[](Complex) { return false; }, "empty"};
}

SpectralRegion SpectralRegion::complement(const SpectralRegion& r) {
  auto inner = r.contains;
  return {[inner](Complex z) { return !inner(z); }, "complement(" + r.label + ")"};
}

SpectralRegion SpectralRegion::real_above(double c) {
  return {[c](Complex z) { return z.real() > c; }, "Re z > " + std::to_string(c)};
}

SpectralRegion SpectralRegion::abs_above(double r) {
  return {[r](Complex z) { return std::abs(z) > r; }, "|z| > " + std::to_string(r)};
}

SpectralRegion SpectralRegion::abs_at_most(double r) {
  return {[r](Complex z) { return std::abs(z) <= r; }, "|z| <= " + std::to_string(r)};
}

double spectral_grouping_tol(const ComplexMatrix& t) {
  return 1e-8 * std::max(1.0, operator_norm(t));
}

namespace {

// One cyclic sweep of 2x2 unitary similarity rotations chosen to
// diagonalize each pair block exactly; for (near-)normal matrices the
// blocks are themselves near-normal, so a sweep contracts the
// off-diagonal mass to rounding level.
void normal_polish_sweep(ComplexMatrix& w, ComplexMatrix& v, double skip_tol) {
  const std::size_t n = w.dim();
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = j + 1; k < n; ++k) {
      const Complex beta = w(j, k), gamma = w(k, j);
      if (std::sqrt(std::norm(beta) + std::norm(gamma)) <= skip_tol) continue;
      const Complex alpha = w(j, j), delta = w(k, k);
      const Complex half_diff = 0.5 * (alpha - delta);
      const Complex disc = std::sqrt(half_diff * half_diff + beta * gamma);
      const Complex lambda = 0.5 * (alpha + delta) + disc;

      Complex c1[2] = {beta, lambda - alpha};
      Complex c2[2] = {lambda - delta, gamma};
      const double n1 = std::sqrt(std::norm(c1[0]) + std::norm(c1[1]));
      const double n2 = std::sqrt(std::norm(c2[0]) + std::norm(c2[1]));
      Complex u0, u1;
      if (n1 >= n2) {
        if (n1 == 0.0) continue;
        u0 = c1[0] / n1;
        u1 = c1[1] / n1;
      } else {
        u0 = c2[0] / n2;
        u1 = c2[1] / n2;
      }
      // G = [u, u_perp] with u_perp = (-conj(u1), conj(u0))
      const Complex g00 = u0, g10 = u1;
      const Complex g01 = -std::conj(u1), g11 = std::conj(u0);

      for (std::size_t r = 0; r < n; ++r) {
        const Complex wj = w(r, j), wk = w(r, k);
        w(r, j) = g00 * wj + g10 * wk;
        w(r, k) = g01 * wj + g11 * wk;
      }
      for (std::size_t r = 0; r < n; ++r) {
        const Complex wj = w(j, r), wk = w(k, r);
        w(j, r) = std::conj(g00) * wj + std::conj(g10) * wk;
        w(k, r) = std::conj(g01) * wj + std::conj(g11) * wk;
      }
      for (std::size_t r = 0; r < n; ++r) {
        const Complex vj = v(r, j), vk = v(r, k);
        v(r, j) = g00 * vj + g10 * vk;
        v(r, k) = g01 * vj + g11 * vk;
      }
    }
  }
}

double offdiag_frobenius(const ComplexMatrix& w) {
  double sum = 0.0;
  for (std::size_t i = 0; i < w.dim(); ++i)
    for (std::size_t j = 0; j < w.dim(); ++j)
      if (i != j) sum += std::norm(w(i, j));
  return std::sqrt(sum);
}

}  // namespace

SpectralMeasure normal_spectral_measure(const ComplexMatrix& t) {
  const std::size_t n = t.dim();
  const double scale = operator_norm(t);
  if (!class_check(t, OperatorClass::Normal, std::max(1e-8, 1e-8 * scale)))
    fail(ErrorCode::NotNormal, "commutator norm exceeds tolerance");

  SpectralMeasure measure;
  measure.dim = n;
  if (scale == 0.0) {
    measure.points.push_back({Complex(0.0), ComplexMatrix::identity(n)});
    return measure;
  }

  const ComplexMatrix hr = hermitian_part(t);
  const ComplexMatrix hi = skew_part_hermitian(t);
  EigenDecomposition base = hermitian_eig(hr);
  ComplexMatrix v = base.eigenvectors;

  // block-diagonalize the skew part inside each eigenvalue cluster of hr
  const double cluster_tol = 1e-8 * scale;
  std::size_t start = 0;
  while (start < n) {
    std::size_t stop = start + 1;
    while (stop < n && base.eigenvalues[stop - 1] - base.eigenvalues[stop] <= cluster_tol) ++stop;
    const std::size_t m = stop - start;
    if (m > 1) {
      std::vector<ComplexVector> images(m);
      for (std::size_t b = 0; b < m; ++b) {
        ComplexVector col(n);
        for (std::size_t r = 0; r < n; ++r) col[r] = v(r, start + b);
        images[b] = hi.apply(col);
      }
      ComplexMatrix block(m);
      for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = 0; b < m; ++b) {
          Complex s = 0.0;
          for (std::size_t r = 0; r < n; ++r) s += std::conj(v(r, start + a)) * images[b][r];
          block(a, b) = s;
        }
      EigenDecomposition sub = hermitian_eig(block);
      ComplexMatrix rotated(n);
      for (std::size_t r = 0; r < n; ++r)
        for (std::size_t b = 0; b < m; ++b) {
          Complex s = 0.0;
          for (std::size_t a = 0; a < m; ++a) s += v(r, start + a) * sub.eigenvectors(a, b);
          rotated(r, b) = s;
        }
      for (std::size_t r = 0; r < n; ++r)
        for (std::size_t b = 0; b < m; ++b) v(r, start + b) = rotated(r, b);
    }
    start = stop;
  }

  // polish: residual coupling across cluster boundaries is rounded away by
  // pairwise rotations on W = V* T V
  ComplexMatrix w = adjoint(v) * t * v;
  const double fro = frobenius_norm(t);
  const double target = 1e-12 * std::max(1.0, fro);
  const double skip_tol = target / (2.0 * static_cast<double>(n));
  for (int sweep = 0; sweep < 12 && offdiag_frobenius(w) > target; ++sweep)
    normal_polish_sweep(w, v, skip_tol);
  if (offdiag_frobenius(w) > 1e-10 * std::max(1.0, fro))
    fail(ErrorCode::NoConvergence, "spectral polish left residual coupling");

  // group eigenvalues
  const double group_tol = spectral_grouping_tol(t);
  std::vector<Complex> reps;
  std::vector<std::vector<std::size_t>> members;
  for (std::size_t j = 0; j < n; ++j) {
    const Complex lambda = w(j, j);
    bool placed = false;
    for (std::size_t g = 0; g < reps.size() && !placed; ++g) {
      if (std::abs(lambda - reps[g]) <= group_tol) {
        members[g].push_back(j);
        Complex mean = 0.0;
        for (std::size_t idx : members[g]) mean += w(idx, idx);
        reps[g] = mean / static_cast<double>(members[g].size());
        placed = true;
      }
    }
    if (!placed) {
      reps.push_back(lambda);
      members.push_back({j});
    }
  }
  // merge until representatives are pairwise separated
  for (bool merged = true; merged;) {
    merged = false;
    for (std::size_t a = 0; a < reps.size() && !merged; ++a)
      for (std::size_t b = a + 1; b < reps.size() && !merged; ++b)
        if (std::abs(reps[a] - reps[b]) <= group_tol) {
          members[a].insert(members[a].end(), members[b].begin(), members[b].end());
          Complex mean = 0.0;
          for (std::size_t idx : members[a]) mean += w(idx, idx);
          reps[a] = mean / static_cast<double>(members[a].size());
          members.erase(members.begin() + b);
          reps.erase(reps.begin() + b);
          merged = true;
        }
  }

  std::vector<std::size_t> order(reps.size());
  for (std::size_t g = 0; g < order.size(); ++g) order[g] = g;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (reps[a].real() != reps[b].real()) return reps[a].real() > reps[b].real();
    return reps[a].imag() > reps[b].imag();
  });

  for (std::size_t g : order) {
    ComplexMatrix proj(n);
    for (std::size_t idx : members[g])
      for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) proj(r, c) += v(r, idx) * std::conj(v(c, idx));
    measure.points.push_back({reps[g], std::move(proj)});
  }
  return measure;
}

ComplexMatrix apply_borel_function(const SpectralMeasure& e,
                                   const std::function<Complex(Complex)>& f) {
  ComplexMatrix out(e.dim);
  for (const SpectralMeasure::Point& pt : e.points) {
    const Complex value = f(pt.eigenvalue);
    if (!std::isfinite(value.real()) || !std::isfinite(value.imag()))
      fail(ErrorCode::InvalidArgument, "function not finite on the spectrum");
    ComplexMatrix term = pt.projection;
    term *= value;
    out += term;
  }
  return out;
}

ComplexMatrix spectral_projection(const SpectralMeasure& e, const SpectralRegion& region) {
  ComplexMatrix out(e.dim);
  for (const SpectralMeasure::Point& pt : e.points)
    if (region.contains(pt.eigenvalue)) out += pt.projection;
  return out;
}

ComplexMatrix region_truncation(const SpectralMeasure& e, const SpectralRegion& region,
                                const std::function<Complex(Complex)>& f) {
  ComplexMatrix out(e.dim);
  for (const SpectralMeasure::Point& pt : e.points) {
    if (!region.contains(pt.eigenvalue)) continue;
    const Complex value = f(pt.eigenvalue);
    if (!std::isfinite(value.real()) || !std::isfinite(value.imag()))
      fail(ErrorCode::InvalidArgument, "function not finite on the region");
    ComplexMatrix term = pt.projection;
    term *= value;
    out += term;
  }
  return out;
}

PolarFactors normal_polar(const ComplexMatrix& t) {
  const SpectralMeasure e = normal_spectral_measure(t);
  PolarFactors out;
  out.isometry_part = apply_borel_function(e, [](Complex z) {
    const double a = std::abs(z);
    return a == 0.0 ? Complex(1.0) : z / a;
  });
  out.modulus = apply_borel_function(e, [](Complex z) { return Complex(std::abs(z)); });
  return out;
}

}  // namespace bpb
