#include "bpb/oracles.hpp"

#include <array>
#include <cmath>
#include <numbers>

#include "bpb/kernels.hpp"

namespace bpb {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kTau = 2.0 * std::numbers::pi;

// sphere charts with the global phase quotiented out
ComplexVector chart_point_dim2(double psi, double phi) {
  return {Complex(std::cos(psi)), std::polar(std::sin(psi), phi)};
}

ComplexVector chart_point_dim3(const std::array<double, 4>& p) {
  const double c1 = std::cos(p[0]), s1 = std::sin(p[0]);
  const double c2 = std::cos(p[1]), s2 = std::sin(p[1]);
  return {Complex(c1), std::polar(s1 * c2, p[2]), std::polar(s1 * s2, p[3])};
}

double objective(const ComplexMatrix& t, const ComplexVector& x, bool radius) {
  const ComplexVector tx = t.apply(x);
  if (!radius) return vec_norm(tx);
  return std::abs(inner(tx, x));
}

template <typename Eval>
double refine(Eval&& eval, std::vector<double> params, double h0) {
  double best = eval(params);
  double h = h0;
  while (h > 1e-12) {
    bool improved = false;
    for (std::size_t i = 0; i < params.size(); ++i) {
      for (double sign : {1.0, -1.0}) {
        std::vector<double> cand = params;
        cand[i] += sign * h;
        const double v = eval(cand);
        if (v > best) {
          best = v;
          params = cand;
          improved = true;
        }
      }
    }
    if (!improved) h *= 0.5;
  }
  return best;
}

double sphere_scan(const ComplexMatrix& t, int density, bool radius) {
  const std::size_t n = t.dim();
  if (n == 1) return std::abs(t(0, 0));
  if (n > 3) fail(ErrorCode::DimTooLarge, "brute-force oracles stop at dim 3");
  if (density < 1) fail(ErrorCode::InvalidArgument, "density must be >= 1");

  if (n == 2) {
    const std::size_t grid = 1000u << (density - 1);
    const std::size_t count = (grid + 1) * grid;
    const auto fn = [&](std::size_t k) {
      const std::size_t ipsi = k / grid;
      const std::size_t iphi = k % grid;
      const double psi = 0.5 * kPi * static_cast<double>(ipsi) / static_cast<double>(grid);
      const double phi = kTau * static_cast<double>(iphi) / static_cast<double>(grid);
      return objective(t, chart_point_dim2(psi, phi), radius);
    };
    const kernels::ScanBest top = kernels::scan_max(count, fn);
    const double psi0 = 0.5 * kPi * static_cast<double>(top.index / grid) / grid;
    const double phi0 = kTau * static_cast<double>(top.index % grid) / grid;
    const auto eval = [&](const std::vector<double>& p) {
      return objective(t, chart_point_dim2(p[0], p[1]), radius);
    };
    return refine(eval, {psi0, phi0}, kPi / static_cast<double>(grid));
  }

  // dim 3: a Weyl sequence in the four chart parameters, nested by prefix
  const std::size_t count = 1000000u * static_cast<std::size_t>(density);
  constexpr std::array<double, 4> alpha = {0.4142135623730951, 0.7320508075688772,
                                           0.2360679774997896, 0.6457513110645906};
  const auto decode3 = [&](std::size_t k) {
    std::array<double, 4> p{};
    const double kk = static_cast<double>(k + 1);
    double u0 = std::fmod(kk * alpha[0], 1.0);
    double u1 = std::fmod(kk * alpha[1], 1.0);
    double u2 = std::fmod(kk * alpha[2], 1.0);
    double u3 = std::fmod(kk * alpha[3], 1.0);
    p = {u0 * 0.5 * kPi, u1 * 0.5 * kPi, u2 * kTau, u3 * kTau};
    return p;
  };
  const auto fn = [&](std::size_t k) { return objective(t, chart_point_dim3(decode3(k)), radius); };
  const kernels::ScanBest top = kernels::scan_max(count, fn);
  const std::array<double, 4> p0 = decode3(top.index);
  const auto eval = [&](const std::vector<double>& p) {
    return objective(t, chart_point_dim3({p[0], p[1], p[2], p[3]}), radius);
  };
  return refine(eval, {p0[0], p0[1], p0[2], p0[3]}, 0.02);
}
}  // namespace

double brute_force_norm(const ComplexMatrix& t, int density) {
  return sphere_scan(t, density, /*radius=*/false);
}

double brute_force_radius(const ComplexMatrix& t, int density) {
  return sphere_scan(t, density, /*radius=*/true);
}

}  // namespace bpb
