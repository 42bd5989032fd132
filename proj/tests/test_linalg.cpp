#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "bpb/generators.hpp"
#include "bpb/linalg.hpp"
#include "bpb/rng.hpp"

using namespace bpb;

namespace {
double eig_residual(const ComplexMatrix& a, const EigenDecomposition& eig) {
  const std::size_t n = a.dim();
  ComplexMatrix scaled(n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) scaled(r, c) = eig.eigenvectors(r, c) * eig.eigenvalues[c];
  return frobenius_norm(a * eig.eigenvectors - scaled);
}

double orthonormality_defect(const ComplexMatrix& v) {
  return frobenius_norm(adjoint(v) * v - ComplexMatrix::identity(v.dim()));
}
}  // namespace

TEST_CASE("hermitian_eig on stated examples") {
  {
    auto eig = hermitian_eig(ComplexMatrix::identity(2));
    CHECK(eig.eigenvalues[0] == doctest::Approx(1.0));
    CHECK(eig.eigenvalues[1] == doctest::Approx(1.0));
    CHECK(frobenius_norm(eig.eigenvectors - ComplexMatrix::identity(2)) < 1e-14);
  }
  {
    auto eig = hermitian_eig(ComplexMatrix(2, {3.0, 0.0, 0.0, -1.0}));
    CHECK(eig.eigenvalues[0] == doctest::Approx(3.0));
    CHECK(eig.eigenvalues[1] == doctest::Approx(-1.0));
  }
  {
    // characteristic polynomial of [[0,1],[1,0]] gives +-1 with (1,+-1)/sqrt2
    auto eig = hermitian_eig(ComplexMatrix(2, {0.0, 1.0, 1.0, 0.0}));
    CHECK(eig.eigenvalues[0] == doctest::Approx(1.0));
    CHECK(eig.eigenvalues[1] == doctest::Approx(-1.0));
    const double inv = 1.0 / std::sqrt(2.0);
    CHECK(std::abs(eig.eigenvectors(0, 0)) == doctest::Approx(inv));
    CHECK(std::abs(eig.eigenvectors(1, 0)) == doctest::Approx(inv));
  }
}

TEST_CASE("hermitian_eig invariants on random matrices") {
  Rng rng(101);
  for (std::size_t dim : {2u, 3u, 7u, 13u, 20u}) {
    const ComplexMatrix a = hermitian_part(random_complex_gaussian(dim, rng));
    auto eig = hermitian_eig(a);
    CHECK(eig_residual(a, eig) <= 1e-10 * std::max(1.0, frobenius_norm(a)));
    CHECK(orthonormality_defect(eig.eigenvectors) <= 1e-10);
    for (std::size_t j = 1; j < dim; ++j)
      CHECK(eig.eigenvalues[j - 1] >= eig.eigenvalues[j]);
  }
}

TEST_CASE("hermitian_eig rejects non-hermitian input") {
  ComplexMatrix jordan(2, {0.0, 1.0, 0.0, 0.0});
  CHECK_THROWS_AS(hermitian_eig(jordan), Error);
  try {
    hermitian_eig(jordan);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotHermitian);
  }
}

TEST_CASE("polar decomposition examples") {
  {
    auto pf = polar_decompose(ComplexMatrix::identity(2));
    CHECK(frobenius_norm(pf.isometry_part - ComplexMatrix::identity(2)) < 1e-12);
    CHECK(frobenius_norm(pf.modulus - ComplexMatrix::identity(2)) < 1e-12);
  }
  {
    // diag(2,0): modulus diag(2,0), isometry extended by the identity on ker
    auto pf = polar_decompose(ComplexMatrix(2, {2.0, 0.0, 0.0, 0.0}));
    CHECK(frobenius_norm(pf.modulus - ComplexMatrix(2, {2.0, 0.0, 0.0, 0.0})) < 1e-12);
    CHECK(frobenius_norm(pf.isometry_part - ComplexMatrix::identity(2)) < 1e-12);
  }
  {
    const ComplexMatrix rot(2, {0.0, -1.0, 1.0, 0.0});
    auto pf = polar_decompose(rot);
    CHECK(frobenius_norm(pf.modulus - ComplexMatrix::identity(2)) < 1e-12);
    CHECK(frobenius_norm(pf.isometry_part - rot) < 1e-12);
  }
}

TEST_CASE("polar recomposition on random matrices") {
  Rng rng(202);
  for (std::size_t dim : {2u, 5u, 9u, 16u}) {
    const ComplexMatrix t = random_complex_gaussian(dim, rng);
    auto pf = polar_decompose(t);
    CHECK(frobenius_norm(pf.isometry_part * pf.modulus - t) <= 1e-10 * frobenius_norm(t));
    CHECK(lambda_min_hermitian(pf.modulus) >= -1e-10);
    CHECK(orthonormality_defect(pf.isometry_part) <= 1e-10);
  }
  // rank-deficient input still recomposes and completes the isometry
  Rng rng2(203);
  ComplexMatrix lowrank(6);
  const UnitVector u = random_unit_vector(6, rng2), v = random_unit_vector(6, rng2);
  lowrank = outer(u.entries(), v.entries());
  auto pf = polar_decompose(lowrank);
  CHECK(frobenius_norm(pf.isometry_part * pf.modulus - lowrank) <= 1e-10);
  CHECK(orthonormality_defect(pf.isometry_part) <= 1e-10);
}

TEST_CASE("operator norm examples") {
  CHECK(operator_norm(ComplexMatrix::identity(3)) == doctest::Approx(1.0));
  CHECK(operator_norm(ComplexMatrix(2, {0.5, 0.0, 0.0, -2.0})) == doctest::Approx(2.0));
  // singular values of the nilpotent block are {1, 0}
  CHECK(operator_norm(ComplexMatrix(2, {0.0, 1.0, 0.0, 0.0})) == doctest::Approx(1.0));
}

TEST_CASE("schatten norms") {
  CHECK(schatten_norm(ComplexMatrix::identity(2), 1.0) == doctest::Approx(2.0));
  CHECK(schatten_norm(ComplexMatrix::identity(2),
                      std::numeric_limits<double>::infinity()) == doctest::Approx(1.0));
  CHECK(schatten_norm(ComplexMatrix(2, {3.0, 0.0, 0.0, 4.0}), 2.0) == doctest::Approx(5.0));
  CHECK_THROWS_AS(schatten_norm(ComplexMatrix::identity(2), 0.5), Error);

  // monotonicity in p and the Hoelder inequality
  Rng rng(303);
  for (int rep = 0; rep < 20; ++rep) {
    const std::size_t dim = 2 + rng.next_u64() % 9;
    const ComplexMatrix r = random_complex_gaussian(dim, rng);
    const ComplexMatrix s = random_complex_gaussian(dim, rng);
    const double inf = std::numeric_limits<double>::infinity();
    const double p[4] = {1.0, 2.0, 4.0, inf};
    for (int i = 0; i + 1 < 4; ++i)
      CHECK(schatten_norm(r, p[i + 1]) <= schatten_norm(r, p[i]) + 1e-9);
    // 1/1 = 1/2 + 1/2 and 1/2 = 1/4 + 1/4 and 1/1 = 1/1 + 1/inf
    CHECK(schatten_norm(r * s, 1.0) <= schatten_norm(r, 2.0) * schatten_norm(s, 2.0) + 1e-9);
    CHECK(schatten_norm(r * s, 2.0) <= schatten_norm(r, 4.0) * schatten_norm(s, 4.0) + 1e-9);
    CHECK(schatten_norm(r * s, 1.0) <= schatten_norm(r, 1.0) * schatten_norm(s, inf) + 1e-9);
  }
}

TEST_CASE("numerical radius examples") {
  {
    auto rr = numerical_radius(ComplexMatrix::identity(2), 1e-9);
    CHECK(rr.value == doctest::Approx(1.0).epsilon(1e-9));
  }
  {
    // max of 2 |x1 x2| over the sphere is 1, witness magnitudes 1/sqrt2
    auto rr = numerical_radius(ComplexMatrix(2, {0.0, 2.0, 0.0, 0.0}), 1e-9);
    CHECK(rr.value == doctest::Approx(1.0).epsilon(1e-7));
    CHECK(std::abs(rr.witness[0]) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-5));
    CHECK(std::abs(rr.witness[1]) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-5));
    CHECK(std::abs(quadratic_form(ComplexMatrix(2, {0.0, 2.0, 0.0, 0.0}), rr.witness)) >=
          rr.value - 1e-9);
  }
  {
    const Complex i(0.0, 1.0);
    auto rr = numerical_radius(ComplexMatrix(2, {i, 0.0, 0.0, -i}), 1e-9);
    CHECK(rr.value == doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("radius bounds against the operator norm") {
  Rng rng(404);
  for (int rep = 0; rep < 25; ++rep) {
    const std::size_t dim = 2 + rng.next_u64() % 19;
    const ComplexMatrix t = random_complex_gaussian(dim, rng);
    const double norm = operator_norm(t);
    const double nu = numerical_radius_value(t, 1e-7);
    CHECK(norm <= 2.0 * nu + 1e-6);
    CHECK(nu <= norm + 1e-6);
  }
}

TEST_CASE("seeded radius keeps the witness near the seed on flat spectra") {
  Rng rng(505);
  const UnitVector seed = random_unit_vector(6, rng);
  auto rr = numerical_radius_seeded(ComplexMatrix::identity(6), 1e-9, seed);
  CHECK(rr.value == doctest::Approx(1.0));
  CHECK(distance(rr.witness, seed) < 1e-9);
}

TEST_CASE("degenerate zero operator") {
  const ComplexMatrix zero(3);
  CHECK(operator_norm(zero) == 0.0);
  CHECK(schatten_norm(zero, 1.0) == 0.0);
  auto rr = numerical_radius(zero, 1e-9);
  CHECK(rr.value == 0.0);
  auto pf = polar_decompose(zero);
  CHECK(frobenius_norm(pf.modulus) == 0.0);
  CHECK(frobenius_norm(adjoint(pf.isometry_part) * pf.isometry_part -
                       ComplexMatrix::identity(3)) <= 1e-12);
}

TEST_CASE("unit vector construction guards the norm") {
  CHECK_THROWS_AS(UnitVector(ComplexVector{0.5, 0.5}), Error);
  CHECK_NOTHROW(UnitVector(ComplexVector{1.0, 0.0}));
  const UnitVector v = UnitVector::normalized(ComplexVector{3.0, 4.0});
  CHECK(std::abs(v[0]) == doctest::Approx(0.6));
  CHECK_THROWS_AS(UnitVector::normalized(ComplexVector{0.0, 0.0}), Error);
}

TEST_CASE("class membership") {
  const ComplexMatrix id = ComplexMatrix::identity(3);
  CHECK(class_check(id, OperatorClass::Unitary, 1e-8));
  CHECK(class_check(id, OperatorClass::Positive, 1e-8));
  const ComplexMatrix jordan(2, {0.0, 1.0, 0.0, 0.0});
  CHECK_FALSE(class_check(jordan, OperatorClass::Normal, 1e-8));
  const ComplexMatrix rot(2, {0.0, 1.0, -1.0, 0.0});
  CHECK(class_check(rot, OperatorClass::AntiSymmetric, 1e-8));
  CHECK(class_check(jordan, OperatorClass::General, 1e-8));
  CHECK(class_check(jordan, OperatorClass::SchattenP, 1e-8));
  CHECK_FALSE(class_check(ComplexMatrix(2, {1.0, 0.0, 0.0, -0.5}), OperatorClass::Positive, 1e-8));
}
