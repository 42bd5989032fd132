#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "bpb/generators.hpp"
#include "bpb/norm_correction.hpp"
#include "bpb/rng.hpp"
#include "bpb/spectral.hpp"

using namespace bpb;

TEST_CASE("truncation profile values") {
  auto f = truncation_function(0.3);
  CHECK(f(0.5) == doctest::Approx(1.0));
  CHECK(f(1.0) == doctest::Approx(1.0));
  CHECK(f(0.8) == doctest::Approx(1.25));
  CHECK(f(0.7) == doctest::Approx(1.0));  // boundary stays on the identity branch
  CHECK_THROWS_AS(truncation_function(0.0), Error);
  CHECK_THROWS_AS(truncation_function(1.0), Error);
}

TEST_CASE("positive corrector examples") {
  {
    NormCorrectionRequest req(ComplexMatrix::identity(3), UnitVector::basis(3, 0), 0.5,
                              OperatorClass::Positive);
    auto res = norm_correct_positive(req);
    CHECK(frobenius_norm(res.corrected - ComplexMatrix::identity(3)) <= 1e-12);
    CHECK(res.certificate.op_distance <= 1e-12);
    CHECK(res.certificate.point_distance <= 1e-12);
  }
  {
    NormCorrectionRequest req(ComplexMatrix(2, {0.9, 0.0, 0.0, 1.0}), UnitVector::basis(2, 0),
                              0.7, OperatorClass::Positive);
    auto res = norm_correct_positive(req);
    CHECK(frobenius_norm(res.corrected - ComplexMatrix::identity(2)) <= 1e-10);
    CHECK(res.certificate.op_distance == doctest::Approx(0.1));
    CHECK(distance(res.attain_point, req.point) <= 1e-10);
  }
  {
    NormCorrectionRequest req(ComplexMatrix(2, {1.0, 0.0, 0.0, 0.5}), UnitVector::basis(2, 0),
                              0.3, OperatorClass::Positive);
    auto res = norm_correct_positive(req);
    CHECK(frobenius_norm(res.corrected - req.input) <= 1e-10);
  }
}

TEST_CASE("positive corrector equals T f(T) and lands in range E(A)") {
  Rng rng(9001);
  for (int rep = 0; rep < 12; ++rep) {
    const std::size_t dim = 2 + rng.next_u64() % 9;
    const double eps = (rep % 3 == 0) ? 0.5 : (rep % 3 == 1 ? 0.2 : 0.05);
    const Instance inst = gen_instance(OperatorClass::Positive, dim, eps, false, rng.next_u64());
    NormCorrectionRequest req(inst.input, inst.point, eps, OperatorClass::Positive);
    auto res = norm_correct_positive(req);

    // independent route: scalar truncation through the spectral measure
    auto f = truncation_function(eps);
    const SpectralMeasure e = normal_spectral_measure(inst.input);
    const ComplexMatrix tft = apply_borel_function(
        e, [&](Complex z) { return Complex(z.real() * f(std::min(std::max(z.real(), 0.0), 1.0))); });
    CHECK(frobenius_norm(res.corrected - tft) <= 1e-9 * std::max(1.0, frobenius_norm(tft)));

    // attainment witness lies in the top spectral subspace
    const ComplexMatrix pa = spectral_projection(e, SpectralRegion::real_above(1.0 - eps));
    ComplexVector px = pa.apply(res.attain_point.entries());
    for (std::size_t i = 0; i < dim; ++i) px[i] -= res.attain_point[i];
    CHECK(vec_norm(px) <= 1e-9);

    CHECK(class_check(res.corrected, OperatorClass::Positive, 1e-8));
    CHECK(quadratic_form(res.corrected, res.attain_point).real() ==
          doctest::Approx(1.0).epsilon(1e-8));
    CHECK(res.certificate.op_distance < eps + 1e-9);
    CHECK(res.certificate.point_distance < 4.0 * std::sqrt(eps) + 1e-9);
  }
}

TEST_CASE("idempotence at exact attainment") {
  // positive input already attaining at the top eigenvector
  const Instance inst = gen_instance(OperatorClass::Positive, 5, 0.2, false, 42);
  EigenDecomposition eig = hermitian_eig(inst.input);
  ComplexVector top(5);
  for (std::size_t r = 0; r < 5; ++r) top[r] = eig.eigenvectors(r, 0);
  NormCorrectionRequest req(inst.input, UnitVector::normalized(top), 0.2,
                            OperatorClass::Positive);
  auto res = norm_correct_positive(req);
  CHECK(res.certificate.op_distance <= 0.2);
  CHECK(vec_norm(res.corrected.apply(res.attain_point.entries())) ==
        doctest::Approx(1.0).epsilon(1e-9));
  CHECK(res.certificate.point_distance <= 1e-6);
}

TEST_CASE("general corrector examples") {
  {
    Rng rng(9003);
    const ComplexMatrix u = random_unitary(3, rng);
    NormCorrectionRequest req(u, random_unit_vector(3, rng), 0.4, OperatorClass::Unitary);
    auto res = norm_correct(req);
    CHECK(frobenius_norm(res.corrected - u) == 0.0);
    CHECK(distance(res.attain_point, req.point) == 0.0);
  }
  {
    // normal input whose singular branches are already fixed by the profile
    const Complex i(0.0, 1.0);
    ComplexMatrix t(2);
    t(0, 0) = 1.0;
    t(1, 1) = 0.5 * i;
    NormCorrectionRequest req(t, UnitVector::basis(2, 0), 0.3, OperatorClass::Normal);
    auto res = norm_correct(req);
    CHECK(frobenius_norm(res.corrected - t) <= 1e-9);
    CHECK(class_check(res.corrected, OperatorClass::Normal, 1e-8));
  }
  {
    ComplexMatrix t(2, {0.0, 1.0, 0.2, 0.0});
    NormCorrectionRequest req(t, UnitVector::basis(2, 1), 0.5, OperatorClass::General);
    auto res = norm_correct(req);
    CHECK(vec_norm(res.corrected.apply(res.attain_point.entries())) ==
          doctest::Approx(1.0).epsilon(1e-9));
    CHECK(res.certificate.op_distance < 0.5);
    CHECK(std::abs(res.attain_point[1]) == doctest::Approx(1.0));
  }
}

TEST_CASE("corrector postconditions across classes") {
  Rng rng(9004);
  const OperatorClass classes[] = {OperatorClass::Positive,    OperatorClass::SelfAdjoint,
                                   OperatorClass::AntiSymmetric, OperatorClass::Normal,
                                   OperatorClass::General,     OperatorClass::Unitary};
  const double epsilons[] = {0.5, 0.2, 0.05};
  for (OperatorClass c : classes) {
    for (double eps : epsilons) {
      for (int rep = 0; rep < 4; ++rep) {
        const std::size_t dim = 2 + rng.next_u64() % 11;
        const Instance inst = gen_instance(c, dim, eps, false, rng.next_u64());
        NormCorrectionRequest req(inst.input, inst.point, eps, c);
        auto res = norm_correct(req);
        CHECK(std::abs(vec_norm(res.corrected.apply(res.attain_point.entries())) - 1.0) <= 1e-7);
        CHECK(std::abs(operator_norm(res.corrected) - 1.0) <= 1e-7);
        CHECK(res.certificate.op_distance < eps + 1e-9);
        CHECK(res.certificate.point_distance < 4.0 * std::sqrt(eps) + 1e-9);
        CHECK(class_check(res.corrected, c, 1e-8));
      }
    }
  }
}

TEST_CASE("flattened top branch has norm one") {
  Rng rng(9005);
  for (int rep = 0; rep < 8; ++rep) {
    const std::size_t dim = 2 + rng.next_u64() % 9;
    const double eps = 0.1 + 0.2 * (rep % 4);
    const Instance inst = gen_instance(OperatorClass::General, dim, eps, false, rng.next_u64());
    NormCorrectionRequest req(inst.input, inst.point, eps, OperatorClass::General);
    auto res = norm_correct(req);
    CHECK(operator_norm(res.corrected) == doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("point-exact upgrade") {
  Rng rng(9006);
  for (int rep = 0; rep < 10; ++rep) {
    const std::size_t dim = 2 + rng.next_u64() % 9;
    const double eps = (rep % 2 == 0) ? 0.3 : 0.08;
    const Instance inst = gen_instance(OperatorClass::General, dim, eps, false, rng.next_u64());
    NormCorrectionRequest req(inst.input, inst.point, eps, OperatorClass::General);
    req.target_point_exact = true;
    auto res = norm_correct(req);
    CHECK(std::abs(vec_norm(res.corrected.apply(inst.point.entries())) - 1.0) <= 1e-7);
    CHECK(res.certificate.op_distance < 3.0 * eps + 1e-9);
    CHECK(res.certificate.theorem_tag == "norm-pointwise");
  }
}

TEST_CASE("request validation errors") {
  const ComplexMatrix t(2, {1.0, 0.0, 0.0, 0.5});
  {
    NormCorrectionRequest req(t, UnitVector::basis(2, 1), 0.3, OperatorClass::Positive);
    CHECK_THROWS_AS(norm_correct_positive(req), Error);  // ||T e2|| = 0.5 too small
    try {
      norm_correct_positive(req);
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::AlmostAttainmentViolated);
    }
  }
  {
    NormCorrectionRequest req(ComplexMatrix(2, {0.0, 1.0, 0.0, 0.0}), UnitVector::basis(2, 0),
                              0.3, OperatorClass::Positive);
    CHECK_THROWS_AS(norm_correct_positive(req), Error);  // not positive
  }
  {
    ComplexMatrix big(2, {2.0, 0.0, 0.0, 0.5});
    NormCorrectionRequest req(big, UnitVector::basis(2, 0), 0.3, OperatorClass::General);
    try {
      norm_correct(req);
      CHECK(false);
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::PreconditionViolated);  // not pre-normalized
    }
  }
  {
    NormCorrectionRequest req(t, UnitVector::basis(2, 0), 1.5, OperatorClass::General);
    CHECK_THROWS_AS(norm_correct(req), Error);  // epsilon out of range
  }
}

TEST_CASE("schatten refinement") {
  {
    ComplexMatrix t(2, {1.0, 0.0, 0.0, 0.0});
    NormCorrectionRequest req(t, UnitVector::basis(2, 0), 0.3, OperatorClass::SchattenP);
    req.schatten_p = 2.0;
    auto res = norm_correct_schatten(req, 1.0);
    CHECK(*res.certificate.schatten_distance <= 1e-10);
  }
  {
    ComplexMatrix t(2, {1.0, 0.0, 0.0, 0.5});
    NormCorrectionRequest req(t, UnitVector::basis(2, 0), 0.3, OperatorClass::SchattenP);
    req.schatten_p = 1.0;
    auto res = norm_correct_schatten(req, 1.5);
    CHECK(*res.certificate.schatten_distance <= 1e-10);
  }
  {
    Rng rng(9007);
    for (int rep = 0; rep < 8; ++rep) {
      const double eps = (rep % 2 == 0) ? 0.2 : 0.4;
      const Instance inst = gen_instance(OperatorClass::SchattenP, 5, eps, false, rng.next_u64());
      NormCorrectionRequest req(inst.input, inst.point, eps, OperatorClass::SchattenP);
      req.schatten_p = 2.0;
      const double m = schatten_norm(inst.input, 2.0);
      auto res = norm_correct_schatten(req, m);
      const double beta = 4.0 * std::sqrt(eps);
      CHECK(*res.certificate.schatten_distance <
            2.0 * eps * m + (1.0 + 2.0 * eps) * m * beta + 1e-9);
      CHECK(std::abs(vec_norm(res.corrected.apply(inst.point.entries())) - 1.0) <= 1e-8);
      CHECK(std::abs(operator_norm(res.corrected) - 1.0) <= 1e-8);
      // the operator-norm distance inherits the sigma_p bound
      CHECK(res.certificate.op_distance <= *res.certificate.schatten_distance + 1e-9);
    }
  }
  {
    ComplexMatrix t(2, {1.0, 0.0, 0.0, 0.5});
    NormCorrectionRequest req(t, UnitVector::basis(2, 0), 0.3, OperatorClass::SchattenP);
    req.schatten_p = 1.0;
    CHECK_THROWS_AS(norm_correct_schatten(req, 1.0), Error);  // M below sigma_p(T)
  }
}
