#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "bpb/experiment.hpp"
#include "bpb/generators.hpp"
#include "bpb/io_json.hpp"
#include "bpb/kernels.hpp"
#include "bpb/nu_correction.hpp"
#include "bpb/oracles.hpp"
#include "bpb/rng.hpp"

using namespace bpb;

TEST_CASE("generated instances satisfy their preconditions with margin") {
  Rng seeds(31);
  const OperatorClass classes[] = {OperatorClass::General,      OperatorClass::Positive,
                                   OperatorClass::SelfAdjoint,  OperatorClass::AntiSymmetric,
                                   OperatorClass::Unitary,      OperatorClass::Normal,
                                   OperatorClass::SchattenP};
  for (OperatorClass c : classes) {
    for (bool nu_mode : {false, true}) {
      const double eps = 0.3;
      const std::size_t dim = 2 + seeds.next_u64() % 9;
      const Instance inst = gen_instance(c, dim, eps, nu_mode, seeds.next_u64());
      CHECK(class_check(inst.input, c, 1e-8));
      if (nu_mode) {
        CHECK(std::abs(numerical_radius_value(inst.input, 1e-9) - 1.0) <= 1e-6);
        const double threshold = nu_threshold(c, eps, std::nullopt);
        const double attained = std::abs(quadratic_form(inst.input, inst.point));
        CHECK(attained > 1.0 - 0.9 * (1.0 - threshold));
      } else {
        CHECK(std::abs(operator_norm(inst.input) - 1.0) <= 1e-8);
        const double attained = vec_norm(inst.input.apply(inst.point.entries()));
        CHECK(attained > 1.0 - 0.9 * (eps * eps / 4.0));
      }
    }
  }
}

TEST_CASE("instance generation is deterministic in the seed") {
  const Instance a = gen_instance(OperatorClass::Normal, 5, 0.2, true, 987654321);
  const Instance b = gen_instance(OperatorClass::Normal, 5, 0.2, true, 987654321);
  const Instance c = gen_instance(OperatorClass::Normal, 5, 0.2, true, 987654322);
  CHECK(frobenius_norm(a.input - b.input) == 0.0);
  CHECK(distance(a.point, b.point) == 0.0);
  CHECK(frobenius_norm(a.input - c.input) != 0.0);
}

TEST_CASE("brute-force oracle examples") {
  CHECK(brute_force_radius(ComplexMatrix(2, {0.0, 2.0, 0.0, 0.0}), 1) ==
        doctest::Approx(1.0).epsilon(1e-3));
  CHECK(brute_force_norm(ComplexMatrix(2, {0.3, 0.0, 0.0, 0.8}), 1) ==
        doctest::Approx(0.8).epsilon(1e-3));
  CHECK(brute_force_radius(ComplexMatrix::identity(2), 1) == doctest::Approx(1.0).epsilon(1e-6));
  CHECK_THROWS_AS(brute_force_norm(ComplexMatrix::identity(4), 1), Error);
  // denser grids only improve the maximum
  const ComplexMatrix t(2, {0.31, Complex(0.2, 0.7), 0.05, -0.4});
  CHECK(brute_force_norm(t, 2) >= brute_force_norm(t, 1) - 1e-6);
  CHECK(brute_force_radius(t, 2) >= brute_force_radius(t, 1) - 1e-6);
}

TEST_CASE("sweep and brute force agree at small dims") {
  Rng rng(32);
  for (int rep = 0; rep < 12; ++rep) {
    const std::size_t dim = 2 + rng.next_u64() % 2;
    const ComplexMatrix t = random_complex_gaussian(dim, rng);
    CHECK(std::abs(operator_norm(t) - brute_force_norm(t, 1)) <= 1e-3);
    CHECK(std::abs(numerical_radius_value(t, 1e-9) - brute_force_radius(t, 1)) <= 1e-3);
  }
}

TEST_CASE("experiment rejects invalid configs") {
  ExperimentConfig cfg;
  cfg.classes = {OperatorClass::Positive};
  cfg.dims = {2};
  cfg.epsilons = {0.5};
  cfg.trials_per_cell = 0;
  CHECK_THROWS_AS(validate_config(cfg), Error);
  cfg.trials_per_cell = 1;
  cfg.dims = {1};
  CHECK_THROWS_AS(validate_config(cfg), Error);
  cfg.dims = {2};
  cfg.mode = "nu";
  cfg.classes = {OperatorClass::Normal};
  CHECK_THROWS_AS(validate_config(cfg), Error);  // eps 0.5 not < 1/2 for normal-nu
  cfg.epsilons = {0.3};
  CHECK_NOTHROW(validate_config(cfg));
}

TEST_CASE("a small positive sweep passes every trial") {
  ExperimentConfig cfg;
  cfg.classes = {OperatorClass::Positive};
  cfg.dims = {2};
  cfg.epsilons = {0.5};
  cfg.trials_per_cell = 10;
  cfg.seed = 20240801;
  cfg.mode = "norm";
  const Report report = run_experiment(cfg);
  REQUIRE(report.rows.size() == 1);
  CHECK(report.rows[0].pass == 10);
  CHECK(report.rows[0].fail == 0);
  CHECK(report.rows[0].max_bound_ratio <= 1.0);
}

namespace {
std::string mask_ms_column(std::string csv) {
  // the wall-time column is measurement, not content; blank it per line
  std::string out;
  std::size_t start = 0;
  while (start < csv.size()) {
    std::size_t eol = csv.find('\n', start);
    if (eol == std::string::npos) eol = csv.size();
    std::string line = csv.substr(start, eol - start);
    const std::size_t comma = line.rfind(',');
    if (comma != std::string::npos) line = line.substr(0, comma + 1) + "ms";
    out += line + '\n';
    start = eol + 1;
  }
  return out;
}
}  // namespace

TEST_CASE("sweeps are deterministic given the seed") {
  ExperimentConfig cfg;
  cfg.classes = {OperatorClass::SelfAdjoint, OperatorClass::Unitary};
  cfg.dims = {2, 4};
  cfg.epsilons = {0.3};
  cfg.trials_per_cell = 3;
  cfg.seed = 777;
  cfg.mode = "nu";
  const Report a = run_experiment(cfg);
  const Report b = run_experiment(cfg);
  CHECK(mask_ms_column(report_csv_string(a)) == mask_ms_column(report_csv_string(b)));
  cfg.seed = 778;
  const Report c = run_experiment(cfg);
  CHECK(mask_ms_column(report_csv_string(a)) != mask_ms_column(report_csv_string(c)));

  // identical content whether or not the parallel kernels run
  cfg.seed = 777;
  const bool was = kernels::parallel_enabled();
  kernels::set_parallel_enabled(false);
  const Report serial = run_experiment(cfg);
  kernels::set_parallel_enabled(was);
  CHECK(mask_ms_column(report_csv_string(a)) == mask_ms_column(report_csv_string(serial)));
  for (const ReportRow& row : serial.rows) CHECK(row.pass + row.fail == row.trials);
}

TEST_CASE("csv emission shapes") {
  Report empty;
  empty.config.classes = {OperatorClass::Positive};
  empty.config.dims = {2};
  empty.config.epsilons = {0.5};
  const std::string header_only = report_csv_string(empty);
  CHECK(header_only ==
        "mode,class,dim,epsilon,trials,pass,fail,max_residual,max_bound_ratio,ms\n");

  ReportRow row;
  row.mode = "norm";
  row.op_class = OperatorClass::Positive;
  row.dim = 2;
  row.epsilon = 0.5;
  row.trials = 1;
  row.pass = 1;
  empty.rows.push_back(row);
  std::string two_lines = report_csv_string(empty);
  CHECK(std::count(two_lines.begin(), two_lines.end(), '\n') == 2);
  CHECK(two_lines.find("norm,positive,2,0.5,1,1,0,") != std::string::npos);
}

TEST_CASE("json round-trips") {
  // matrices and vectors reproduce bit for bit
  Rng rng(33);
  const ComplexMatrix m = random_complex_gaussian(4, rng);
  const ComplexMatrix m2 = matrix_from_json(matrix_to_json(m));
  CHECK(frobenius_norm(m - m2) == 0.0);
  const UnitVector v = random_unit_vector(5, rng);
  const ComplexVector v2 = vector_from_json(vector_to_json(v.entries()));
  CHECK(v2 == v.entries());

  // report json round-trip reproduces the full structure
  ExperimentConfig cfg;
  cfg.classes = {OperatorClass::Positive, OperatorClass::General};
  cfg.dims = {2, 3};
  cfg.epsilons = {0.5, 0.2};
  cfg.trials_per_cell = 2;
  cfg.seed = 99;
  cfg.mode = "norm";
  const Report report = run_experiment(cfg);
  const Report back = report_from_json(report_to_json(report));
  CHECK(back == report);

  // record round-trip
  const Instance inst = gen_instance(OperatorClass::Positive, 3, 0.4, false, 11);
  const CorrectionRecord rec =
      run_correction("norm", OperatorClass::Positive, 0.4, std::nullopt, false, inst.input,
                     inst.point);
  const CorrectionRecord rec2 = record_from_json(record_to_json(rec));
  CHECK(frobenius_norm(rec.input - rec2.input) == 0.0);
  CHECK(frobenius_norm(rec.corrected - rec2.corrected) == 0.0);
  CHECK(rec.certificate.theorem_tag == rec2.certificate.theorem_tag);
  CHECK(rec.certificate.op_distance == rec2.certificate.op_distance);
  CHECK(verify_certificate(rec2).passed);
}

TEST_CASE("failed trials carry reason codes") {
  // an unnormalized operator smuggled in through run_correction raises
  // PreconditionViolated; the sweep itself cannot produce it, so call the
  // corrector directly
  ComplexMatrix t(2, {2.0, 0.0, 0.0, 0.5});
  CHECK_THROWS_AS(run_correction("norm", OperatorClass::General, 0.3, std::nullopt, false, t,
                                 UnitVector::basis(2, 0)),
                  Error);
}
