// Drives the installed CLI end to end through its file interfaces.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "bpb/experiment.hpp"
#include "bpb/generators.hpp"
#include "bpb/io_json.hpp"

using namespace bpb;

namespace {
const std::string kCli = BPB_CLI_PATH;
const std::string kDir = "cli_scratch";

int run(const std::string& args) {
  const std::string cmd = kCli + " " + args + " > " + kDir + "/stdout.txt 2>&1";
  const int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void setup() {
  [[maybe_unused]] int rc = std::system(("mkdir -p " + kDir).c_str());
  const Instance inst = gen_instance(OperatorClass::Normal, 3, 0.2, true, 4242);
  save_json_file(kDir + "/T.json", matrix_to_json(inst.input));
  save_json_file(kDir + "/x0.json", vector_to_json(inst.point.entries()));

  const Instance small = gen_instance(OperatorClass::General, 2, 0.3, false, 17);
  save_json_file(kDir + "/T2.json", matrix_to_json(small.input));
  save_json_file(kDir + "/x02.json", vector_to_json(small.point.entries()));

  ExperimentConfig cfg;
  cfg.classes = {OperatorClass::Positive};
  cfg.dims = {2, 3};
  cfg.epsilons = {0.5};
  cfg.trials_per_cell = 3;
  cfg.seed = 5;
  cfg.mode = "norm";
  save_json_file(kDir + "/cfg.json", config_to_json(cfg));
}
}  // namespace

TEST_CASE("correct, verify, oracle, and sweep round trip through files") {
  setup();

  SUBCASE("nu correction on a normal operator") {
    CHECK(run("correct --mode nu --class normal --epsilon 0.2 --input " + kDir +
              "/T.json --point " + kDir + "/x0.json --out " + kDir +
              "/result.json --trace " + kDir + "/trace.json --dump-spectral " + kDir +
              "/spectral.json") == 0);
    const CorrectionRecord rec = record_from_json(load_json_file(kDir + "/result.json"));
    CHECK(rec.certificate.theorem_tag == "nu-normal");
    CHECK(verify_certificate(rec).passed);
    CHECK(run("verify --result " + kDir + "/result.json") == 0);

    const nlohmann::json spectral = load_json_file(kDir + "/spectral.json");
    CHECK(spectral.at("points").size() >= 1);
    const nlohmann::json trace = load_json_file(kDir + "/trace.json");
    CHECK(trace.contains("converged"));
  }

  SUBCASE("norm correction with exact point and normalization") {
    CHECK(run("correct --mode norm --class general --epsilon 0.3 --exact-point --normalize "
              "--input " + kDir + "/T2.json --point " + kDir + "/x02.json --out " + kDir +
              "/result2.json") == 0);
    const nlohmann::json out = load_json_file(kDir + "/result2.json");
    CHECK(out.contains("normalization_scale"));
    const CorrectionRecord rec = record_from_json(out);
    CHECK(rec.certificate.theorem_tag == "norm-pointwise");
    CHECK(run("verify --result " + kDir + "/result2.json") == 0);
  }

  SUBCASE("tampered results fail verification") {
    CHECK(run("correct --mode norm --class general --epsilon 0.3 --input " + kDir +
              "/T2.json --point " + kDir + "/x02.json --out " + kDir + "/result3.json") == 0);
    nlohmann::json doc = load_json_file(kDir + "/result3.json");
    doc["S"]["entries"][0][0][0] = 0.0;  // corrupt one entry of the output
    doc["S"]["entries"][0][0][1] = 0.9;
    save_json_file(kDir + "/tampered.json", doc);
    CHECK(run("verify --result " + kDir + "/tampered.json") == 1);
  }

  SUBCASE("oracle agreement") {
    CHECK(run("oracle --input " + kDir + "/T.json") == 0);
  }

  SUBCASE("sweep writes reports and honors BPB_SEED") {
    CHECK(run("sweep --config " + kDir + "/cfg.json --out " + kDir + "/report.csv --json " +
              kDir + "/report.json --plotdata " + kDir + "/plot.csv") == 0);
    const std::string csv = slurp(kDir + "/report.csv");
    CHECK(csv.find("mode,class,dim,epsilon,trials,pass,fail") == 0);
    CHECK(csv.find("norm,positive,2,0.5,3,3,0") != std::string::npos);
    const std::string plot = slurp(kDir + "/plot.csv");
    CHECK(plot.find("class,epsilon,theoretical_bound,observed_max_distance") == 0);

    const Report report = report_from_json(load_json_file(kDir + "/report.json"));
    CHECK(report.config.seed == 5);

    // env seed override is visible in the echoed config
    [[maybe_unused]] int rc2 = std::system(("BPB_SEED=31337 " + kCli + " sweep --config " + kDir + "/cfg.json --json " +
                 kDir + "/report_env.json > /dev/null 2>&1")
                    .c_str());
    const Report seeded = report_from_json(load_json_file(kDir + "/report_env.json"));
    CHECK(seeded.config.seed == 31337);
  }

  SUBCASE("malformed input produces a clean failure") {
    std::ofstream bad(kDir + "/bad.json");
    bad << "{ not json";
    bad.close();
    CHECK(run("oracle --input " + kDir + "/bad.json") == 2);
  }
}
