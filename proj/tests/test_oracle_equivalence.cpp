#include <catch2/catch_amalgamated.hpp>

#include "stabloc/verify.hpp"

using namespace stabloc;

TEST_CASE("oracle cross-validation suite") {
  VerifyOptions opt;
  opt.seed = 7;
  opt.cases = 60;
  opt.noisy_cases = 20;
  VerifyReport rep = verify_against_oracle(opt);
  INFO(rep.first_failure);
  REQUIRE(rep.pass());
  REQUIRE(rep.graphs == 60);
  REQUIRE(rep.noisy_instances == 20);
  REQUIRE(rep.forbidden_mismatches == 0);
  REQUIRE(rep.max_probability_error <= 1e-12);
  REQUIRE(rep.min_fidelity >= 1.0 - 1e-10);
  REQUIRE(rep.max_lambda_error <= 1e-10);
}

TEST_CASE("verification is seed reproducible") {
  VerifyOptions opt;
  opt.seed = 99;
  opt.cases = 10;
  opt.noisy_cases = 5;
  VerifyReport a = verify_against_oracle(opt);
  VerifyReport b = verify_against_oracle(opt);
  REQUIRE(a.graphs == b.graphs);
  REQUIRE(a.setups == b.setups);
  REQUIRE(a.outcomes == b.outcomes);
  REQUIRE(a.max_probability_error == b.max_probability_error);
  REQUIRE(a.min_fidelity == b.min_fidelity);
  REQUIRE(a.max_lambda_error == b.max_lambda_error);
}
