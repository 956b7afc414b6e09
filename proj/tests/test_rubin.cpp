#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "cheng/attribution.hpp"
#include "cheng/inference.hpp"
#include "cheng/rubin.hpp"
#include "fixtures.hpp"

using namespace cheng;

namespace {

ChengModel two_cause_model(double q_ec, double q_eu, double p_c, double p_u) {
  ModelSpec spec;
  spec.variables = {{"C", true, p_c}, {"U", false, p_u}, {"E", true, {}}};
  spec.edges = {{"C", "E", Polarity::Facilitating, q_ec, {}},
                {"U", "E", Polarity::Facilitating, q_eu, {}}};
  return build_model(spec);
}

// The four-cell (C, E) table implied by the unit-kind semantics directly:
// E occurs for kind c or cu units under C, and for kind u or cu units under U.
Dataset rubin_dataset(const RubinModel& rm, double p_c, double p_u) {
  double e_given_c = rm.prob_c + rm.prob_cu + rm.prob_u * p_u;
  double e_given_not_c = (rm.prob_u + rm.prob_cu) * p_u;
  Dataset data;
  data.variables = {"C", "E"};
  data.records = {{{1, 1}, p_c * e_given_c},
                  {{1, 0}, p_c * (1.0 - e_given_c)},
                  {{0, 1}, (1.0 - p_c) * e_given_not_c},
                  {{0, 0}, (1.0 - p_c) * (1.0 - e_given_not_c)}};
  return data;
}

}  // namespace

TEST_CASE("effect frequency from unit kinds") {
  auto rm = make_rubin(0.18, 0.28, 0.12, 0.42);
  CHECK(rubin_prob_e(rm, 0.5, 0.5) == doctest::Approx(0.32).epsilon(1e-12));
  CHECK(rubin_prob_e(make_rubin(0, 0, 0, 1), 0.7, 0.9) == 0.0);
  CHECK(rubin_prob_e(make_rubin(1, 0, 0, 0), 1.0, 0.3) == 1.0);
}

TEST_CASE("kind frequencies map to q parameters") {
  auto pair = rubin_to_cheng(make_rubin(0.18, 0.28, 0.12, 0.42));
  CHECK(pair.q_ec == doctest::Approx(0.3).epsilon(1e-12));
  CHECK(pair.q_eu == doctest::Approx(0.4).epsilon(1e-12));

  auto zero = rubin_to_cheng(make_rubin(0, 0, 0, 1));
  CHECK(zero.q_ec == 0.0);
  CHECK(zero.q_eu == 0.0);

  auto both = rubin_to_cheng(make_rubin(0, 0, 1, 0));
  CHECK(both.q_ec == 1.0);
  CHECK(both.q_eu == 1.0);
}

TEST_CASE("independence construction from q parameters") {
  auto rm = cheng_to_rubin(0.3, 0.4);
  CHECK(rm.prob_c == doctest::Approx(0.18).epsilon(1e-12));
  CHECK(rm.prob_u == doctest::Approx(0.28).epsilon(1e-12));
  CHECK(rm.prob_cu == doctest::Approx(0.12).epsilon(1e-12));
  CHECK(rm.prob_n == doctest::Approx(0.42).epsilon(1e-12));

  auto none = cheng_to_rubin(0.0, 0.4);
  CHECK(none.prob_c == 0.0);
  CHECK(none.prob_u == 0.4);
  CHECK(none.prob_cu == 0.0);
  CHECK(none.prob_n == doctest::Approx(0.6).epsilon(1e-12));

  auto certain = cheng_to_rubin(1.0, 1.0);
  CHECK(certain.prob_cu == 1.0);
  CHECK(certain.prob_c == 0.0);
  CHECK(certain.prob_u == 0.0);
  CHECK(certain.prob_n == 0.0);
}

TEST_CASE("independence residual") {
  CHECK(std::abs(independence_residual(make_rubin(0.18, 0.28, 0.12, 0.42))) < 1e-12);
  CHECK(independence_residual(make_rubin(0.2, 0.2, 0.1, 0.5)) ==
        doctest::Approx(-0.01).epsilon(1e-12));
  CHECK(independence_residual(make_rubin(0, 0, 0, 1)) == 0.0);
}

TEST_CASE("round trip and residual on the 0.05 grid") {
  for (int i = 0; i <= 20; ++i) {
    for (int j = 0; j <= 20; ++j) {
      double qc = i * 0.05, qu = j * 0.05;
      auto rm = cheng_to_rubin(qc, qu);
      auto pair = rubin_to_cheng(rm);
      CHECK(pair.q_ec == qc);
      CHECK(pair.q_eu == qu);
      CHECK(std::abs(independence_residual(rm)) < 1e-12);
    }
  }
}

TEST_CASE("unit-kind effect frequency matches noisy-OR inference") {
  auto rm = cheng_to_rubin(0.3, 0.4);
  auto p = probability(two_cause_model(0.3, 0.4, 0.5, 0.5), {{"E", 1}}, {});
  REQUIRE(p);
  CHECK(std::abs(rubin_prob_e(rm, 0.5, 0.5) - *p) < 1e-12);

  for (double qc : {0.0, 0.15, 0.6, 1.0})
    for (double qu : {0.05, 0.5, 0.95})
      for (double pc : {0.2, 0.8}) {
        auto kinds = cheng_to_rubin(qc, qu);
        auto inferred = probability(two_cause_model(qc, qu, pc, 0.35), {{"E", 1}}, {});
        REQUIRE(inferred);
        CHECK(std::abs(rubin_prob_e(kinds, pc, 0.35) - *inferred) < 1e-12);
      }
}

TEST_CASE("attribution agrees between unit-kind and noisy-OR frequencies") {
  const double qc = 0.3, qu = 0.4, pc = 0.5, pu = 0.5;
  auto rm = cheng_to_rubin(qc, qu);
  auto from_kinds = rubin_dataset(rm, pc, pu);
  auto from_model = exact_dataset(two_cause_model(qc, qu, pc, pu));

  auto paf_kinds = paf(from_kinds, "C", "E");
  auto paf_model = paf(from_model, "C", "E");
  REQUIRE((paf_kinds && paf_model));
  CHECK(std::abs(*paf_kinds - *paf_model) < 1e-9);

  auto causation_kinds = prob_causation(from_kinds, "C", "E");
  auto causation_model = prob_causation(from_model, "C", "E");
  REQUIRE((causation_kinds && causation_model));
  CHECK(std::abs(*causation_kinds - *causation_model) < 1e-9);
}

TEST_CASE("kind frequencies are validated") {
  CHECK(fixtures::code_of([] { make_rubin(0.5, 0.5, 0.5, -0.5); }) == ErrorCode::BadProbability);
  CHECK(fixtures::code_of([] { make_rubin(0.5, 0.4, 0.2, 0.2); }) == ErrorCode::BadProbability);
  CHECK(fixtures::code_of([] { rubin_prob_e(make_rubin(1, 0, 0, 0), 1.5, 0.5); }) ==
        ErrorCode::BadProbability);
  CHECK(fixtures::code_of([] { cheng_to_rubin(1.2, 0.5); }) == ErrorCode::BadProbability);
}
