#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>
#include <sstream>

#include "cheng/inference.hpp"
#include "cheng/model.hpp"
#include "fixtures.hpp"
#include "oracle.hpp"

using namespace cheng;

namespace {

double max_table_gap(const JointTable& a, const JointTable& b) {
  REQUIRE(a.probs.size() == b.probs.size());
  double gap = 0.0;
  for (std::size_t i = 0; i < a.probs.size(); ++i)
    gap = std::max(gap, std::abs(a.probs[i] - b.probs[i]));
  return gap;
}

double max_oracle_gap(const ChengModel& m, const JointTable& table) {
  auto reference = oracle::joint(m);
  double gap = 0.0;
  for (std::size_t row = 0; row < table.rows(); ++row) {
    oracle::Assignment values(m.variable_count());
    for (int v = 0; v < m.variable_count(); ++v) values[v] = table.value_at(row, v);
    auto it = reference.find(values);
    double expected = it == reference.end() ? 0.0 : it->second;
    gap = std::max(gap, std::abs(table.probs[row] - expected));
  }
  return gap;
}

}  // namespace

TEST_CASE("two-cause fixture marginals") {
  auto m1 = fixtures::m1();
  auto p_e = probability(m1, {{"E", 1}}, {});
  REQUIRE(p_e);
  CHECK(*p_e == doctest::Approx(0.34).epsilon(1e-12));

  auto given_c = probability(m1, {{"E", 1}}, {{"C", 1}});
  REQUIRE(given_c);
  CHECK(*given_c == doctest::Approx(0.56).epsilon(1e-12));

  auto without_c = probability(m1, {{"E", 1}}, {{"C", 0}});
  REQUIRE(without_c);
  CHECK(*without_c == doctest::Approx(0.12).epsilon(1e-12));
}

TEST_CASE("noisy-AND fixture conditional") {
  auto p = probability(fixtures::m2(), {{"E", 1}}, {{"F", 1}});
  REQUIRE(p);
  CHECK(*p == doctest::Approx(0.18).epsilon(1e-12));
}

TEST_CASE("all-zero q parameters silence endogenous variables") {
  ModelSpec spec;
  spec.variables = {{"C", true, 0.5}, {"E", true, {}}};
  spec.edges = {{"C", "E", Polarity::Facilitating, 0.0, {}}};
  auto p = probability(build_model(spec), {{"E", 1}}, {});
  REQUIRE(p);
  CHECK(*p == 0.0);
}

TEST_CASE("deterministic dependency makes a conditional undefined") {
  auto m4 = fixtures::m4(1.0);
  CHECK(!probability(m4, {{"E", 1}}, {{"C", 0}, {"D", 1}}));
}

TEST_CASE("joint tables are normalized and respect the admissible set") {
  for (const auto& model : {fixtures::m1(), fixtures::m3(), fixtures::m4(1.0), fixtures::m5(),
                            fixtures::m6(), fixtures::m9()}) {
    auto table = joint(model);
    double sum = 0.0;
    for (double p : table.probs) {
      CHECK(p >= 0.0);
      sum += p;
    }
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
  }
  // q_dc = 1 pins D to C: the D=1, C=0 rows carry no mass.
  auto table = joint(fixtures::m4(1.0));
  CHECK(table.mass({{"C", 0}, {"D", 1}}) == 0.0);
}

TEST_CASE("Boolean-sum identity for two independent facilitating causes") {
  auto m1 = fixtures::m1();
  auto p_e = probability(m1, {{"E", 1}}, {});
  REQUIRE(p_e);
  const double term_c = 0.5 * 0.5, term_u = 0.3 * 0.4, both = 0.5 * 0.3 * 0.5 * 0.4;
  CHECK(*p_e == doctest::Approx(term_c + term_u - both).epsilon(1e-12));
}

TEST_CASE("gate-factor and q-bit enumeration routes agree") {
  for (const auto& model : {fixtures::m1(), fixtures::m2(), fixtures::m5(), fixtures::m6(),
                            fixtures::m7(), fixtures::m8(), fixtures::m9()}) {
    CHECK(max_table_gap(joint(model), joint_by_qbit_enumeration(model)) < 1e-12);
  }
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    auto model = build_model(oracle::random_spec(rng, 8, 12, false));
    auto table = joint(model);
    CHECK(max_table_gap(table, joint_by_qbit_enumeration(model)) < 1e-12);
    CHECK(max_oracle_gap(model, table) < 1e-12);
  }
}

TEST_CASE("markov_check passes on generated joints and catches perturbations") {
  for (const auto& model : {fixtures::m1(), fixtures::m5(), fixtures::m9()}) {
    auto table = joint(model);
    CHECK(markov_check(model, table).pass);
  }

  auto m1 = fixtures::m1();
  auto table = joint(m1);
  table.probs[3] += 1e-3;
  double sum = 0.0;
  for (double p : table.probs) sum += p;
  for (double& p : table.probs) p /= sum;
  CHECK(!markov_check(m1, table).pass);

  auto other = joint(fixtures::m2());
  CHECK(fixtures::code_of([&] { markov_check(m1, other); }) == ErrorCode::Mismatch);
}

TEST_CASE("direct_power returns the edge parameter") {
  auto m1 = fixtures::m1();
  CHECK(direct_power(m1, "C", "E") == 0.5);
  // ... and matches the zero-conditioned conditional probability.
  auto conditional = probability(m1, {{"E", 1}}, {{"C", 1}, {"U", 0}});
  REQUIRE(conditional);
  CHECK(*conditional == doctest::Approx(0.5).epsilon(1e-12));

  CHECK(direct_power(fixtures::m2(), "F", "E") == 0.4);
  // Preventive ratio on exact conditionals: -dP / P(E|F=0) = 0.12 / 0.3.
  auto m2 = fixtures::m2();
  auto on = probability(m2, {{"E", 1}}, {{"F", 1}});
  auto off = probability(m2, {{"E", 1}}, {{"F", 0}});
  REQUIRE((on && off));
  CHECK(-(*on - *off) / *off == doctest::Approx(0.4).epsilon(1e-9));

  ModelSpec spec;
  spec.variables = {{"C", true, 0.5}, {"E", true, {}}, {"U", false, 0.5}};
  spec.edges = {{"C", "E", Polarity::Facilitating, 0.0, {}},
                {"U", "E", Polarity::Facilitating, 0.5, {}}};
  CHECK(direct_power(build_model(spec), "C", "E") == 0.0);

  CHECK(fixtures::code_of([&] { direct_power(fixtures::m3(), "E", "C"); }) ==
        ErrorCode::NoDirectEdge);
}

TEST_CASE("total_power on the fixtures") {
  auto m3 = total_power(fixtures::m3(), "C", "E");
  CHECK(m3.value == doctest::Approx(0.6).epsilon(1e-12));
  CHECK(m3.via_path_rule == doctest::Approx(0.6).epsilon(1e-12));
  REQUIRE(m3.via_conditional);
  CHECK(std::abs(*m3.via_conditional - m3.via_path_rule) < 1e-9);
  CHECK(m3.sense == Influence::Facilitating);

  auto m6 = total_power(fixtures::m6(), "C", "E");
  CHECK(m6.value == doctest::Approx(0.4).epsilon(1e-9));
  CHECK(m6.via_path_rule == doctest::Approx(0.4).epsilon(1e-12));
  CHECK(m6.sense == Influence::Preventing);

  // Mixed pathways: the direct edge gated by the preventive route.
  auto m7 = total_power(fixtures::m7(), "C", "E");
  CHECK(m7.value == doctest::Approx(0.6 * (1 - 0.5 * 0.8)).epsilon(1e-9));
  CHECK(m7.via_path_rule == doctest::Approx(0.6 * (1 - 0.5 * 0.8)).epsilon(1e-12));
  CHECK(m7.sense == Influence::Facilitating);

  // Single edge: total equals direct.
  auto m1 = total_power(fixtures::m1(), "C", "E");
  CHECK(m1.value == doctest::Approx(direct_power(fixtures::m1(), "C", "E")).epsilon(1e-9));

  CHECK(fixtures::code_of([&] { total_power(fixtures::m1(), "E", "C"); }) == ErrorCode::NoPath);
}

TEST_CASE("mixed path rule honors preventer scopes") {
  // The preventive route gates only D's edge, so C's direct power passes
  // through untouched.
  ModelSpec spec;
  spec.variables = {{"C", true, 0.5}, {"D", true, 0.5}, {"F", false, {}}, {"E", true, {}}};
  spec.edges = {{"C", "E", Polarity::Facilitating, 0.6, {}},
                {"D", "E", Polarity::Facilitating, 0.7, {}},
                {"C", "F", Polarity::Facilitating, 0.8, {}},
                {"F", "E", Polarity::Preventive, 0.5, Scope::Of({{"D", "E"}})}};
  auto model = build_model(spec);
  auto result = total_power(model, "C", "E");
  CHECK(influence_class(model, "C", "E").kind == Influence::Mixed);
  CHECK(result.sense == Influence::Facilitating);  // net sense of a mixed cause
  CHECK(result.via_path_rule == doctest::Approx(0.6).epsilon(1e-12));
  REQUIRE(result.via_conditional);
  CHECK(std::abs(*result.via_conditional - result.via_path_rule) < 1e-9);
}

TEST_CASE("a preventer buried mid-path contributes no path power") {
  // The only route runs through a preventer of an intermediate cause; no
  // path qualifies, and zeroing the excluded branch's feeder starves the
  // effect entirely.
  auto result = total_power(fixtures::m8(), "C", "E");
  CHECK(result.sense == Influence::Preventing);
  CHECK(result.via_path_rule == 0.0);
  CHECK(!result.via_conditional);
  CHECK(result.value == 0.0);
}

TEST_CASE("path rule equals the conditional definition on all-facilitating models") {
  std::mt19937_64 rng(7);
  int checked = 0;
  for (int trial = 0; trial < 12; ++trial) {
    auto model = build_model(oracle::random_spec(rng, 6, 9, true));
    for (int a = 0; a < model.variable_count(); ++a)
      for (int b = 0; b < model.variable_count(); ++b) {
        if (a == b || !model.reachable(a, b)) continue;
        auto result = total_power(model, model.variable(a).name, model.variable(b).name);
        REQUIRE(result.via_conditional);
        CHECK(std::abs(*result.via_conditional - result.via_path_rule) < 1e-9);
        ++checked;
      }
  }
  CHECK(checked > 20);
}

TEST_CASE("joint CSV lists assignments with probabilities") {
  auto table = joint(fixtures::m1());
  std::ostringstream os;
  write_joint_csv(table, os);
  std::istringstream is(os.str());
  std::string line;
  std::getline(is, line);
  CHECK(line == "C,U,E,probability");
  int rows = 0;
  while (std::getline(is, line)) ++rows;
  CHECK(rows == 8);
}

TEST_CASE("enumeration cap yields TooLarge") {
  ModelSpec spec;
  for (int i = 0; i < 21; ++i)
    spec.variables.push_back({"V" + std::to_string(i), true, 0.5});
  auto model = build_model(spec);
  CHECK(fixtures::code_of([&] { joint(model); }) == ErrorCode::TooLarge);
}

TEST_CASE("probability rejects overlapping event and condition") {
  CHECK(fixtures::code_of([&] {
          probability(fixtures::m1(), {{"E", 1}}, {{"E", 0}});
        }) == ErrorCode::InvalidQuery);
  CHECK(fixtures::code_of([&] {
          probability(fixtures::m1(), {{"Z", 1}}, {});
        }) == ErrorCode::UnknownVariable);
}
