#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "cheng/bool_expr.hpp"
#include "cheng/inference.hpp"
#include "cheng/intervention.hpp"
#include "fixtures.hpp"

using namespace cheng;

TEST_CASE("surgery detaches the variable and pins its value") {
  auto m4 = fixtures::m4(1.0);
  auto pinned = intervene(m4, "D", 1);

  int d = pinned.variable_index("D");
  CHECK(pinned.is_exogenous(d));
  CHECK(*pinned.variable(d).base_rate == 1.0);

  auto marginal = probability(pinned, {{"D", 1}}, {});
  REQUIRE(marginal);
  CHECK(*marginal == 1.0);

  // Children keep their edges and q values.
  CHECK(pinned.find_edge("D", "E", Polarity::Facilitating) >= 0);
  CHECK(direct_power(pinned, "D", "E") == 0.3);
  CHECK(direct_power(pinned, "C", "E") == 0.5);
}

TEST_CASE("the rescued equation behaves as the substituted form") {
  // After pinning D=1 the child equation evaluates as q_ec*C ++ q_ed for
  // every bit assignment, which is the substitution-rule result.
  auto pinned = intervene(fixtures::m4(1.0), "D", 1);
  auto equation = compile(pinned, "E");
  int ce = pinned.find_edge("C", "E", Polarity::Facilitating);
  int de = pinned.find_edge("D", "E", Polarity::Facilitating);
  for (int mask = 0; mask < 8; ++mask) {
    BitAssignment bits;
    bits.vars = {{"C", mask & 1}, {"D", 1}};
    bits.qbits = {{ce, (mask >> 1) & 1}, {de, (mask >> 2) & 1}};
    int expected = (bits.qbits[ce] & bits.vars["C"]) | bits.qbits[de];
    CHECK(evaluate(equation, bits) == expected);
  }

  auto p = probability(pinned, {{"E", 1}}, {{"C", 0}});
  REQUIRE(p);
  CHECK(*p == doctest::Approx(0.3).epsilon(1e-12));
}

TEST_CASE("intervening on an exogenous variable replaces its base rate") {
  auto m1 = fixtures::m1();
  auto pinned = intervene(m1, "C", 1);
  auto marginal = probability(pinned, {{"C", 1}}, {});
  REQUIRE(marginal);
  CHECK(*marginal == 1.0);
  CHECK(pinned.edges() == m1.edges());
}

TEST_CASE("the original model is untouched and surgery is idempotent") {
  auto m4 = fixtures::m4(1.0);
  auto once = intervene(m4, "D", 1);
  CHECK(m4 == fixtures::m4(1.0));
  CHECK(intervene(once, "D", 1) == once);
}

TEST_CASE("post-surgery joints stay Markov and non-descendants keep their marginals") {
  for (const auto& [model, target] :
       {std::pair{fixtures::m3(), std::string("D")}, {fixtures::m5(), "D"}, {fixtures::m6(), "F"}}) {
    auto before = joint(model);
    auto pinned = intervene(model, target, 1);
    auto after = joint(pinned);
    CHECK(markov_check(pinned, after).pass);

    int t = model.variable_index(target);
    for (int v = 0; v < model.variable_count(); ++v) {
      if (v == t || model.reachable(t, v)) continue;
      const auto& name = model.variable(v).name;
      CHECK(std::abs(before.mass({{name, 1}}) - after.mass({{name, 1}})) < 1e-9);
    }
  }
}

TEST_CASE("unknown variables and non-binary values are rejected") {
  CHECK(fixtures::code_of([&] { intervene(fixtures::m1(), "Z", 1); }) ==
        ErrorCode::UnknownVariable);
  CHECK(fixtures::code_of([&] { intervene(fixtures::m1(), "C", 2); }) ==
        ErrorCode::InvalidQuery);
}
