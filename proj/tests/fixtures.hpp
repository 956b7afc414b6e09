#pragma once

// Shared model fixtures for the test suites.  Frozen expected values in the
// suites were computed with the enumeration oracle in oracle.hpp.

#include <stdexcept>
#include <utility>

#include "cheng/dataset.hpp"
#include "cheng/model.hpp"

namespace fixtures {

using cheng::Polarity;

// Two independent facilitating causes of E, one unobserved.
// P(E=1) = 0.34, P(E=1|C=1) = 0.56, P(E=1|C=0) = 0.12.
inline cheng::ChengModel m1() {
  cheng::ModelSpec spec;
  spec.variables = {{"C", true, 0.5}, {"U", false, 0.4}, {"E", true, {}}};
  spec.edges = {{"C", "E", Polarity::Facilitating, 0.5, {}},
                {"U", "E", Polarity::Facilitating, 0.3, {}}};
  return cheng::build_model(spec);
}

// An unobserved facilitator and an observed preventer.
// P(E=1|F=0) = 0.30, P(E=1|F=1) = 0.18.
inline cheng::ChengModel m2() {
  cheng::ModelSpec spec;
  spec.variables = {{"U", false, 0.5}, {"F", true, 0.5}, {"E", true, {}}};
  spec.edges = {{"U", "E", Polarity::Facilitating, 0.6, {}},
                {"F", "E", Polarity::Preventive, 0.4, {}}};
  return cheng::build_model(spec);
}

// Direct and mediated facilitation: C -> E plus C -> D -> E.
// Total power of C on E is 0.5 + 0.4*0.5 - 0.5*0.4*0.5 = 0.6.
inline cheng::ChengModel m3() {
  cheng::ModelSpec spec;
  spec.variables = {{"C", true, 0.5}, {"D", true, {}}, {"E", true, {}}};
  spec.edges = {{"C", "E", Polarity::Facilitating, 0.5, {}},
                {"C", "D", Polarity::Facilitating, 0.4, {}},
                {"D", "E", Polarity::Facilitating, 0.5, {}}};
  return cheng::build_model(spec);
}

// Correlated co-causes with a configurable C -> D strength; q_dc = 1 makes D
// a deterministic copy of C and breaks the zero-conditioned estimator.
inline cheng::ChengModel m4(double q_dc = 1.0) {
  cheng::ModelSpec spec;
  spec.variables = {{"C", true, 0.5}, {"D", true, {}}, {"E", true, {}}};
  spec.edges = {{"C", "D", Polarity::Facilitating, q_dc, {}},
                {"C", "E", Polarity::Facilitating, 0.5, {}},
                {"D", "E", Polarity::Facilitating, 0.3, {}}};
  return cheng::build_model(spec);
}

// Two observed facilitators, with an unobserved preventer scoped to D's edge
// only: C's power stays estimable, D's does not.
inline cheng::ChengModel m5() {
  cheng::ModelSpec spec;
  spec.variables = {{"C", true, 0.5}, {"D", true, 0.5}, {"F", false, 0.5}, {"E", true, {}}};
  spec.edges = {{"C", "E", Polarity::Facilitating, 0.5, {}},
                {"D", "E", Polarity::Facilitating, 0.6, {}},
                {"F", "E", Polarity::Preventive, 0.4, cheng::Scope::Of({{"D", "E"}})}};
  return cheng::build_model(spec);
}

// C facilitates an unobserved preventer of E; H is the facilitating
// background.  Total preventive power of C is 0.8 * 0.5 = 0.4;
// P(E=1|C=0) = 0.90, P(E=1|C=1) = 0.54.
inline cheng::ChengModel m6() {
  cheng::ModelSpec spec;
  spec.variables = {{"C", true, 0.5}, {"H", true, 1.0}, {"F", false, {}}, {"E", true, {}}};
  spec.edges = {{"C", "F", Polarity::Facilitating, 0.8, {}},
                {"F", "E", Polarity::Preventive, 0.5, {}},
                {"H", "E", Polarity::Facilitating, 0.9, {}}};
  return cheng::build_model(spec);
}

// Dual pathways of opposite sign: a direct facilitating edge plus a
// facilitated preventer.  Net influence is facilitating;
// total power = 0.6 * (1 - 0.5*0.8) = 0.36 and P(E=1|C=0) = 0.
inline cheng::ChengModel m7() {
  cheng::ModelSpec spec;
  spec.variables = {{"C", true, 0.5}, {"F", false, {}}, {"E", true, {}}};
  spec.edges = {{"C", "E", Polarity::Facilitating, 0.6, {}},
                {"C", "F", Polarity::Facilitating, 0.8, {}},
                {"F", "E", Polarity::Preventive, 0.5, {}}};
  return cheng::build_model(spec);
}

// C facilitates a preventer of an intermediate cause: the single path
// C -> F -| D -> E carries one non-final preventive edge, so C prevents E
// but no path contributes to the path rule.
inline cheng::ChengModel m8() {
  cheng::ModelSpec spec;
  spec.variables = {
      {"C", true, 0.5}, {"U", false, 0.7}, {"F", false, {}}, {"D", true, {}}, {"E", true, {}}};
  spec.edges = {{"C", "F", Polarity::Facilitating, 0.7, {}},
                {"U", "D", Polarity::Facilitating, 0.8, {}},
                {"F", "D", Polarity::Preventive, 0.6, {}},
                {"D", "E", Polarity::Facilitating, 0.9, {}}};
  return cheng::build_model(spec);
}

// A chain of two preventers: the C -> A -| B -| E path has even preventive
// parity, so its sign is facilitating by extrapolation.
inline cheng::ChengModel m9() {
  cheng::ModelSpec spec;
  spec.variables = {{"C", true, 0.5}, {"X", true, 0.5}, {"Y", true, 0.5},
                    {"A", true, {}},  {"B", true, {}},  {"E", true, {}}};
  spec.edges = {{"C", "A", Polarity::Facilitating, 0.5, {}},
                {"X", "B", Polarity::Facilitating, 0.7, {}},
                {"A", "B", Polarity::Preventive, 0.6, {}},
                {"Y", "E", Polarity::Facilitating, 0.8, {}},
                {"B", "E", Polarity::Preventive, 0.4, {}}};
  return cheng::build_model(spec);
}

// Southern Utah childhood leukemia deaths by fallout exposure, weights in
// hundreds of person-years.
inline cheng::Dataset utah() {
  cheng::Dataset data;
  data.variables = {"exposure", "death"};
  data.records = {{{1, 1}, 30.0}, {{1, 0}, 6883.0}, {{0, 1}, 16.0}, {{0, 0}, 5885.0}};
  return data;
}

// Runs f and returns the code of the Error it must throw.
template <typename F>
cheng::ErrorCode code_of(F&& f) {
  try {
    std::forward<F>(f)();
  } catch (const cheng::Error& e) {
    return e.code();
  }
  throw std::runtime_error("expected a cheng::Error");
}

}  // namespace fixtures
