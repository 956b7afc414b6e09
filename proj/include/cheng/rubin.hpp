#pragma once

// Potential-outcomes unit-kind model and its correspondence with two-cause
// noisy-OR models.  Units split into four kinds: responding to the candidate
// cause alone (c), to the background causes alone (u), to either (cu), or to
// neither (n).

#include "cheng/errors.hpp"

namespace cheng {

struct RubinModel {
  double prob_c = 0.0;
  double prob_u = 0.0;
  double prob_cu = 0.0;
  double prob_n = 1.0;
};

// Validates the kind frequencies: each in [0,1], summing to 1 within 1e-12.
RubinModel make_rubin(double prob_c, double prob_u, double prob_cu, double prob_n);

// P(E) when exposure to the cause and to the background are independent with
// rates p_c and p_u.
double rubin_prob_e(const RubinModel& rm, double p_c, double p_u);

struct ChengPair {
  double q_ec = 0.0;
  double q_eu = 0.0;
};

// q_ec = c + cu, q_eu = u + cu.
ChengPair rubin_to_cheng(const RubinModel& rm);

// The unique unit-kind model with independent cause/background responses:
// cu = q_ec * q_eu, c = q_ec - cu, u = q_eu - cu.
RubinModel cheng_to_rubin(double q_ec, double q_eu);

// u*c - cu*n, the cleared-denominator form of the independence constraint;
// zero iff the kind frequencies admit independent q parameters.
double independence_residual(const RubinModel& rm);

}  // namespace cheng
