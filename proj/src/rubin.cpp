#include "cheng/rubin.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace cheng {

RubinModel make_rubin(double prob_c, double prob_u, double prob_cu, double prob_n) {
  for (double p : {prob_c, prob_u, prob_cu, prob_n}) {
    if (!(p >= 0.0 && p <= 1.0)) {
      std::ostringstream os;
      os << "unit-kind frequency " << p << " outside [0,1]";
      throw Error(ErrorCode::BadProbability, os.str());
    }
  }
  double sum = prob_c + prob_u + prob_cu + prob_n;
  if (std::abs(sum - 1.0) > 1e-12) {
    std::ostringstream os;
    os << "unit-kind frequencies sum to " << sum;
    throw Error(ErrorCode::BadProbability, os.str());
  }
  return RubinModel{prob_c, prob_u, prob_cu, prob_n};
}

double rubin_prob_e(const RubinModel& rm, double p_c, double p_u) {
  if (!(p_c >= 0.0 && p_c <= 1.0) || !(p_u >= 0.0 && p_u <= 1.0))
    throw Error(ErrorCode::BadProbability, "exposure rates must lie in [0,1]");
  return p_c * rm.prob_c + p_u * rm.prob_u + p_u * rm.prob_cu + p_c * rm.prob_cu -
         p_u * p_c * rm.prob_cu;
}

ChengPair rubin_to_cheng(const RubinModel& rm) {
  return ChengPair{rm.prob_c + rm.prob_cu, rm.prob_u + rm.prob_cu};
}

RubinModel cheng_to_rubin(double q_ec, double q_eu) {
  if (!(q_ec >= 0.0 && q_ec <= 1.0) || !(q_eu >= 0.0 && q_eu <= 1.0))
    throw Error(ErrorCode::BadProbability, "q parameters must lie in [0,1]");
  // The exclusive kinds and the overlap represent the q's as sums, so the
  // stored values are chosen to make q = part + overlap hold under rounding,
  // not just to within an ulp.  Straight rounding of q - q*q' can land on an
  // exact half-ulp tie that round-to-even skips from both sides; nudging the
  // overlap (whose ulp is finer in the affected regime) always resolves it.
  constexpr double kInf = std::numeric_limits<double>::infinity();
  auto pick_part = [](double overlap, double target, double& out) {
    double base = target - overlap;
    for (double cand : {base, std::nextafter(base, -kInf), std::nextafter(base, kInf)}) {
      if (cand >= 0.0 && cand + overlap == target) {
        out = cand;
        return true;
      }
    }
    return false;
  };

  RubinModel rm;
  const double overlap0 = q_ec * q_eu;
  double overlap = overlap0;
  for (int step : {0, -1, 1, -2, 2}) {
    double cand = overlap0;
    for (int k = 0; k < step; ++k) cand = std::nextafter(cand, kInf);
    for (int k = 0; k > step; --k) cand = std::nextafter(cand, -kInf);
    if (cand < 0.0 || cand > 1.0) continue;
    if (pick_part(cand, q_ec, rm.prob_c) && pick_part(cand, q_eu, rm.prob_u)) {
      overlap = cand;
      break;
    }
  }
  rm.prob_cu = overlap;
  rm.prob_n = 1.0 - rm.prob_c - rm.prob_u - rm.prob_cu;
  if (rm.prob_n < 0.0 && rm.prob_n > -1e-12) rm.prob_n = 0.0;
  return rm;
}

double independence_residual(const RubinModel& rm) {
  return rm.prob_u * rm.prob_c - rm.prob_cu * rm.prob_n;
}

}  // namespace cheng
