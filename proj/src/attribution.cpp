#include "cheng/attribution.hpp"

#include "cheng/estimation.hpp"

namespace cheng {

namespace {

struct AttributionTerms {
  double dp = 0.0;
  double p_cause = 0.0;
  double p_effect = 0.0;
};

std::optional<AttributionTerms> terms(const Dataset& data, const std::string& c,
                                      const std::string& e) {
  auto dp = delta_p(data, c, e);
  auto p_cause = data.frequency({{c, 1}}, {});
  auto p_effect = data.frequency({{e, 1}}, {});
  if (!dp || !p_cause || !p_effect || *p_effect <= 0.0) return std::nullopt;
  return AttributionTerms{*dp, *p_cause, *p_effect};
}

}  // namespace

std::optional<double> paf(const Dataset& data, const std::string& c, const std::string& e) {
  auto t = terms(data, c, e);
  if (!t) return std::nullopt;
  return t->dp * t->p_cause / t->p_effect;
}

std::optional<double> prob_causation(const Dataset& data, const std::string& c,
                                     const std::string& e) {
  auto t = terms(data, c, e);
  if (!t) return std::nullopt;
  auto p_both = data.frequency({{e, 1}, {c, 1}}, {});
  if (!p_both || *p_both <= 0.0) return std::nullopt;
  return t->dp * t->p_cause / *p_both;
}

std::optional<double> forecast_removal(const Dataset& data, const std::string& c,
                                       const std::string& e) {
  auto t = terms(data, c, e);
  if (!t) return std::nullopt;
  return t->p_effect - t->dp * t->p_cause;
}

}  // namespace cheng
