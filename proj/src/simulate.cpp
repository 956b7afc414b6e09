#include "cheng/simulate.hpp"

#include <cmath>
#include <random>

#include "cheng/inference.hpp"

namespace cheng {

namespace {

class BitSource {
 public:
  explicit BitSource(std::uint64_t seed) : engine_(seed) {}

  bool bernoulli(double p) {
    // 53-bit uniform in [0,1); pinned construction, see simulate.hpp.
    double u = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    return u < p;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace

Dataset sample(const ChengModel& model, std::size_t n, std::uint64_t seed) {
  if (n == 0) throw Error(ErrorCode::InvalidQuery, "sample size must be positive");

  std::vector<int> observed;
  for (int v = 0; v < model.variable_count(); ++v)
    if (model.is_observed(v)) observed.push_back(v);

  Dataset data;
  for (int v : observed) data.variables.push_back(model.variable(v).name);
  data.records.reserve(n);

  BitSource bits(seed);
  std::vector<int> values(model.variable_count(), 0);
  std::vector<int> qbit;
  for (std::size_t i = 0; i < n; ++i) {
    for (int v : model.topo_order()) {
      if (model.is_exogenous(v)) {
        values[v] = bits.bernoulli(*model.variable(v).base_rate);
        continue;
      }
      // One fresh bit per edge per record; bits for dormant edges are drawn
      // anyway so the stream layout is independent of sampled values.
      int fired = 0;
      const auto& incoming = model.edges_into(v);
      qbit.resize(incoming.size());
      for (std::size_t k = 0; k < incoming.size(); ++k)
        qbit[k] = bits.bernoulli(model.edges()[incoming[k]].q);
      for (std::size_t k = 0; k < incoming.size(); ++k) {
        int fe = incoming[k];
        if (model.edges()[fe].polarity != Polarity::Facilitating) continue;
        int term = qbit[k] & values[model.source_index(fe)];
        for (std::size_t j = 0; j < incoming.size(); ++j) {
          int pe = incoming[j];
          if (model.edges()[pe].polarity != Polarity::Preventive) continue;
          if (!model.scope_covers(pe, fe)) continue;
          term &= 1 - (qbit[j] & values[model.source_index(pe)]);
        }
        fired |= term;
      }
      values[v] = fired;
    }
    Dataset::Record record;
    record.bits.reserve(observed.size());
    for (int v : observed) record.bits.push_back(static_cast<std::uint8_t>(values[v]));
    data.records.push_back(std::move(record));
  }
  return data;
}

RecoveryReport recovery(const ChengModel& model, const std::string& cause,
                        const std::string& effect, PowerKind kind, std::size_t n,
                        const std::vector<std::uint64_t>& seeds) {
  RecoveryReport report;
  report.true_power = kind == PowerKind::Direct
                          ? direct_power(model, cause, effect)
                          : total_power(model, cause, effect).value;

  double error_sum = 0.0;
  std::size_t identified = 0;
  for (std::uint64_t seed : seeds) {
    Dataset data = sample(model, n, seed);
    PowerEstimate est = estimate_power(model, data, cause, effect, kind);
    if (est.value) {
      error_sum += std::abs(*est.value - report.true_power);
      ++identified;
    }
    report.estimates.push_back(std::move(est));
  }
  if (identified > 0) report.mean_abs_error = error_sum / static_cast<double>(identified);
  return report;
}

}  // namespace cheng
