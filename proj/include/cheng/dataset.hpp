#pragma once

// Weighted frequency records over observed binary variables.  Weights are
// counts or person-time; every statistic below is weight-proportional, so
// scaling all weights by a positive constant changes nothing.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "cheng/inference.hpp"
#include "cheng/model.hpp"

namespace cheng {

struct Dataset {
  std::vector<std::string> variables;

  struct Record {
    std::vector<std::uint8_t> bits;
    double weight = 1.0;
  };
  std::vector<Record> records;

  int column(const std::string& name) const;  // throws UnknownVariable
  double total_weight() const;

  // Total weight of records matching the partial assignment.
  double weight_where(const PartialAssignment& where) const;

  // Weighted conditional frequency P(event | given); nullopt when the
  // conditioning stratum carries no weight.
  std::optional<double> frequency(const PartialAssignment& event,
                                  const PartialAssignment& given) const;
};

// CSV with a header of variable names and an optional final "weight" column;
// data cells are 0/1.
Dataset parse_dataset_csv(std::istream& in);
Dataset load_dataset_csv(const std::string& path);
void write_dataset_csv(const Dataset& data, std::ostream& os);
void save_dataset_csv(const Dataset& data, const std::string& path);

// Exact frequencies: one weighted record per assignment of `columns`, with
// the remaining table variables marginalized out.
Dataset dataset_from_joint(const JointTable& table, const std::vector<std::string>& columns);

// Convenience: exact frequencies over a model's observed variables.
Dataset exact_dataset(const ChengModel& model, const InferenceOptions& options = {});

}  // namespace cheng
