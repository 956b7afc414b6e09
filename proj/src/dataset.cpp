#include "cheng/dataset.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace cheng {

int Dataset::column(const std::string& name) const {
  auto it = std::find(variables.begin(), variables.end(), name);
  if (it == variables.end())
    throw Error(ErrorCode::UnknownVariable, "dataset has no column '" + name + "'");
  return static_cast<int>(it - variables.begin());
}

double Dataset::total_weight() const {
  double total = 0.0;
  for (const auto& r : records) total += r.weight;
  return total;
}

double Dataset::weight_where(const PartialAssignment& where) const {
  std::vector<std::pair<int, int>> checks;
  for (const auto& [name, value] : where) checks.emplace_back(column(name), value ? 1 : 0);
  double total = 0.0;
  for (const auto& r : records) {
    bool match = true;
    for (auto [idx, val] : checks)
      if (r.bits[idx] != val) {
        match = false;
        break;
      }
    if (match) total += r.weight;
  }
  return total;
}

std::optional<double> Dataset::frequency(const PartialAssignment& event,
                                         const PartialAssignment& given) const {
  double denom = given.empty() ? total_weight() : weight_where(given);
  if (denom <= 0.0) return std::nullopt;
  PartialAssignment both = event;
  both.insert(given.begin(), given.end());
  return weight_where(both) / denom;
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream is(line);
  while (std::getline(is, cell, ',')) {
    // trim surrounding blanks
    auto b = cell.find_first_not_of(" \t\r");
    auto e = cell.find_last_not_of(" \t\r");
    cells.push_back(b == std::string::npos ? "" : cell.substr(b, e - b + 1));
  }
  if (!line.empty() && line.back() == ',') cells.push_back("");
  return cells;
}

}  // namespace

Dataset parse_dataset_csv(std::istream& in) {
  Dataset data;
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorCode::ParseError, "empty dataset");
  auto header = split_csv_line(line);
  bool has_weight = !header.empty() && header.back() == "weight";
  if (has_weight) header.pop_back();
  if (header.empty()) throw Error(ErrorCode::ParseError, "dataset header has no variables");
  data.variables = header;

  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    auto cells = split_csv_line(line);
    std::size_t expected = header.size() + (has_weight ? 1 : 0);
    if (cells.size() != expected) {
      std::ostringstream os;
      os << "line " << line_no << ": expected " << expected << " cells, got " << cells.size();
      throw Error(ErrorCode::ParseError, os.str());
    }
    Dataset::Record record;
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (cells[i] != "0" && cells[i] != "1") {
        std::ostringstream os;
        os << "line " << line_no << ": cell '" << cells[i] << "' is not 0/1";
        throw Error(ErrorCode::ParseError, os.str());
      }
      record.bits.push_back(cells[i] == "1" ? 1 : 0);
    }
    if (has_weight) {
      try {
        record.weight = std::stod(cells.back());
      } catch (const std::logic_error&) {
        std::ostringstream os;
        os << "line " << line_no << ": bad weight '" << cells.back() << "'";
        throw Error(ErrorCode::ParseError, os.str());
      }
      if (record.weight < 0.0) {
        std::ostringstream os;
        os << "line " << line_no << ": negative weight";
        throw Error(ErrorCode::ParseError, os.str());
      }
    }
    data.records.push_back(std::move(record));
  }
  if (data.total_weight() <= 0.0) throw Error(ErrorCode::ParseError, "dataset has no weight");
  return data;
}

Dataset load_dataset_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open dataset '" + path + "'");
  return parse_dataset_csv(in);
}

void write_dataset_csv(const Dataset& data, std::ostream& os) {
  bool weighted = std::any_of(data.records.begin(), data.records.end(),
                              [](const auto& r) { return r.weight != 1.0; });
  for (std::size_t i = 0; i < data.variables.size(); ++i) {
    if (i) os << ',';
    os << data.variables[i];
  }
  if (weighted) os << ",weight";
  os << '\n';
  os.precision(17);
  for (const auto& r : data.records) {
    for (std::size_t i = 0; i < r.bits.size(); ++i) {
      if (i) os << ',';
      os << static_cast<int>(r.bits[i]);
    }
    if (weighted) os << ',' << r.weight;
    os << '\n';
  }
}

void save_dataset_csv(const Dataset& data, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::ParseError, "cannot write dataset '" + path + "'");
  write_dataset_csv(data, out);
}

Dataset dataset_from_joint(const JointTable& table, const std::vector<std::string>& columns) {
  Dataset data;
  data.variables = columns;
  std::vector<int> indices;
  for (const auto& name : columns) {
    auto it = std::find(table.variables.begin(), table.variables.end(), name);
    if (it == table.variables.end())
      throw Error(ErrorCode::UnknownVariable, "joint table has no variable '" + name + "'");
    indices.push_back(static_cast<int>(it - table.variables.begin()));
  }

  const std::size_t cells = std::size_t{1} << columns.size();
  std::vector<double> weight(cells, 0.0);
  for (std::size_t row = 0; row < table.rows(); ++row) {
    std::size_t cell = 0;
    for (int idx : indices) cell = (cell << 1) | static_cast<unsigned>(table.value_at(row, idx));
    weight[cell] += table.probs[row];
  }
  for (std::size_t cell = 0; cell < cells; ++cell) {
    if (weight[cell] <= 0.0) continue;
    Dataset::Record record;
    for (std::size_t i = 0; i < columns.size(); ++i)
      record.bits.push_back(static_cast<std::uint8_t>((cell >> (columns.size() - 1 - i)) & 1u));
    record.weight = weight[cell];
    data.records.push_back(std::move(record));
  }
  return data;
}

Dataset exact_dataset(const ChengModel& model, const InferenceOptions& options) {
  std::vector<std::string> observed;
  for (const auto& v : model.variables())
    if (v.observed) observed.push_back(v.name);
  return dataset_from_joint(joint(model, options), observed);
}

}  // namespace cheng
