#pragma once

// Line-oriented model file format:
//   # comment
//   var NAME (observed|unobserved) [base=FLOAT]
//   edge SRC -> DST fac q=FLOAT
//   edge SRC -| DST prev q=FLOAT [scope=ALL | scope=SRC1>DST,SRC2>DST]

#include <string>

#include "cheng/model.hpp"

namespace cheng {

ModelSpec parse_model_text(const std::string& text);   // throws Error(ParseError)
ModelSpec load_model_spec(const std::string& path);    // throws Error(ParseError)
ChengModel load_model(const std::string& path);        // parse + build

std::string model_to_text(const ChengModel& model);
void save_model(const ChengModel& model, const std::string& path);

}  // namespace cheng
