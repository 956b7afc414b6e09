#include "cheng/errors.hpp"

namespace cheng {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::CycleDetected: return "CycleDetected";
    case ErrorCode::NoFacilitatingParent: return "NoFacilitatingParent";
    case ErrorCode::DanglingScope: return "DanglingScope";
    case ErrorCode::BadProbability: return "BadProbability";
    case ErrorCode::DuplicateName: return "DuplicateName";
    case ErrorCode::InvalidName: return "InvalidName";
    case ErrorCode::UnknownVariable: return "UnknownVariable";
    case ErrorCode::ExogenousVariable: return "ExogenousVariable";
    case ErrorCode::MissingLiteral: return "MissingLiteral";
    case ErrorCode::NoDirectEdge: return "NoDirectEdge";
    case ErrorCode::NoPath: return "NoPath";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::Mismatch: return "Mismatch";
    case ErrorCode::DataModelMismatch: return "DataModelMismatch";
    case ErrorCode::InvalidQuery: return "InvalidQuery";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "UnknownError";
}

}  // namespace cheng
