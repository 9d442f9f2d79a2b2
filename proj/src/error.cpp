#include "asqp/error.hpp"

namespace asqp {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidMatrix: return "InvalidMatrix";
    case ErrorCode::InvalidInput: return "InvalidInput";
    case ErrorCode::NoActiveRows: return "NoActiveRows";
    case ErrorCode::NotPositiveDefinite: return "NotPositiveDefinite";
    case ErrorCode::InfeasibleStart: return "InfeasibleStart";
    case ErrorCode::MissingStart: return "MissingStart";
    case ErrorCode::RankDeficientWorkingSet: return "RankDeficientWorkingSet";
    case ErrorCode::EmptyNullSpace: return "EmptyNullSpace";
    case ErrorCode::OracleInconclusive: return "OracleInconclusive";
    case ErrorCode::InvalidGeneratorSpec: return "InvalidGeneratorSpec";
    case ErrorCode::MalformedProblemFile: return "MalformedProblemFile";
    case ErrorCode::MalformedCsv: return "MalformedCsv";
  }
  return "Unknown";
}

}  // namespace asqp
