#include "tpnewton/core.hpp"

namespace tpn {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidInput: return "InvalidInput";
    case ErrorKind::Parse: return "Parse";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::LengthMismatch: return "LengthMismatch";
    case ErrorKind::DuplicateNodes: return "DuplicateNodes";
    case ErrorKind::NotIncreasing: return "NotIncreasing";
    case ErrorKind::NotDecreasing: return "NotDecreasing";
    case ErrorKind::NonPositiveNodes: return "NonPositiveNodes";
    case ErrorKind::NotTriangular: return "NotTriangular";
    case ErrorKind::SingularPivot: return "SingularPivot";
    case ErrorKind::ZeroDenominator: return "ZeroDenominator";
    case ErrorKind::OrderingBroken: return "OrderingBroken";
    case ErrorKind::NotTotallyPositive: return "NotTotallyPositive";
    case ErrorKind::OrderTooLarge: return "OrderTooLarge";
    case ErrorKind::SubnormalPivot: return "SubnormalPivot";
    case ErrorKind::Overflow: return "Overflow";
    case ErrorKind::ModelOverflow: return "ModelOverflow";
    case ErrorKind::BoundBlowup: return "BoundBlowup";
    case ErrorKind::RationalBlowup: return "RationalBlowup";
    case ErrorKind::NoConvergence: return "NoConvergence";
  }
  return "Unknown";
}

bool is_numerical_contract(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::SubnormalPivot:
    case ErrorKind::Overflow:
    case ErrorKind::ModelOverflow:
    case ErrorKind::BoundBlowup:
    case ErrorKind::RationalBlowup:
    case ErrorKind::NoConvergence:
      return true;
    default:
      return false;
  }
}

}  // namespace tpn
