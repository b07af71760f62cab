#include "tpnewton/nodes.hpp"

namespace tpn {

const char* to_string(Ordering ordering) noexcept {
  switch (ordering) {
    case Ordering::StrictlyIncreasing: return "increasing";
    case Ordering::StrictlyDecreasing: return "decreasing";
    case Ordering::UnorderedDistinct: return "unordered";
  }
  return "unknown";
}

}  // namespace tpn
