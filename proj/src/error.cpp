#include "ere/error.hpp"

namespace ere {

std::string_view error_kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Config: return "config";
    case ErrorKind::Dimension: return "dimension";
    case ErrorKind::Capacity: return "capacity";
    case ErrorKind::Convergence: return "convergence";
    case ErrorKind::Domain: return "domain";
    case ErrorKind::Usage: return "usage";
    case ErrorKind::Unsupported: return "unsupported";
    case ErrorKind::InvalidState: return "invalid-state";
    case ErrorKind::NoSignal: return "no-signal";
    case ErrorKind::Indeterminate: return "indeterminate";
    case ErrorKind::Io: return "io";
  }
  return "unknown";
}

}  // namespace ere
