#include <sagnac/error.hpp>

namespace sagnac
{

std::string_view to_string(ErrorKind kind)
{
    switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::ZeroMomentum: return "ZeroMomentum";
    case ErrorKind::ZeroPhase: return "ZeroPhase";
    case ErrorKind::OutOfRegime: return "OutOfRegime";
    case ErrorKind::InvalidGrid: return "InvalidGrid";
    case ErrorKind::OutOfDomain: return "OutOfDomain";
    case ErrorKind::ZeroPower: return "ZeroPower";
    case ErrorKind::GridMismatch: return "GridMismatch";
    case ErrorKind::InvalidFraction: return "InvalidFraction";
    case ErrorKind::ConfigError: return "ConfigError";
    case ErrorKind::IoError: return "IoError";
    }
    return "Unknown";
}

} // namespace sagnac
