#ifndef SAGNAC_ERROR_HPP
#define SAGNAC_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace sagnac
{

enum class ErrorKind
{
    InvalidArgument,
    ZeroMomentum,
    ZeroPhase,
    OutOfRegime,
    InvalidGrid,
    OutOfDomain,
    ZeroPower,
    GridMismatch,
    InvalidFraction,
    ConfigError,
    IoError,
};

std::string_view to_string(ErrorKind kind);

// Every failure raised by the library carries a machine-readable category.
class Error : public std::runtime_error
{
public:
    Error(ErrorKind kind, const std::string &message)
        : std::runtime_error(message), kind_(kind)
    {
    }

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

} // namespace sagnac

#endif
