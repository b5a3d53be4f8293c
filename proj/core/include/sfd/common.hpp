#pragma once

#include <stdexcept>
#include <string>

namespace sfd {

// Shrink-quality constant: the fraction of the Frobenius drop that the
// per-direction bound Delta is charged against.
inline constexpr double kAlpha = 6.0 / 41.0;

// Raised when an iterative routine fails to converge or a retry cap is
// exhausted. The CLI maps this to exit code 2.
class numerical_error : public std::runtime_error {
  public:
    explicit numerical_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace sfd
