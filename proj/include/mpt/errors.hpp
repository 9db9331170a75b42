#pragma once

#include <stdexcept>
#include <string>

namespace mpt {

/// Raised by the Cholesky factorizations when a pivot is not positive.
class NotSpdError : public std::runtime_error {
public:
    NotSpdError(const std::string& what, std::size_t pivot)
        : std::runtime_error(what), pivot_(pivot) {}
    std::size_t pivot() const { return pivot_; }

private:
    std::size_t pivot_;
};

/// Raised when a dense oracle would exceed its size guard.
class SizeGuardError : public std::length_error {
public:
    using std::length_error::length_error;
};

}  // namespace mpt
