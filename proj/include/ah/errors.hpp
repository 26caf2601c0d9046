#pragma once

#include <stdexcept>
#include <string>

namespace ah {

// Thrown by the Riccati solver when |psi| crosses the divergence ceiling or
// the flow exits the admissible half-plane for a real frequency, i.e. the
// requested moment does not exist.
class blow_up_error : public std::runtime_error {
public:
    explicit blow_up_error(const std::string& what) : std::runtime_error(what) {}
};

// Requested operation is outside what the library supports (e.g. simulating
// under a tempered jump measure).
class not_supported_error : public std::runtime_error {
public:
    explicit not_supported_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace ah
