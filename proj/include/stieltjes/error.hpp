#pragma once

#include <stdexcept>
#include <string>

namespace stieltjes {

// Computation failure carrying a stable machine-readable code
// (e.g. "SingularSystem", "ZeroDivisor") next to the human message.
class ComputationError : public std::runtime_error {
public:
    ComputationError(std::string code, const std::string& message)
        : std::runtime_error(message), code_(std::move(code)) {}

    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

[[noreturn]] inline void fail(const std::string& code, const std::string& message) {
    throw ComputationError(code, code + ": " + message);
}

} // namespace stieltjes
