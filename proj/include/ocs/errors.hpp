#pragma once

#include <stdexcept>
#include <string>

namespace ocs {

// Domain error carrying a short machine-readable code.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& message)
        : std::runtime_error(message), code_(std::move(code)) {}

    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

inline void require(bool cond, const char* code, const std::string& message)
{
    if (!cond)
        throw Error(code, message);
}

} // namespace ocs
