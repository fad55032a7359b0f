// Error type shared by all modules. `code` is the stable machine-readable
// identifier surfaced in the CLI's error JSON; `witness` (optional) carries a
// serialized counterexample.
#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace shallowcode {

class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& message, std::string witness = {})
        : std::runtime_error(message), code_(std::move(code)), witness_(std::move(witness)) {}

    const std::string& code() const noexcept { return code_; }
    const std::string& witness() const noexcept { return witness_; }

private:
    std::string code_;
    std::string witness_;
};

[[noreturn]] inline void raise(const std::string& code, const std::string& message,
                               std::string witness = {}) {
    throw Error(code, message, std::move(witness));
}

}  // namespace shallowcode
