#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace toriheights {

/// Domain-level failure with a stable machine-readable name.
///
/// The name (e.g. "NotPrimitive", "DivergentFactor") is part of the public
/// contract: the CLI prints it verbatim and exits 1, and tests match on it.
class DomainError : public std::runtime_error {
public:
    DomainError(std::string name, const std::string& detail)
        : std::runtime_error(name + ": " + detail), name_(std::move(name)) {}

    const std::string& name() const noexcept { return name_; }

private:
    std::string name_;
};

} // namespace toriheights
