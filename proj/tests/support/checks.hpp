#pragma once

#include <functional>
#include <string>

#include <toriheights/errors.hpp>

namespace toriheights::testing {

// Runs f and reports the DomainError name it throws, or "" when it returns.
inline std::string error_name(const std::function<void()>& f) {
    try {
        f();
    } catch (const DomainError& e) {
        return e.name();
    }
    return "";
}

}  // namespace toriheights::testing
