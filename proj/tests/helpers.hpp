#pragma once

#include "rampkit/error.hpp"

#include <optional>

// Kind of the rampkit::Error thrown by fn, or nullopt if it returns normally.
template <typename Fn>
std::optional<rampkit::ErrorKind> thrown_kind(Fn&& fn) {
    try {
        fn();
    } catch (const rampkit::Error& e) {
        return e.kind();
    }
    return std::nullopt;
}
