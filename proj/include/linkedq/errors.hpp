#pragma once

#include <stdexcept>
#include <string>

namespace linkedq {

// Misuse of a node handle: stale generation, double free, access out of
// range, or a read from a slot that was never written. Raised only when the
// owning store runs in checked mode.
class store_error : public std::logic_error {
public:
    explicit store_error(const std::string& what) : std::logic_error(what) {}
};

// An operation was called while its precondition does not hold, e.g. dequeue
// or front on an empty structure. Raised in every mode.
class precondition_error : public std::logic_error {
public:
    explicit precondition_error(const std::string& what) : std::logic_error(what) {}
};

} // namespace linkedq
