#pragma once

#include <cstddef>
#include <deque>
#include <utility>

#include "errors.hpp"

namespace linkedq {

// Ground-truth model for differential testing: a plain growable double-ended
// sequence with the same operation names and error contract as the linked
// structures, but no nodes, handles, or counters anywhere near it.
template <typename T>
class oracle_deque {
public:
    void push_back(const T& value) { items_.push_back(value); }
    void push_front(const T& value) { items_.push_front(value); }

    T pop_front() {
        if (items_.empty())
            throw precondition_error("oracle_deque::pop_front: deque is empty");
        T value = std::move(items_.front());
        items_.pop_front();
        return value;
    }

    const T& front() const {
        if (items_.empty())
            throw precondition_error("oracle_deque::front: deque is empty");
        return items_.front();
    }

    bool empty() const { return items_.empty(); }
    std::size_t size() const { return items_.size(); }

private:
    std::deque<T> items_;
};

} // namespace linkedq
