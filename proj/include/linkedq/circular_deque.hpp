#pragma once

#include "node_store.hpp"

namespace linkedq {

// Output-restricted deque on a circularly linked list, steered by a single
// handle to the blank node that closes the cycle. The blank node trails the
// rear when the structure is driven as a queue (push_back/pop_front) and
// leads the front when driven as a stack (push_front/pop_front); one type
// serves both roles. An empty deque is the blank node linked to itself, so no
// operation needs an empty-case branch, and the node removed by pop_front is
// always the blank node's successor — never the blank node itself.
//
// pop_back is not offered: a singly linked cycle cannot remove at the rear in
// O(1).
template <typename T>
class circular_deque {
public:
    explicit circular_deque(node_store<T>& store) : store_(&store) {
        blank_ = store_->allocate();
        store_->note_register_write();
        store_->write_next(blank_, blank_);
    }

    circular_deque(const circular_deque&) = delete;
    circular_deque& operator=(const circular_deque&) = delete;

    circular_deque(circular_deque&& other) noexcept
        : store_(other.store_), blank_(other.blank_) {
        other.store_ = nullptr;
    }
    circular_deque& operator=(circular_deque&&) = delete;

    ~circular_deque() {
        if (!store_)
            return;
        node_handle h = store_->read_next(blank_);
        while (h != blank_) {
            node_handle next = store_->read_next(h);
            store_->free(h);
            h = next;
        }
        store_->free(blank_);
    }

    void push_back(const T& item) {
        store_->write_data(blank_, item);
        node_handle p = store_->allocate();
        store_->write_next(p, store_->read_next(blank_));
        store_->write_next(blank_, p);
        blank_ = p;
        store_->note_register_write();
    }

    void push_front(const T& item) {
        node_handle p = store_->allocate();
        store_->write_data(p, item);
        store_->write_next(p, store_->read_next(blank_));
        store_->write_next(blank_, p);
    }

    T pop_front() {
        if (empty())
            throw precondition_error("circular_deque::pop_front: deque is empty");
        node_handle first = store_->read_next(blank_);
        store_->write_next(blank_, store_->read_next(first));
        T value = store_->take_data(first);
        store_->free(first);
        return value;
    }

    const T& front() const {
        if (empty())
            throw precondition_error("circular_deque::front: deque is empty");
        return store_->read_data(store_->read_next(blank_));
    }

    // Caller-side guard; never counted.
    bool empty() const { return store_->read_next(blank_) == blank_; }

    node_handle blank_node() const { return blank_; }

private:
    node_store<T>* store_;
    node_handle blank_;
};

} // namespace linkedq
