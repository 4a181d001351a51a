#pragma once

#include <cstddef>

#include "node_store.hpp"

namespace linkedq {

// Circular FIFO queue that never frees a dequeued node: dequeue only advances
// the front handle around the cycle, leaving the node in place for reuse. The
// price is paid by enqueue, which must check whether the cycle is full (the
// rear blank node's successor is the front) and grow it by one node when it
// is. Once the cycle is as large as the working set ever gets, enqueue stops
// allocating and dequeue is a single handle advance.
//
// capacity is the number of element-capable nodes, i.e. cycle length minus
// the blank node. It never decreases. Dequeued nodes keep their stale values
// until an enqueue overwrites them.
template <typename T>
class lazy_circular_queue {
public:
    explicit lazy_circular_queue(node_store<T>& store) : store_(&store) {
        rear_ = store_->allocate();
        store_->note_register_write();
        store_->write_next(rear_, rear_);
        front_ = rear_;
        store_->note_register_write();
    }

    lazy_circular_queue(const lazy_circular_queue&) = delete;
    lazy_circular_queue& operator=(const lazy_circular_queue&) = delete;

    lazy_circular_queue(lazy_circular_queue&& other) noexcept
        : store_(other.store_), front_(other.front_), rear_(other.rear_),
          capacity_(other.capacity_) {
        other.store_ = nullptr;
    }
    lazy_circular_queue& operator=(lazy_circular_queue&&) = delete;

    ~lazy_circular_queue() {
        if (!store_)
            return;
        node_handle h = store_->read_next(rear_);
        while (h != rear_) {
            node_handle next = store_->read_next(h);
            store_->free(h);
            h = next;
        }
        store_->free(rear_);
    }

    void enqueue(const T& item) {
        store_->write_data(rear_, item);
        store_->note_comparison();
        if (store_->read_next(rear_) == front_) {
            // Cycle is full: splice a fresh blank node between rear and front.
            node_handle p = store_->allocate();
            store_->write_next(p, front_);
            store_->write_next(rear_, p);
            rear_ = p;
            store_->note_register_write();
            ++capacity_;
        } else {
            rear_ = store_->read_next(rear_);
            store_->note_register_write();
        }
    }

    T dequeue() {
        if (empty())
            throw precondition_error("lazy_circular_queue::dequeue: queue is empty");
        T value = store_->take_data(front_);
        front_ = store_->read_next(front_);
        store_->note_register_write();
        return value;
    }

    const T& front() const {
        if (empty())
            throw precondition_error("lazy_circular_queue::front: queue is empty");
        return store_->read_data(front_);
    }

    // Caller-side guard; never counted.
    bool empty() const { return front_ == rear_; }

    // O(1) from the incrementally tracked count; a checked-mode store
    // cross-checks it against an actual cycle walk.
    std::size_t capacity() const {
        if (store_->mode() == store_mode::checked) {
            std::size_t cycle_len = 1;
            for (node_handle h = store_->read_next(rear_); h != rear_;
                 h = store_->read_next(h))
                ++cycle_len;
            if (cycle_len != capacity_ + 1)
                throw store_error(
                    "lazy_circular_queue::capacity: tracked capacity does not "
                    "match cycle length");
        }
        return capacity_;
    }

    node_handle front_node() const { return front_; }
    node_handle rear_node() const { return rear_; }

private:
    node_store<T>* store_;
    node_handle front_;
    node_handle rear_;
    std::size_t capacity_ = 0;
};

} // namespace linkedq
