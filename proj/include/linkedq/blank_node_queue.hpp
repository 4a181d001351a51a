#pragma once

#include "node_store.hpp"

namespace linkedq {

// Singly linked FIFO queue shaped as the half-open interval [front, blank):
// a blank node sits one past the rear and holds no element. Enqueue writes
// the item into the current blank node and appends a brand-new blank; dequeue
// advances the front handle and frees the old front node. Because the blank
// node exists for the queue's whole lifetime, the front handle always has a
// node to move into and dequeue needs no comparison at all — one handle
// advance and one free, on every length including one.
//
// The queue is empty exactly when front == blank. No link in this structure
// is ever set to a null-like mark: the fresh blank node's link stays
// unwritten until the next enqueue defines it.
template <typename T>
class blank_node_queue {
public:
    explicit blank_node_queue(node_store<T>& store) : store_(&store) {
        blank_ = store_->allocate();
        store_->note_register_write();
        front_ = blank_;
        store_->note_register_write();
    }

    blank_node_queue(const blank_node_queue&) = delete;
    blank_node_queue& operator=(const blank_node_queue&) = delete;

    blank_node_queue(blank_node_queue&& other) noexcept
        : store_(other.store_), front_(other.front_), blank_(other.blank_) {
        other.store_ = nullptr;
    }
    blank_node_queue& operator=(blank_node_queue&&) = delete;

    ~blank_node_queue() {
        if (!store_)
            return;
        node_handle h = front_;
        while (h != blank_) {
            node_handle next = store_->read_next(h);
            store_->free(h);
            h = next;
        }
        store_->free(blank_);
    }

    void enqueue(const T& item) {
        store_->write_data(blank_, item);
        node_handle p = store_->allocate();
        store_->write_next(blank_, p);
        blank_ = p;
        store_->note_register_write();
    }

    T dequeue() {
        if (empty())
            throw precondition_error("blank_node_queue::dequeue: queue is empty");
        node_handle first = front_;
        front_ = store_->read_next(first);
        store_->note_register_write();
        T value = store_->take_data(first);
        store_->free(first);
        return value;
    }

    const T& front() const {
        if (empty())
            throw precondition_error("blank_node_queue::front: queue is empty");
        return store_->read_data(front_);
    }

    // Caller-side guard; never counted.
    bool empty() const { return front_ == blank_; }

    node_handle front_node() const { return front_; }
    node_handle blank_node() const { return blank_; }

private:
    node_store<T>* store_;
    node_handle front_;
    node_handle blank_;
};

} // namespace linkedq
