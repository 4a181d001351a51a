#pragma once

#include "node_store.hpp"

namespace linkedq {

// Singly linked FIFO queue with a header (dummy) node ahead of the first
// element. The header removes the empty-case branch from enqueue, but not
// from dequeue: removing the rear node invalidates the rear handle, so every
// dequeue compares the departing node against the rear and resets the rear to
// the header when they match. This is the baseline the blank-node variants
// are measured against.
//
// Link slots hold a module-private "no successor" mark past the last node;
// it is written on every enqueue like any other link.
template <typename T>
class header_queue {
public:
    explicit header_queue(node_store<T>& store) : store_(&store) {
        header_ = store_->allocate();
        store_->note_register_write();
        rear_ = header_;
        store_->note_register_write();
        store_->write_next(header_, no_successor());
    }

    header_queue(const header_queue&) = delete;
    header_queue& operator=(const header_queue&) = delete;

    header_queue(header_queue&& other) noexcept
        : store_(other.store_), header_(other.header_), rear_(other.rear_) {
        other.store_ = nullptr;
    }
    header_queue& operator=(header_queue&&) = delete;

    ~header_queue() {
        if (!store_)
            return;
        node_handle h = header_;
        while (h != no_successor()) {
            node_handle next = store_->read_next(h);
            store_->free(h);
            h = next;
        }
    }

    void enqueue(const T& item) {
        node_handle p = store_->allocate();
        store_->write_data(p, item);
        store_->write_next(p, no_successor());
        store_->write_next(rear_, p);
        rear_ = p;
        store_->note_register_write();
    }

    T dequeue() {
        if (empty())
            throw precondition_error("header_queue::dequeue: queue is empty");
        node_handle first = store_->read_next(header_);
        store_->write_next(header_, store_->read_next(first));
        store_->note_comparison();
        if (first == rear_) {
            rear_ = header_;
            store_->note_register_write();
        }
        T value = store_->take_data(first);
        store_->free(first);
        return value;
    }

    const T& front() const {
        if (empty())
            throw precondition_error("header_queue::front: queue is empty");
        return store_->read_data(store_->read_next(header_));
    }

    // Caller-side guard; never counted.
    bool empty() const { return rear_ == header_; }

    node_handle header() const { return header_; }
    node_handle rear() const { return rear_; }

private:
    static constexpr node_handle no_successor() { return node_handle{}; }

    node_store<T>* store_;
    node_handle header_;
    node_handle rear_;
};

} // namespace linkedq
