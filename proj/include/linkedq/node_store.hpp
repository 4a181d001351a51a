#pragma once

#include <cstddef>
#include <cstdint>
#include <deque>
#include <new>
#include <utility>

#include "errors.hpp"

namespace linkedq {

enum class store_mode { checked, fast };

// Event counters for everything structurally significant that happens inside
// a node_store. Reads and local temporaries are not events; the counters are
// exactly what a per-operation cost argument has to account for.
struct metrics {
    std::uint64_t allocations = 0;
    std::uint64_t deallocations = 0;
    std::uint64_t data_writes = 0;
    std::uint64_t link_writes = 0;
    std::uint64_t register_writes = 0;
    std::uint64_t comparisons = 0;

    friend bool operator==(const metrics&, const metrics&) = default;

    // Delta between two snapshots of the same store (rhs taken earlier).
    metrics operator-(const metrics& rhs) const {
        return metrics{allocations - rhs.allocations,
                       deallocations - rhs.deallocations,
                       data_writes - rhs.data_writes,
                       link_writes - rhs.link_writes,
                       register_writes - rhs.register_writes,
                       comparisons - rhs.comparisons};
    }
};

// Opaque identity of one node inside a node_store. A default-constructed
// handle is a reserved value that no allocation ever returns; the store hands
// out generation-tagged handles so a handle to a freed node never compares
// equal to one returned by a later allocation.
class node_handle {
public:
    constexpr node_handle() = default;

    friend constexpr bool operator==(node_handle, node_handle) = default;

private:
    template <typename T>
    friend class node_store;

    constexpr node_handle(std::uint32_t index, std::uint32_t generation)
        : index_(index), generation_(generation) {}

    std::uint32_t index_ = UINT32_MAX;
    std::uint32_t generation_ = UINT32_MAX;
};

// Instrumented arena that owns every list node. Each node has a data slot and
// a next-link; both are indeterminate after allocation and must be written
// before they are read. In checked mode every access is validated against the
// handle's generation, so use-after-free and read-before-write are reported
// as store_error instead of undefined behavior; fast mode skips validation
// but produces identical metrics on valid call sequences.
//
// T never has to be default-constructible: the store constructs a value only
// inside write_data.
template <typename T>
class node_store {
public:
    explicit node_store(store_mode mode = store_mode::checked) : mode_(mode) {}

    node_store(const node_store&) = delete;
    node_store& operator=(const node_store&) = delete;

    ~node_store() {
        for (slot& s : slots_)
            if (s.live && s.data_written)
                data_ptr(s)->~T();
    }

    node_handle allocate() {
        std::uint32_t index;
        if (free_head_ != k_npos) {
            index = free_head_;
            free_head_ = slots_[index].next_free;
        } else {
            index = static_cast<std::uint32_t>(slots_.size());
            slots_.emplace_back();
        }
        slot& s = slots_[index];
        s.live = true;
        s.data_written = false;
        s.next_written = false;
        ++live_;
        if (live_ > peak_live_)
            peak_live_ = live_;
        ++metrics_.allocations;
        return node_handle{index, s.generation};
    }

    node_handle allocate(const T& init_data) {
        node_handle h = allocate();
        write_data(h, init_data);
        return h;
    }

    void free(node_handle h) {
        slot& s = slot_for(h, "free");
        if (s.data_written)
            data_ptr(s)->~T();
        s.live = false;
        ++s.generation; // stale handles stop matching from here on
        s.next_free = free_head_;
        free_head_ = h.index_;
        --live_;
        ++metrics_.deallocations;
    }

    node_handle read_next(node_handle h) const {
        const slot& s = slot_for(h, "read_next");
        if (mode_ == store_mode::checked && !s.next_written)
            throw store_error("read_next: link slot was never written");
        return s.next;
    }

    void write_next(node_handle h, node_handle next) {
        slot& s = slot_for(h, "write_next");
        s.next = next;
        s.next_written = true;
        ++metrics_.link_writes;
    }

    const T& read_data(node_handle h) const {
        const slot& s = slot_for(h, "read_data");
        if (mode_ == store_mode::checked && !s.data_written)
            throw store_error("read_data: data slot was never written");
        return *data_ptr(s);
    }

    // Move-out read used by dequeue paths; uncounted like any other read.
    // The slot stays constructed (and marked written) until freed or
    // overwritten.
    T take_data(node_handle h) {
        slot& s = slot_for(h, "take_data");
        if (mode_ == store_mode::checked && !s.data_written)
            throw store_error("take_data: data slot was never written");
        return std::move(*data_ptr(s));
    }

    void write_data(node_handle h, const T& value) {
        slot& s = slot_for(h, "write_data");
        if (s.data_written)
            *data_ptr(s) = value;
        else {
            ::new (static_cast<void*>(s.data)) T(value);
            s.data_written = true;
        }
        ++metrics_.data_writes;
    }

    // Structure-level bookkeeping hooks: a write to a front/rear/header
    // handle and a node-identity comparison are events of the structure, not
    // of any single node, so the structures report them explicitly.
    void note_register_write() { ++metrics_.register_writes; }
    void note_comparison() { ++metrics_.comparisons; }

    metrics snapshot() const { return metrics_; }

    // Zeroes the counters without touching nodes. peak_live restarts from the
    // current live count so measurement windows report their own peak.
    void reset_metrics() {
        metrics_ = metrics{};
        peak_live_ = live_;
    }

    std::size_t live_count() const { return live_; }
    std::size_t peak_live() const { return peak_live_; }
    store_mode mode() const { return mode_; }

private:
    static constexpr std::uint32_t k_npos = UINT32_MAX;

    struct slot {
        std::uint32_t generation = 0;
        std::uint32_t next_free = k_npos;
        node_handle next{};
        bool live = false;
        bool next_written = false;
        bool data_written = false;
        alignas(T) unsigned char data[sizeof(T)];
    };

    static T* data_ptr(slot& s) {
        return std::launder(reinterpret_cast<T*>(s.data));
    }
    static const T* data_ptr(const slot& s) {
        return std::launder(reinterpret_cast<const T*>(s.data));
    }

    slot& slot_for(node_handle h, const char* op) {
        return const_cast<slot&>(std::as_const(*this).slot_for(h, op));
    }

    const slot& slot_for(node_handle h, const char* op) const {
        if (mode_ == store_mode::checked) {
            if (h.index_ >= slots_.size())
                throw store_error(std::string(op) + ": handle does not name a node of this store");
            const slot& s = slots_[h.index_];
            if (!s.live || s.generation != h.generation_)
                throw store_error(std::string(op) + ": stale handle, node was freed");
            return s;
        }
        return slots_[h.index_];
    }

    // deque keeps slots pinned in place; raw data bytes must never relocate.
    std::deque<slot> slots_;
    std::uint32_t free_head_ = k_npos;
    std::size_t live_ = 0;
    std::size_t peak_live_ = 0;
    metrics metrics_{};
    store_mode mode_;
};

} // namespace linkedq
