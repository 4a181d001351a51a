#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "blank_node_queue.hpp"
#include "circular_deque.hpp"
#include "header_queue.hpp"
#include "lazy_circular_queue.hpp"
#include "node_store.hpp"
#include "oracle_deque.hpp"
#include "trace.hpp"

namespace linkedq {

enum class variant_id { header, blank, circular, lazy, oracle };

inline const char* to_string(variant_id v) {
    switch (v) {
    case variant_id::header: return "header";
    case variant_id::blank: return "blank";
    case variant_id::circular: return "circular";
    case variant_id::lazy: return "lazy";
    case variant_id::oracle: return "oracle";
    }
    return "?";
}

inline std::optional<variant_id> variant_from_string(std::string_view name) {
    if (name == "header") return variant_id::header;
    if (name == "blank") return variant_id::blank;
    if (name == "circular") return variant_id::circular;
    if (name == "lazy") return variant_id::lazy;
    if (name == "oracle") return variant_id::oracle;
    return std::nullopt;
}

// Only the circular deque (and the oracle) accepts front insertion.
inline bool supports_push_front(variant_id v) {
    return v == variant_id::circular || v == variant_id::oracle;
}

inline bool well_formed_for(variant_id v, const op_trace& trace) {
    return supports_push_front(v) || !trace_has_push_front(trace);
}

// A rejected precondition, recorded as an observation. Two errors compare
// equal regardless of message: agreement means both sides rejected the op.
struct op_error {
    std::string what;

    friend bool operator==(const op_error&, const op_error&) { return true; }
};

using observation = std::variant<trace_value, bool, op_error>;

inline std::string to_string(const observation& obs) {
    if (const auto* v = std::get_if<trace_value>(&obs))
        return std::to_string(*v);
    if (const auto* b = std::get_if<bool>(&obs))
        return *b ? "true" : "false";
    return "error(" + std::get<op_error>(obs).what + ")";
}

// Everything observable about one trace replay: the returns of each
// value-producing op, plus counters and live-node counts both right before
// and right after the structure is torn down.
struct trace_outcome {
    std::vector<observation> observations;
    metrics before_destroy;
    metrics after_destroy;
    std::size_t live_before_destroy = 0;
    std::size_t live_after_destroy = 0;
};

namespace detail {

// Uniform face over the five runnable structures. `make` builds one on the
// given store (the oracle ignores it), the rest forward to the structure's
// own operation names.
template <typename S>
struct runner;

template <typename T>
struct runner<header_queue<T>> {
    static header_queue<T> make(node_store<T>& store) { return header_queue<T>(store); }
    static void push_back(header_queue<T>& s, const T& v) { s.enqueue(v); }
    static void push_front(header_queue<T>&, const T&) {
        throw std::invalid_argument("header_queue does not support push_front");
    }
    static T pop_front(header_queue<T>& s) { return s.dequeue(); }
    static const T& front(const header_queue<T>& s) { return s.front(); }
    static bool empty(const header_queue<T>& s) { return s.empty(); }
};

template <typename T>
struct runner<blank_node_queue<T>> {
    static blank_node_queue<T> make(node_store<T>& store) { return blank_node_queue<T>(store); }
    static void push_back(blank_node_queue<T>& s, const T& v) { s.enqueue(v); }
    static void push_front(blank_node_queue<T>&, const T&) {
        throw std::invalid_argument("blank_node_queue does not support push_front");
    }
    static T pop_front(blank_node_queue<T>& s) { return s.dequeue(); }
    static const T& front(const blank_node_queue<T>& s) { return s.front(); }
    static bool empty(const blank_node_queue<T>& s) { return s.empty(); }
};

template <typename T>
struct runner<circular_deque<T>> {
    static circular_deque<T> make(node_store<T>& store) { return circular_deque<T>(store); }
    static void push_back(circular_deque<T>& s, const T& v) { s.push_back(v); }
    static void push_front(circular_deque<T>& s, const T& v) { s.push_front(v); }
    static T pop_front(circular_deque<T>& s) { return s.pop_front(); }
    static const T& front(const circular_deque<T>& s) { return s.front(); }
    static bool empty(const circular_deque<T>& s) { return s.empty(); }
};

template <typename T>
struct runner<lazy_circular_queue<T>> {
    static lazy_circular_queue<T> make(node_store<T>& store) { return lazy_circular_queue<T>(store); }
    static void push_back(lazy_circular_queue<T>& s, const T& v) { s.enqueue(v); }
    static void push_front(lazy_circular_queue<T>&, const T&) {
        throw std::invalid_argument("lazy_circular_queue does not support push_front");
    }
    static T pop_front(lazy_circular_queue<T>& s) { return s.dequeue(); }
    static const T& front(const lazy_circular_queue<T>& s) { return s.front(); }
    static bool empty(const lazy_circular_queue<T>& s) { return s.empty(); }
};

template <typename T>
struct runner<oracle_deque<T>> {
    static oracle_deque<T> make(node_store<T>&) { return oracle_deque<T>(); }
    static void push_back(oracle_deque<T>& s, const T& v) { s.push_back(v); }
    static void push_front(oracle_deque<T>& s, const T& v) { s.push_front(v); }
    static T pop_front(oracle_deque<T>& s) { return s.pop_front(); }
    static const T& front(const oracle_deque<T>& s) { return s.front(); }
    static bool empty(const oracle_deque<T>& s) { return s.empty(); }
};

// Pushes return nothing; pops, front and is_empty produce one observation.
// Precondition violations become op_error observations and leave the
// structure untouched.
template <typename S>
std::optional<observation> apply_op(S& s, const op& o) {
    switch (o.kind) {
    case op_kind::push_back:
        runner<S>::push_back(s, o.value);
        return std::nullopt;
    case op_kind::push_front:
        runner<S>::push_front(s, o.value);
        return std::nullopt;
    case op_kind::pop_front:
        try {
            return observation(runner<S>::pop_front(s));
        } catch (const precondition_error& e) {
            return observation(op_error{e.what()});
        }
    case op_kind::front:
        try {
            return observation(runner<S>::front(s));
        } catch (const precondition_error& e) {
            return observation(op_error{e.what()});
        }
    case op_kind::is_empty:
        return observation(runner<S>::empty(s));
    }
    throw std::logic_error("apply_op: unreachable");
}

template <typename S>
trace_outcome run_trace_on(node_store<trace_value>& store, const op_trace& trace) {
    trace_outcome out;
    {
        S s = runner<S>::make(store);
        for (const op& o : trace.ops)
            if (auto obs = apply_op(s, o))
                out.observations.push_back(*obs);
        out.before_destroy = store.snapshot();
        out.live_before_destroy = store.live_count();
    }
    out.after_destroy = store.snapshot();
    out.live_after_destroy = store.live_count();
    return out;
}

} // namespace detail

// Structural self-checks, used after every op by diff_check in checked mode.
// Each returns an empty string when the invariant holds, else a description
// of the violation. expected_len is the model's element count; the store must
// be dedicated to the one structure being checked.

template <typename T>
std::string check_invariants(const header_queue<T>& q, const node_store<T>& store,
                             std::size_t expected_len) {
    if ((q.rear() == q.header()) != (expected_len == 0))
        return "header_queue: emptiness representation (rear == header) is wrong";
    node_handle h = q.header();
    for (std::size_t i = 0; i < expected_len; ++i)
        h = store.read_next(h);
    if (h != q.rear())
        return "header_queue: walking len links from the header misses the rear";
    if (store.live_count() != expected_len + 1)
        return "header_queue: live nodes != len + 1";
    return {};
}

template <typename T>
std::string check_invariants(const blank_node_queue<T>& q, const node_store<T>& store,
                             std::size_t expected_len) {
    if ((q.front_node() == q.blank_node()) != (expected_len == 0))
        return "blank_node_queue: emptiness representation (front == blank) is wrong";
    node_handle h = q.front_node();
    for (std::size_t i = 0; i < expected_len; ++i)
        h = store.read_next(h);
    if (h != q.blank_node())
        return "blank_node_queue: walking len links from the front misses the blank node";
    if (store.live_count() != expected_len + 1)
        return "blank_node_queue: live nodes != len + 1";
    return {};
}

template <typename T>
std::string check_invariants(const circular_deque<T>& d, const node_store<T>& store,
                             std::size_t expected_len) {
    if ((store.read_next(d.blank_node()) == d.blank_node()) != (expected_len == 0))
        return "circular_deque: emptiness representation (self-loop) is wrong";
    node_handle h = d.blank_node();
    for (std::size_t i = 0; i < expected_len + 1; ++i)
        h = store.read_next(h);
    if (h != d.blank_node())
        return "circular_deque: cycle length != len + 1";
    if (store.live_count() != expected_len + 1)
        return "circular_deque: live nodes != len + 1";
    return {};
}

template <typename T>
std::string check_invariants(const lazy_circular_queue<T>& q, const node_store<T>& store,
                             std::size_t expected_len) {
    if ((q.front_node() == q.rear_node()) != (expected_len == 0))
        return "lazy_circular_queue: emptiness representation (front == rear) is wrong";
    const std::size_t capacity = q.capacity();
    if (expected_len > capacity)
        return "lazy_circular_queue: len exceeds capacity";
    bool front_seen = false;
    node_handle h = q.rear_node();
    for (std::size_t i = 0; i < capacity + 1; ++i) {
        h = store.read_next(h);
        if (h == q.front_node())
            front_seen = true;
    }
    if (h != q.rear_node())
        return "lazy_circular_queue: cycle length != capacity + 1";
    if (!front_seen)
        return "lazy_circular_queue: front handle is not on the cycle";
    if (store.live_count() != capacity + 1)
        return "lazy_circular_queue: live nodes != capacity + 1";
    return {};
}

// Replays the trace against a freshly built structure of the given variant,
// recording every observation. The structure is destroyed at the end;
// counters are snapshotted both before and after so leak balance is visible.
inline trace_outcome run_trace(variant_id v, node_store<trace_value>& store,
                               const op_trace& trace) {
    if (!well_formed_for(v, trace))
        throw std::invalid_argument(std::string("run_trace: trace contains push_front "
                                                "but variant '") +
                                    to_string(v) + "' is queue-only");
    switch (v) {
    case variant_id::header:
        return detail::run_trace_on<header_queue<trace_value>>(store, trace);
    case variant_id::blank:
        return detail::run_trace_on<blank_node_queue<trace_value>>(store, trace);
    case variant_id::circular:
        return detail::run_trace_on<circular_deque<trace_value>>(store, trace);
    case variant_id::lazy:
        return detail::run_trace_on<lazy_circular_queue<trace_value>>(store, trace);
    case variant_id::oracle:
        return detail::run_trace_on<oracle_deque<trace_value>>(store, trace);
    }
    throw std::logic_error("run_trace: unreachable");
}

// Result of one differential run. Divergence is a report, not an error.
struct diff_report {
    bool agreed = true;
    std::size_t ops_run = 0;
    std::size_t divergence_index = 0; // meaningful when !agreed
    std::string context;              // "output", "front", "empty" or an invariant message
    std::string expected;
    std::string got;
};

namespace detail {

template <typename S>
diff_report diff_on(const op_trace& trace, store_mode mode) {
    node_store<trace_value> store(mode);
    diff_report report;
    S s = runner<S>::make(store);
    oracle_deque<trace_value> model;

    const auto diverge = [&](std::size_t i, std::string context,
                             std::string expected, std::string got) {
        report.agreed = false;
        report.divergence_index = i;
        report.context = std::move(context);
        report.expected = std::move(expected);
        report.got = std::move(got);
    };

    for (std::size_t i = 0; i < trace.ops.size(); ++i) {
        const op& o = trace.ops[i];
        std::optional<observation> got = apply_op(s, o);
        std::optional<observation> want = apply_op(model, o);
        if (got != want) {
            diverge(i, "output", want ? to_string(*want) : "(none)",
                    got ? to_string(*got) : "(none)");
            return report;
        }
        if (runner<S>::empty(s) != model.empty()) {
            diverge(i, "empty", model.empty() ? "true" : "false",
                    runner<S>::empty(s) ? "true" : "false");
            return report;
        }
        if (!model.empty() && runner<S>::front(s) != model.front()) {
            diverge(i, "front", std::to_string(model.front()),
                    std::to_string(runner<S>::front(s)));
            return report;
        }
        if constexpr (!std::is_same_v<S, oracle_deque<trace_value>>) {
            if (mode == store_mode::checked) {
                std::string violation = check_invariants(s, store, model.size());
                if (!violation.empty()) {
                    diverge(i, violation, "invariant holds", "invariant violated");
                    return report;
                }
            }
        }
        ++report.ops_run;
    }
    return report;
}

} // namespace detail

// Runs the trace on the variant and the oracle side by side. After every op
// the observations, emptiness and front element must agree; in checked mode
// the variant's structural invariants are verified as well.
inline diff_report diff_check(variant_id v, const op_trace& trace,
                              store_mode mode = store_mode::checked) {
    if (!well_formed_for(v, trace))
        throw std::invalid_argument(std::string("diff_check: trace contains push_front "
                                                "but variant '") +
                                    to_string(v) + "' is queue-only");
    switch (v) {
    case variant_id::header:
        return detail::diff_on<header_queue<trace_value>>(trace, mode);
    case variant_id::blank:
        return detail::diff_on<blank_node_queue<trace_value>>(trace, mode);
    case variant_id::circular:
        return detail::diff_on<circular_deque<trace_value>>(trace, mode);
    case variant_id::lazy:
        return detail::diff_on<lazy_circular_queue<trace_value>>(trace, mode);
    case variant_id::oracle:
        return detail::diff_on<oracle_deque<trace_value>>(trace, mode);
    }
    throw std::logic_error("diff_check: unreachable");
}

} // namespace linkedq
