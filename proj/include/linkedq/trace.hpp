#pragma once

#include <cstddef>
#include <cstdint>
#include <fstream>
#include <istream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace linkedq {

using trace_value = long long;

enum class op_kind { push_back, push_front, pop_front, front, is_empty };

struct op {
    op_kind kind;
    trace_value value = 0; // meaningful for pushes only

    friend bool operator==(const op&, const op&) = default;
};

// A replayable workload: the op list plus the parameters that produced it.
struct op_trace {
    std::vector<op> ops;
    std::string generator;
    std::uint64_t seed = 0;

    std::size_t size() const { return ops.size(); }
};

struct random_mix {
    double push_back = 0.5;
    double push_front = 0.0;
    double pop_front = 0.5;
};

namespace detail {

// 53-bit uniform in [0, 1); keeps trace generation independent of the
// standard library's distribution implementations.
inline double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

} // namespace detail

// Seed-deterministic random workload. A pop drawn while the modeled queue is
// empty is re-rolled as a push_back, so every generated trace is
// precondition-clean. Pushed values come from a running counter, making any
// divergence between two structures unambiguous.
inline op_trace gen_random(std::uint64_t seed, std::size_t n, const random_mix& mix) {
    const double sum = mix.push_back + mix.push_front + mix.pop_front;
    if (mix.push_back < 0.0 || mix.push_front < 0.0 || mix.pop_front < 0.0 ||
        sum < 1.0 - 1e-9 || sum > 1.0 + 1e-9)
        throw std::invalid_argument(
            "gen_random: mix probabilities must be non-negative and sum to 1");

    op_trace trace;
    trace.generator = "random";
    trace.seed = seed;
    trace.ops.reserve(n);

    std::mt19937_64 rng(seed);
    std::size_t model_len = 0;
    trace_value next_value = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double u = detail::uniform01(rng);
        op_kind kind = op_kind::pop_front;
        if (u < mix.push_back)
            kind = op_kind::push_back;
        else if (u < mix.push_back + mix.push_front)
            kind = op_kind::push_front;
        if (kind == op_kind::pop_front && model_len == 0)
            kind = op_kind::push_back;

        if (kind == op_kind::pop_front) {
            trace.ops.push_back({op_kind::pop_front});
            --model_len;
        } else {
            trace.ops.push_back({kind, next_value++});
            ++model_len;
        }
    }
    return trace;
}

// rounds repetitions of k pushes then k pops; the queue is empty again after
// every round, so the empty boundary is crossed over and over.
inline op_trace gen_burst(std::size_t k, std::size_t rounds) {
    op_trace trace;
    trace.generator = "burst";
    trace.ops.reserve(2 * k * rounds);
    trace_value next_value = 0;
    for (std::size_t r = 0; r < rounds; ++r) {
        for (std::size_t i = 0; i < k; ++i)
            trace.ops.push_back({op_kind::push_back, next_value++});
        for (std::size_t i = 0; i < k; ++i)
            trace.ops.push_back({op_kind::pop_front});
    }
    return trace;
}

// For i in 1..max: i pushes then i pops. Sweeps every queue length up to max
// through both of its boundary transitions.
inline op_trace gen_ramp(std::size_t max) {
    op_trace trace;
    trace.generator = "ramp";
    trace.ops.reserve(max * (max + 1));
    trace_value next_value = 0;
    for (std::size_t i = 1; i <= max; ++i) {
        for (std::size_t j = 0; j < i; ++j)
            trace.ops.push_back({op_kind::push_back, next_value++});
        for (std::size_t j = 0; j < i; ++j)
            trace.ops.push_back({op_kind::pop_front});
    }
    return trace;
}

// True when no pop_front or front in the trace lands on an empty queue.
inline bool trace_precondition_clean(const op_trace& trace) {
    std::size_t model_len = 0;
    for (const op& o : trace.ops) {
        switch (o.kind) {
        case op_kind::push_back:
        case op_kind::push_front:
            ++model_len;
            break;
        case op_kind::pop_front:
            if (model_len == 0)
                return false;
            --model_len;
            break;
        case op_kind::front:
            if (model_len == 0)
                return false;
            break;
        case op_kind::is_empty:
            break;
        }
    }
    return true;
}

inline bool trace_has_push_front(const op_trace& trace) {
    for (const op& o : trace.ops)
        if (o.kind == op_kind::push_front)
            return true;
    return false;
}

// Trace file format, one op per line, ASCII with LF line endings:
//   B <int>   push_back
//   F <int>   push_front
//   P         pop_front
//   Q         front query
//   E         is_empty
// Lines starting with '#' are comments; blank lines are ignored.

inline std::string format_trace(const op_trace& trace) {
    std::string out;
    for (const op& o : trace.ops) {
        switch (o.kind) {
        case op_kind::push_back:
            out += "B " + std::to_string(o.value) + "\n";
            break;
        case op_kind::push_front:
            out += "F " + std::to_string(o.value) + "\n";
            break;
        case op_kind::pop_front:
            out += "P\n";
            break;
        case op_kind::front:
            out += "Q\n";
            break;
        case op_kind::is_empty:
            out += "E\n";
            break;
        }
    }
    return out;
}

inline op_trace parse_trace(std::istream& in) {
    op_trace trace;
    trace.generator = "file";
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        std::size_t start = line.find_first_not_of(" \t");
        if (start == std::string::npos || line[start] == '#')
            continue;

        const auto fail = [&](const char* why) {
            throw std::invalid_argument("trace line " + std::to_string(line_no) +
                                        ": " + why + ": '" + line + "'");
        };

        std::istringstream fields(line.substr(start));
        std::string tag;
        fields >> tag;
        if (tag == "B" || tag == "F") {
            trace_value value;
            if (!(fields >> value))
                fail("expected an integer argument");
            trace.ops.push_back(
                {tag == "B" ? op_kind::push_back : op_kind::push_front, value});
        } else if (tag == "P" || tag == "Q" || tag == "E") {
            trace.ops.push_back({tag == "P"   ? op_kind::pop_front
                                 : tag == "Q" ? op_kind::front
                                              : op_kind::is_empty});
        } else {
            fail("unknown op");
        }
        std::string rest;
        if (fields >> rest)
            fail("trailing tokens");
    }
    return trace;
}

inline op_trace parse_trace(std::string_view text) {
    std::istringstream in{std::string(text)};
    return parse_trace(in);
}

inline op_trace load_trace_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::invalid_argument("cannot open trace file: " + path);
    return parse_trace(in);
}

} // namespace linkedq
