#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "difftest.hpp"
#include "node_store.hpp"
#include "trace.hpp"

namespace linkedq {

// Bad command line or unrunnable configuration; maps to exit code 2.
class usage_error : public std::runtime_error {
public:
    explicit usage_error(const std::string& what) : std::runtime_error(what) {}
};

// --help was given; what() carries the full help text. Maps to exit code 0.
class help_requested : public std::runtime_error {
public:
    explicit help_requested(const std::string& text) : std::runtime_error(text) {}
};

enum class output_format { json, csv };

// A workload argument of the form name:key=value,key=value. Numbers accept
// scientific notation (n=1e6).
struct workload_spec {
    std::string text; // as given on the command line
    std::string name; // random | burst | ramp
    std::map<std::string, double> params;
};

struct bench_config {
    std::vector<variant_id> variants;
    workload_spec workload;
    std::string trace_file;       // replaces the generator when non-empty
    std::size_t ops = 0;          // 0 = replay the whole trace
    std::size_t warmup = 0;
    std::size_t reps = 1;
    output_format format = output_format::json;
    store_mode mode = store_mode::fast;
    bool parallel = false;
};

// One (variant, workload, repetition) measurement. Counters cover only the
// measured window: warmup ops run first, then the counters are reset.
struct bench_row {
    std::string variant;
    std::string workload;
    std::size_t rep = 0;
    std::size_t ops = 0;
    std::uint64_t ns_total = 0;
    double ns_per_op = 0.0;
    metrics counters;
    std::size_t peak_live = 0;
    std::size_t final_live = 0;
};

namespace detail {

inline double parse_number(const std::string& key, const std::string& value) {
    try {
        std::size_t used = 0;
        const double parsed = std::stod(value, &used);
        if (used != value.size())
            throw std::invalid_argument(value);
        return parsed;
    } catch (const std::exception&) {
        throw usage_error("workload parameter '" + key + "' is not a number: '" +
                          value + "'");
    }
}

inline std::size_t as_count(const workload_spec& spec, const std::string& key,
                            double fallback = -1.0) {
    auto it = spec.params.find(key);
    const double raw = it != spec.params.end() ? it->second : fallback;
    if (raw < 0.0)
        throw usage_error("workload '" + spec.name + "' needs parameter '" + key + "'");
    return static_cast<std::size_t>(raw);
}

inline double as_probability(const workload_spec& spec, const std::string& key,
                             double fallback) {
    auto it = spec.params.find(key);
    return it != spec.params.end() ? it->second : fallback;
}

} // namespace detail

inline workload_spec parse_workload(const std::string& text) {
    workload_spec spec;
    spec.text = text;
    const std::size_t colon = text.find(':');
    spec.name = text.substr(0, colon);

    struct generator_schema {
        std::vector<std::string> allowed;
        std::vector<std::string> required;
    };
    static const std::map<std::string, generator_schema> known = {
        {"random", {{"seed", "n", "pb", "pf", "pp"}, {"n"}}},
        {"burst", {{"k", "rounds"}, {"k", "rounds"}}},
        {"ramp", {{"max"}, {"max"}}},
    };
    auto generator = known.find(spec.name);
    if (generator == known.end())
        throw usage_error("unknown workload generator: '" + spec.name + "'");

    std::string rest = colon == std::string::npos ? "" : text.substr(colon + 1);
    while (!rest.empty()) {
        const std::size_t comma = rest.find(',');
        const std::string pair = rest.substr(0, comma);
        rest = comma == std::string::npos ? "" : rest.substr(comma + 1);
        if (pair.empty())
            continue;
        const std::size_t eq = pair.find('=');
        if (eq == std::string::npos)
            throw usage_error("workload parameter without '=': '" + pair + "'");
        const std::string key = pair.substr(0, eq);
        const auto& allowed = generator->second.allowed;
        if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
            throw usage_error("unknown parameter '" + key + "' for workload '" +
                              spec.name + "'");
        if (spec.params.count(key))
            throw usage_error("duplicate workload parameter: '" + key + "'");
        spec.params[key] = detail::parse_number(key, pair.substr(eq + 1));
    }
    for (const std::string& key : generator->second.required)
        if (!spec.params.count(key))
            throw usage_error("workload '" + spec.name + "' needs parameter '" + key +
                              "'");
    return spec;
}

inline op_trace generate_workload(const workload_spec& spec) {
    if (spec.name == "random") {
        const auto seed = static_cast<std::uint64_t>(detail::as_count(spec, "seed", 1));
        const std::size_t n = detail::as_count(spec, "n");
        random_mix mix{detail::as_probability(spec, "pb", 0.5),
                       detail::as_probability(spec, "pf", 0.0),
                       detail::as_probability(spec, "pp", 0.5)};
        try {
            return gen_random(seed, n, mix);
        } catch (const std::invalid_argument& e) {
            throw usage_error(e.what());
        }
    }
    if (spec.name == "burst")
        return gen_burst(detail::as_count(spec, "k"), detail::as_count(spec, "rounds"));
    return gen_ramp(detail::as_count(spec, "max"));
}

inline const char* qbench_usage() {
    return "qbench --variant <header|blank|circular|lazy|all> --workload <name:params>\n"
           "       [--ops N] [--warmup N] [--reps N] [--format json|csv]\n"
           "       [--checked] [--parallel] [--trace-file PATH]\n"
           "\n"
           "Replays a workload across linked-queue variants and reports wall time\n"
           "plus the store's event counters, one row per (variant, repetition).\n"
           "\n"
           "Workloads:\n"
           "  random:seed=S,n=N,pb=P,pf=P,pp=P  seeded random op mix\n"
           "  burst:k=K,rounds=R                R rounds of K pushes then K pops\n"
           "  ramp:max=M                        i pushes then i pops for i in 1..M\n"
           "  --trace-file PATH                 replay a trace file instead\n";
}

// argv-style arguments, program name excluded. Throws usage_error on any bad
// input; a plain --help prints usage via CLI11's exception and exits 0 in the
// CLI wrapper.
inline bench_config parse_args(std::vector<std::string> args) {
    CLI::App app{"linked-queue benchmark harness", "qbench"};
    std::string variant_arg;
    std::string workload_arg;
    std::string format_arg = "json";
    std::string trace_file;
    double ops_arg = -1.0;
    double warmup_arg = 0.0;
    double reps_arg = 1.0;
    bool checked = false;
    bool parallel = false;

    app.add_option("--variant", variant_arg,
                   "variant to run: header|blank|circular|lazy|all")
        ->required();
    app.add_option("--workload", workload_arg, "workload spec, e.g. burst:k=64,rounds=100");
    app.add_option("--ops", ops_arg, "replay at most N trace ops");
    app.add_option("--warmup", warmup_arg, "uncounted warmup ops before the measured window");
    app.add_option("--reps", reps_arg, "repetitions per variant");
    app.add_option("--format", format_arg, "report format: json|csv");
    app.add_flag("--checked", checked, "run stores in checked mode");
    app.add_flag("--parallel", parallel, "run (variant, rep) jobs on worker threads");
    app.add_option("--trace-file", trace_file, "replay this trace file instead of a generator");

    try {
        std::reverse(args.begin(), args.end());
        app.parse(args);
    } catch (const CLI::CallForHelp&) {
        throw help_requested(app.help());
    } catch (const CLI::ParseError& e) {
        throw usage_error(e.what());
    }

    bench_config config;
    if (variant_arg == "all") {
        config.variants = {variant_id::header, variant_id::blank, variant_id::circular,
                           variant_id::lazy};
    } else if (auto v = variant_from_string(variant_arg); v && *v != variant_id::oracle) {
        config.variants = {*v};
    } else {
        throw usage_error("unknown variant: '" + variant_arg + "'");
    }

    if (format_arg == "json")
        config.format = output_format::json;
    else if (format_arg == "csv")
        config.format = output_format::csv;
    else
        throw usage_error("unknown format: '" + format_arg + "'");

    if (workload_arg.empty() == trace_file.empty())
        throw usage_error("exactly one of --workload and --trace-file is required");
    if (!workload_arg.empty())
        config.workload = parse_workload(workload_arg);
    config.trace_file = trace_file;

    if (app.count("--ops") > 0 && ops_arg < 0.0)
        throw usage_error("--ops must be non-negative");
    if (ops_arg >= 0.0)
        config.ops = static_cast<std::size_t>(ops_arg);
    if (warmup_arg < 0.0)
        throw usage_error("--warmup must be non-negative");
    config.warmup = static_cast<std::size_t>(warmup_arg);
    if (reps_arg < 1.0)
        throw usage_error("--reps must be at least 1");
    config.reps = static_cast<std::size_t>(reps_arg);
    if (config.ops != 0 && config.warmup > config.ops)
        throw usage_error("--warmup must not exceed --ops");

    config.mode = checked ? store_mode::checked : store_mode::fast;
    config.parallel = parallel;
    return config;
}

namespace detail {

template <typename S>
bench_row measure_one(const op_trace& trace, std::size_t op_count, std::size_t warmup,
                      store_mode mode) {
    node_store<trace_value> store(mode);
    bench_row row;
    {
        S s = runner<S>::make(store);
        for (std::size_t i = 0; i < warmup; ++i)
            apply_op(s, trace.ops[i]);
        store.reset_metrics();

        const auto start = std::chrono::steady_clock::now();
        for (std::size_t i = warmup; i < op_count; ++i)
            apply_op(s, trace.ops[i]);
        const auto stop = std::chrono::steady_clock::now();

        row.ops = op_count - warmup;
        row.ns_total = static_cast<std::uint64_t>(
            std::chrono::duration_cast<std::chrono::nanoseconds>(stop - start).count());
        row.ns_per_op = row.ops == 0 ? 0.0
                                     : static_cast<double>(row.ns_total) /
                                           static_cast<double>(row.ops);
        row.counters = store.snapshot();
        row.peak_live = store.peak_live();
        row.final_live = store.live_count();
    }
    return row;
}

inline bench_row measure_variant(variant_id v, const op_trace& trace, std::size_t op_count,
                                 std::size_t warmup, store_mode mode) {
    switch (v) {
    case variant_id::header:
        return measure_one<header_queue<trace_value>>(trace, op_count, warmup, mode);
    case variant_id::blank:
        return measure_one<blank_node_queue<trace_value>>(trace, op_count, warmup, mode);
    case variant_id::circular:
        return measure_one<circular_deque<trace_value>>(trace, op_count, warmup, mode);
    case variant_id::lazy:
        return measure_one<lazy_circular_queue<trace_value>>(trace, op_count, warmup, mode);
    case variant_id::oracle:
        return measure_one<oracle_deque<trace_value>>(trace, op_count, warmup, mode);
    }
    throw std::logic_error("measure_variant: unreachable");
}

} // namespace detail

// Validates the (trace, config) pairing and measures every (variant, rep)
// job. Counters are deterministic for a fixed config; only the timing fields
// vary between runs.
inline std::vector<bench_row> run_bench(const bench_config& config) {
    op_trace trace;
    if (config.trace_file.empty()) {
        trace = generate_workload(config.workload);
    } else {
        try {
            trace = load_trace_file(config.trace_file);
        } catch (const std::invalid_argument& e) {
            throw usage_error(e.what()); // unreadable or malformed trace file
        }
    }
    const std::string workload_label =
        config.trace_file.empty() ? config.workload.text : "trace:" + config.trace_file;

    const std::size_t op_count =
        config.ops == 0 ? trace.size() : std::min(config.ops, trace.size());
    if (config.warmup > op_count)
        throw usage_error("--warmup exceeds the number of trace ops");

    op_trace window = trace;
    window.ops.resize(op_count);
    if (!trace_precondition_clean(window))
        throw usage_error("trace pops or queries an empty queue; qbench replays only "
                          "precondition-clean traces");
    for (variant_id v : config.variants)
        if (!well_formed_for(v, window))
            throw usage_error(std::string("trace contains push_front but variant '") +
                              to_string(v) + "' is queue-only");

    struct job {
        variant_id variant;
        std::size_t rep;
    };
    std::vector<job> jobs;
    for (variant_id v : config.variants)
        for (std::size_t rep = 1; rep <= config.reps; ++rep)
            jobs.push_back({v, rep});

    std::vector<bench_row> rows(jobs.size());
    const auto run_job = [&](std::size_t index) {
        const job& j = jobs[index];
        bench_row row =
            detail::measure_variant(j.variant, window, op_count, config.warmup, config.mode);
        row.variant = to_string(j.variant);
        row.workload = workload_label;
        row.rep = j.rep;
        rows[index] = std::move(row);
    };

    if (config.parallel && jobs.size() > 1) {
        const std::size_t worker_count =
            std::min<std::size_t>(jobs.size(),
                                  std::max(1u, std::thread::hardware_concurrency()));
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> workers;
        workers.reserve(worker_count);
        for (std::size_t w = 0; w < worker_count; ++w)
            workers.emplace_back([&] {
                for (std::size_t i = next.fetch_add(1); i < jobs.size();
                     i = next.fetch_add(1))
                    run_job(i);
            });
        for (std::thread& t : workers)
            t.join();
    } else {
        for (std::size_t i = 0; i < jobs.size(); ++i)
            run_job(i);
    }
    return rows;
}

namespace detail {

// Both emitters serialize numbers through nlohmann so the JSON and CSV forms
// of the same report are textually identical cell by cell. String cells with
// commas or quotes get standard CSV quoting.
inline std::string csv_cell(const nlohmann::json& value) {
    if (!value.is_string())
        return value.dump();
    const std::string text = value.get<std::string>();
    if (text.find_first_of(",\"\n") == std::string::npos)
        return text;
    std::string quoted = "\"";
    for (char c : text) {
        if (c == '"')
            quoted += '"';
        quoted += c;
    }
    quoted += '"';
    return quoted;
}

inline nlohmann::ordered_json row_to_json(const bench_row& row) {
    return nlohmann::ordered_json{{"variant", row.variant},
                                  {"workload", row.workload},
                                  {"rep", row.rep},
                                  {"ops", row.ops},
                                  {"ns_total", row.ns_total},
                                  {"ns_per_op", row.ns_per_op},
                                  {"allocations", row.counters.allocations},
                                  {"deallocations", row.counters.deallocations},
                                  {"data_writes", row.counters.data_writes},
                                  {"link_writes", row.counters.link_writes},
                                  {"register_writes", row.counters.register_writes},
                                  {"comparisons", row.counters.comparisons},
                                  {"peak_live", row.peak_live},
                                  {"final_live", row.final_live}};
}

} // namespace detail

inline std::string emit_report(const std::vector<bench_row>& rows, output_format format) {
    nlohmann::ordered_json report = nlohmann::ordered_json::array();
    for (const bench_row& row : rows)
        report.push_back(detail::row_to_json(row));

    if (format == output_format::json)
        return report.dump(2) + "\n";

    const nlohmann::ordered_json header_row = detail::row_to_json(bench_row{});
    std::string out;
    bool first_column = true;
    for (const auto& [key, value] : header_row.items()) {
        (void)value;
        out += first_column ? "" : ",";
        out += key;
        first_column = false;
    }
    out += "\n";
    for (const auto& row : report) {
        first_column = true;
        for (const auto& [key, value] : row.items()) {
            (void)key;
            out += first_column ? "" : ",";
            out += detail::csv_cell(value);
            first_column = false;
        }
        out += "\n";
    }
    return out;
}

} // namespace linkedq
