// qbench: replay a workload across the linked-queue variants and report
// wall time plus the node store's event counters.
//
// Exit codes: 0 on success (and --help), 2 for bad usage or an unrunnable
// configuration, 1 for an internal failure.

#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include <linkedq/bench.hpp>

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    try {
        const linkedq::bench_config config = linkedq::parse_args(std::move(args));
        const std::vector<linkedq::bench_row> rows = linkedq::run_bench(config);
        std::cout << linkedq::emit_report(rows, config.format);
        return 0;
    } catch (const linkedq::help_requested& help) {
        std::cout << help.what() << '\n' << linkedq::qbench_usage();
        return 0;
    } catch (const linkedq::usage_error& e) {
        std::cerr << "qbench: " << e.what() << "\n\n" << linkedq::qbench_usage();
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "qbench: internal error: " << e.what() << '\n';
        return 1;
    }
}
