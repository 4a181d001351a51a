#include <cstddef>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include <catch2/catch_amalgamated.hpp>
#include <linkedq/node_store.hpp>

using linkedq::metrics;
using linkedq::node_handle;
using linkedq::node_store;
using linkedq::store_error;
using linkedq::store_mode;

namespace {

// Element type with no default constructor and a global instance count, so a
// test can prove the store constructs values only in write_data and destroys
// exactly what it constructed.
struct tracked {
    static inline int instances = 0;
    int value;

    explicit tracked(int v) : value(v) { ++instances; }
    tracked(const tracked& other) : value(other.value) { ++instances; }
    tracked(tracked&& other) noexcept : value(other.value) { ++instances; }
    tracked& operator=(const tracked&) = default;
    tracked& operator=(tracked&&) = default;
    ~tracked() { --instances; }
};

} // namespace

TEST_CASE("allocate and free drive the live count") {
    node_store<int> store;
    REQUIRE(store.live_count() == 0);

    node_handle a = store.allocate();
    CHECK(store.live_count() == 1);

    node_handle b = store.allocate();
    node_handle c = store.allocate();
    CHECK(store.live_count() == 3);

    store.free(b);
    CHECK(store.live_count() == 2);

    store.free(a);
    store.free(c);
    CHECK(store.live_count() == 0);

    metrics m = store.snapshot();
    CHECK(m.allocations == 3);
    CHECK(m.deallocations == 3);
}

TEST_CASE("a long allocate/free loop reuses slots and keeps exact counts") {
    node_store<int> store;
    for (int i = 0; i < 1000; ++i) {
        node_handle h = store.allocate(i);
        REQUIRE(store.read_data(h) == i);
        store.free(h);
    }
    metrics m = store.snapshot();
    CHECK(m.allocations == 1000);
    CHECK(m.deallocations == 1000);
    CHECK(m.data_writes == 1000);
    CHECK(store.live_count() == 0);
    CHECK(store.peak_live() == 1);
}

TEST_CASE("live count always equals allocations minus deallocations") {
    node_store<int> store;
    std::mt19937_64 rng(7);
    std::vector<node_handle> live;
    for (int i = 0; i < 5000; ++i) {
        if (live.empty() || rng() % 2 == 0) {
            live.push_back(store.allocate());
        } else {
            std::size_t pick = rng() % live.size();
            store.free(live[pick]);
            live.erase(live.begin() + static_cast<std::ptrdiff_t>(pick));
        }
        metrics m = store.snapshot();
        REQUIRE(store.live_count() == live.size());
        REQUIRE(store.live_count() == m.allocations - m.deallocations);
        REQUIRE(store.peak_live() >= store.live_count());
    }
}

TEST_CASE("links compose into chains that can be walked") {
    node_store<std::string> store;

    SECTION("three nodes") {
        node_handle a = store.allocate(std::string("a"));
        node_handle b = store.allocate(std::string("b"));
        node_handle c = store.allocate(std::string("c"));
        store.write_next(a, b);
        store.write_next(b, c);

        CHECK(store.read_next(a) == b);
        CHECK(store.read_next(store.read_next(a)) == c);
        CHECK(store.read_data(store.read_next(a)) == "b");
        CHECK(store.snapshot().link_writes == 2);
    }

    SECTION("a fifty-node chain walked end to end") {
        std::vector<node_handle> nodes;
        for (int i = 0; i < 50; ++i)
            nodes.push_back(store.allocate(std::to_string(i)));
        for (int i = 0; i + 1 < 50; ++i)
            store.write_next(nodes[static_cast<std::size_t>(i)],
                             nodes[static_cast<std::size_t>(i + 1)]);

        node_handle h = nodes.front();
        for (int i = 0; i < 50; ++i) {
            REQUIRE(store.read_data(h) == std::to_string(i));
            if (i + 1 < 50)
                h = store.read_next(h);
        }
        CHECK(h == nodes.back());
        CHECK(store.snapshot().link_writes == 49);
    }
}

TEST_CASE("checked mode rejects handle misuse") {
    node_store<int> store(store_mode::checked);

    SECTION("double free") {
        node_handle h = store.allocate(1);
        store.free(h);
        CHECK_THROWS_AS(store.free(h), store_error);
    }

    SECTION("use after free") {
        node_handle h = store.allocate(1);
        store.free(h);
        CHECK_THROWS_AS(store.read_data(h), store_error);
        CHECK_THROWS_AS(store.write_data(h, 2), store_error);
        CHECK_THROWS_AS(store.read_next(h), store_error);
        CHECK_THROWS_AS(store.write_next(h, h), store_error);
    }

    SECTION("a stale handle stays dead even after its slot is reused") {
        node_handle old = store.allocate(1);
        store.free(old);
        node_handle fresh = store.allocate(2); // takes the same slot
        CHECK(fresh != old);
        CHECK(store.read_data(fresh) == 2);
        CHECK_THROWS_AS(store.read_data(old), store_error);
        CHECK_THROWS_AS(store.free(old), store_error);
        CHECK(store.live_count() == 1);
    }

    SECTION("default-constructed handle names no node") {
        CHECK_THROWS_AS(store.read_next(node_handle{}), store_error);
    }

    SECTION("reading a slot that was never written") {
        node_handle h = store.allocate();
        CHECK_THROWS_AS(store.read_data(h), store_error);
        CHECK_THROWS_AS(store.read_next(h), store_error);
        CHECK_THROWS_AS(store.take_data(h), store_error);
    }

    SECTION("a failed access counts nothing") {
        node_handle h = store.allocate();
        metrics before = store.snapshot();
        CHECK_THROWS_AS(store.read_data(h), store_error);
        CHECK(store.snapshot() == before);
    }
}

TEST_CASE("every counted event is tallied exactly once") {
    node_store<int> store;

    SECTION("explicit structure-level hooks") {
        store.note_comparison();
        store.note_comparison();
        store.note_comparison();
        CHECK(store.snapshot().comparisons == 3);
        CHECK(store.snapshot().register_writes == 0);

        store.note_register_write();
        CHECK(store.snapshot().register_writes == 1);
    }

    SECTION("reads are not events") {
        node_handle h = store.allocate(41);
        store.write_next(h, h);
        metrics before = store.snapshot();
        (void)store.read_data(h);
        (void)store.read_next(h);
        (void)store.take_data(h);
        CHECK(store.snapshot() == before);
    }

    SECTION("a ten-thousand-op sequence matches a hand-kept tally") {
        std::mt19937_64 rng(99);
        std::vector<node_handle> live;
        std::uint64_t allocs = 0, frees = 0, data = 0, links = 0, regs = 0, comps = 0;
        for (int i = 0; i < 10000; ++i) {
            const std::uint64_t choice = rng() % 6;
            if (live.empty() || choice == 0) {
                live.push_back(store.allocate());
                ++allocs;
            } else if (choice == 1) {
                std::size_t pick = rng() % live.size();
                store.free(live[pick]);
                live.erase(live.begin() + static_cast<std::ptrdiff_t>(pick));
                ++frees;
            } else if (choice == 2) {
                store.write_data(live[rng() % live.size()], i);
                ++data;
            } else if (choice == 3) {
                store.write_next(live[rng() % live.size()], live[rng() % live.size()]);
                ++links;
            } else if (choice == 4) {
                store.note_register_write();
                ++regs;
            } else {
                store.note_comparison();
                ++comps;
            }
        }
        metrics m = store.snapshot();
        CHECK(m.allocations == allocs);
        CHECK(m.deallocations == frees);
        CHECK(m.data_writes == data);
        CHECK(m.link_writes == links);
        CHECK(m.register_writes == regs);
        CHECK(m.comparisons == comps);
        CHECK(store.live_count() == live.size());
    }
}

TEST_CASE("checked and fast stores produce identical metrics on a valid sequence") {
    node_store<int> checked(store_mode::checked);
    node_store<int> fast(store_mode::fast);
    REQUIRE(checked.mode() == store_mode::checked);
    REQUIRE(fast.mode() == store_mode::fast);

    const auto drive = [](node_store<int>& store) {
        std::vector<node_handle> live;
        std::mt19937_64 rng(123);
        for (int i = 0; i < 2000; ++i) {
            if (live.size() < 3 || rng() % 3 != 0) {
                live.push_back(store.allocate(i));
                store.write_next(live.back(), live.front());
            } else {
                store.free(live.back());
                live.pop_back();
                store.note_comparison();
                store.note_register_write();
            }
        }
    };
    drive(checked);
    drive(fast);
    CHECK(checked.snapshot() == fast.snapshot());
    CHECK(checked.live_count() == fast.live_count());
    CHECK(checked.peak_live() == fast.peak_live());
}

TEST_CASE("reset_metrics zeroes counters and restarts the peak") {
    node_store<int> store;
    node_handle a = store.allocate(1);
    node_handle b = store.allocate(2);
    store.write_next(a, b);
    store.free(b);
    REQUIRE(store.snapshot().allocations == 2);

    store.reset_metrics();
    CHECK(store.snapshot() == metrics{});
    CHECK(store.live_count() == 1);    // nodes are untouched
    CHECK(store.peak_live() == 1);     // peak restarts from the current live count

    store.free(a);
    metrics m = store.snapshot();
    CHECK(m.allocations == 0);
    CHECK(m.deallocations == 1);
}

TEST_CASE("metric snapshots subtract into per-window deltas") {
    node_store<int> store;
    node_handle a = store.allocate(1);
    metrics before = store.snapshot();
    node_handle b = store.allocate(2);
    store.write_next(a, b);
    store.note_comparison();
    metrics delta = store.snapshot() - before;
    CHECK(delta == metrics{1, 0, 1, 1, 0, 1});
}

TEST_CASE("values are constructed only by write_data and destroyed exactly once") {
    REQUIRE(tracked::instances == 0);
    {
        node_store<tracked> store;
        node_handle a = store.allocate(); // no construction yet
        CHECK(tracked::instances == 0);

        store.write_data(a, tracked(5));
        CHECK(tracked::instances == 1);
        CHECK(store.read_data(a).value == 5);

        store.write_data(a, tracked(6)); // assignment, not a second instance
        CHECK(tracked::instances == 1);
        CHECK(store.read_data(a).value == 6);

        tracked moved = store.take_data(a);
        CHECK(moved.value == 6);
        CHECK(tracked::instances == 2); // moved-out copy plus the slot's shell

        store.free(a); // destroys the shell
        CHECK(tracked::instances == 1);

        node_handle b = store.allocate(tracked(7));
        node_handle c = store.allocate(tracked(8));
        store.write_next(b, c);
        CHECK(tracked::instances == 3);
        // b and c stay live; the store's destructor must clean them up
    }
    CHECK(tracked::instances == 0);
}

TEST_CASE("freed slots are recycled before the arena grows") {
    node_store<int> store;
    node_handle a = store.allocate(1);
    node_handle b = store.allocate(2);
    store.free(a);
    store.free(b);

    // Two allocations must fit in the two recycled slots: live never exceeds
    // the old peak.
    node_handle c = store.allocate(3);
    node_handle d = store.allocate(4);
    CHECK(store.read_data(c) == 3);
    CHECK(store.read_data(d) == 4);
    CHECK(store.live_count() == 2);
    CHECK(store.peak_live() == 2);
    CHECK(store.snapshot().allocations == 4);
}
