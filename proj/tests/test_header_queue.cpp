#include <cstddef>
#include <deque>
#include <random>

#include <catch2/catch_amalgamated.hpp>
#include <linkedq/header_queue.hpp>

using linkedq::header_queue;
using linkedq::metrics;
using linkedq::node_store;
using linkedq::precondition_error;
using linkedq::store_mode;

TEST_CASE("header queue is first-in first-out") {
    node_store<int> store;
    header_queue<int> q(store);
    REQUIRE(q.empty());

    q.enqueue(0);
    q.enqueue(1);
    q.enqueue(2);
    REQUIRE_FALSE(q.empty());
    CHECK(q.front() == 0);

    CHECK(q.dequeue() == 0);
    CHECK(q.dequeue() == 1);
    CHECK(q.front() == 2);
    CHECK(q.dequeue() == 2);
    CHECK(q.empty());
}

TEST_CASE("dequeue and front on an empty header queue are rejected") {
    node_store<int> store;
    header_queue<int> q(store);
    CHECK_THROWS_AS(q.dequeue(), precondition_error);
    CHECK_THROWS_AS(q.front(), precondition_error);

    q.enqueue(1);
    (void)q.dequeue();
    CHECK_THROWS_AS(q.dequeue(), precondition_error);
}

TEST_CASE("header queue per-operation event profile") {
    node_store<int> store;
    header_queue<int> q(store);

    SECTION("enqueue: one allocation, one data write, two link writes, one register write") {
        for (int i = 0; i < 1000; ++i) {
            metrics before = store.snapshot();
            q.enqueue(i);
            CHECK(store.snapshot() - before == metrics{1, 0, 1, 2, 1, 0});
        }
    }

    SECTION("dequeue of a non-rear node: no register write") {
        q.enqueue(1);
        q.enqueue(2);
        metrics before = store.snapshot();
        (void)q.dequeue();
        CHECK(store.snapshot() - before == metrics{0, 1, 0, 1, 0, 1});
    }

    SECTION("dequeue of the rear node: one extra register write to restore the rear") {
        q.enqueue(5);
        metrics before = store.snapshot();
        (void)q.dequeue();
        CHECK(store.snapshot() - before == metrics{0, 1, 0, 1, 1, 1});
    }

    SECTION("every dequeue costs exactly one comparison") {
        for (int i = 0; i < 500; ++i)
            q.enqueue(i);
        metrics before = store.snapshot();
        for (int i = 0; i < 500; ++i)
            (void)q.dequeue();
        metrics delta = store.snapshot() - before;
        CHECK(delta.comparisons == 500);
        CHECK(delta.deallocations == 500);
        CHECK(delta.link_writes == 500);
        CHECK(delta.register_writes == 1); // only the final, rear-removing dequeue
    }
}

TEST_CASE("dequeuing the last element points the rear back at the header") {
    node_store<int> store;
    header_queue<int> q(store);
    REQUIRE(q.rear() == q.header());

    q.enqueue(7);
    CHECK(q.rear() != q.header());

    (void)q.dequeue();
    CHECK(q.rear() == q.header());
    CHECK(q.empty());

    // the cycle works repeatedly
    q.enqueue(8);
    (void)q.dequeue();
    CHECK(q.rear() == q.header());
}

TEST_CASE("header queue holds one node more than its element count") {
    node_store<int> store;
    header_queue<int> q(store);
    CHECK(store.live_count() == 1);

    for (int i = 0; i < 100; ++i) {
        q.enqueue(i);
        REQUIRE(store.live_count() == static_cast<std::size_t>(i) + 2);
    }
    for (int i = 0; i < 100; ++i) {
        (void)q.dequeue();
        REQUIRE(store.live_count() == static_cast<std::size_t>(100 - i));
    }
}

TEST_CASE("header queue agrees with a plain deque over a long random run") {
    node_store<int> store(store_mode::checked);
    header_queue<int> q(store);
    std::deque<int> model;
    std::mt19937_64 rng(2024);

    for (int i = 0; i < 10000; ++i) {
        if (model.empty() || rng() % 2 == 0) {
            q.enqueue(i);
            model.push_back(i);
        } else {
            REQUIRE(q.dequeue() == model.front());
            model.pop_front();
        }
        REQUIRE(q.empty() == model.empty());
        if (!model.empty())
            REQUIRE(q.front() == model.front());
    }
}

TEST_CASE("destroying a header queue frees every node") {
    node_store<int> store;
    {
        header_queue<int> q(store);
        q.enqueue(0);
        q.enqueue(1);
        q.enqueue(2);
        REQUIRE(store.live_count() == 4);
    }
    metrics m = store.snapshot();
    CHECK(store.live_count() == 0);
    CHECK(m.allocations == 4);
    CHECK(m.deallocations == 4);
}

TEST_CASE("a moved-from header queue releases ownership") {
    node_store<int> store;
    {
        header_queue<int> q(store);
        q.enqueue(1);
        header_queue<int> taken(std::move(q));
        CHECK(taken.dequeue() == 1);
    } // only `taken` tears the nodes down
    CHECK(store.live_count() == 0);
}
