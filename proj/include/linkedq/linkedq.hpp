#pragma once

// Umbrella header: the whole library in one include.

#include "errors.hpp"
#include "node_store.hpp"

#include "blank_node_queue.hpp"
#include "circular_deque.hpp"
#include "header_queue.hpp"
#include "lazy_circular_queue.hpp"

#include "oracle_deque.hpp"
#include "trace.hpp"

#include "bench.hpp"
#include "difftest.hpp"
