#include "doctest.h"

#include <atomic>
#include <stdexcept>
#include <vector>

#include "cyclescope/abelian.hpp"
#include "cyclescope/parallel.hpp"

using namespace cyclescope;

TEST_CASE("parallel_for visits every index once") {
  for (int threads : {1, 3, 8}) {
    set_thread_count(threads);
    CHECK(thread_count() == threads);
    std::vector<std::atomic<int>> hits(1000);
    parallel_for(hits.size(), [&](std::size_t k) { hits[k]++; });
    for (const auto& h : hits) CHECK(h.load() == 1);
  }
  set_thread_count(0);
  CHECK(thread_count() >= 1);
}

TEST_CASE("parallel_for rethrows the lowest failing index") {
  set_thread_count(4);
  try {
    parallel_for(100, [](std::size_t k) {
      if (k == 17 || k == 60) throw std::runtime_error("index " + std::to_string(k));
    });
    FAIL("expected an exception");
  } catch (const std::runtime_error& e) {
    CHECK(std::string(e.what()) == "index 17");
  }
  set_thread_count(0);
}

TEST_CASE("zero counts do not depend on the worker count") {
  const PerturbationSpec spec = random_spec(5, 31);
  set_thread_count(1);
  const ZeroReport one = count_zeros(spec, 200);
  set_thread_count(4);
  const ZeroReport four = count_zeros(spec, 200);
  set_thread_count(0);
  CHECK(one.roots == four.roots);
  CHECK(one.max_abs == four.max_abs);
  CHECK(one.sign_change_count == four.sign_change_count);
}
