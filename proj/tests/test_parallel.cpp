#include <gtest/gtest.h>

#include <atomic>
#include <set>
#include <stdexcept>
#include <vector>

#include "bentshift/parallel.hpp"

using namespace bentshift;

TEST(DeriveSeed, DeterministicAndDistinct) {
  EXPECT_EQ(derive_seed(1, 5), derive_seed(1, 5));
  std::set<std::uint64_t> seen;
  for (std::uint64_t i = 0; i < 1000; ++i) seen.insert(derive_seed(42, i));
  EXPECT_EQ(seen.size(), 1000u);
  EXPECT_NE(derive_seed(1, 0), derive_seed(2, 0));
}

TEST(ParallelFor, VisitsEveryIndexOnce) {
  for (unsigned threads : {1u, 2u, 4u, 0u}) {
    std::vector<std::atomic<int>> hits(500);
    parallel_for(hits.size(), threads, [&](std::size_t i) { ++hits[i]; });
    for (auto& h : hits) ASSERT_EQ(h.load(), 1);
  }
}

TEST(ParallelFor, ResultsIndependentOfThreadCount) {
  auto run = [](unsigned threads) {
    std::vector<std::uint64_t> out(200);
    parallel_for(out.size(), threads, [&](std::size_t i) { out[i] = derive_seed(7, i) % 1000; });
    return out;
  };
  EXPECT_EQ(run(1), run(3));
}

TEST(ParallelFor, PropagatesExceptions) {
  EXPECT_THROW(parallel_for(100, 3, [](std::size_t i) {
                 if (i == 17) throw std::runtime_error("boom");
               }),
               std::runtime_error);
  EXPECT_NO_THROW(parallel_for(0, 4, [](std::size_t) {}));
}
