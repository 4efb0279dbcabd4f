#pragma once

#include <atomic>
#include <cstdint>
#include <thread>
#include <utility>
#include <vector>

namespace verigen::mc {

// Items are grouped into fixed-size leaves by index, never by worker, and the
// leaf results are folded along a fixed binary tree. Both choices are what
// make the reduction bitwise identical for any worker count.
inline constexpr std::uint64_t kReduceLeafSize = 4096;

namespace detail {

template <class State>
State merge_tree(std::vector<State>& parts, std::size_t lo, std::size_t hi) {
  if (hi - lo == 1) return std::move(parts[lo]);
  std::size_t mid = lo + (hi - lo) / 2;
  State left = merge_tree(parts, lo, mid);
  State right = merge_tree(parts, mid, hi);
  left.merge(right);
  return left;
}

}  // namespace detail

// State needs: default construction, merge(const State&). per_item is called
// as per_item(state, index) for every index in [0, count), grouped by leaf.
template <class State, class PerItem>
State parallel_reduce(std::uint64_t count, int workers, PerItem&& per_item) {
  if (count == 0) return State{};
  const std::uint64_t leaves = (count + kReduceLeafSize - 1) / kReduceLeafSize;
  std::vector<State> parts(leaves);

  auto fill_leaf = [&](std::uint64_t leaf) {
    State state{};
    const std::uint64_t begin = leaf * kReduceLeafSize;
    const std::uint64_t end = std::min(begin + kReduceLeafSize, count);
    for (std::uint64_t i = begin; i < end; ++i) per_item(state, i);
    parts[leaf] = std::move(state);
  };

  const std::uint64_t pool =
      std::min<std::uint64_t>(workers < 1 ? 1 : workers, leaves);
  if (pool <= 1) {
    for (std::uint64_t leaf = 0; leaf < leaves; ++leaf) fill_leaf(leaf);
  } else {
    std::atomic<std::uint64_t> next{0};
    std::vector<std::thread> threads;
    threads.reserve(pool);
    for (std::uint64_t w = 0; w < pool; ++w)
      threads.emplace_back([&] {
        for (std::uint64_t leaf = next.fetch_add(1); leaf < leaves;
             leaf = next.fetch_add(1))
          fill_leaf(leaf);
      });
    for (auto& t : threads) t.join();
  }
  return detail::merge_tree(parts, 0, leaves);
}

}  // namespace verigen::mc
