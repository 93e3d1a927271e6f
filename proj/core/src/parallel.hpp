#pragma once

#include <algorithm>
#include <cstdint>
#include <exception>
#include <thread>
#include <vector>

namespace flowpoly::detail {

// Splits [0, n) into at most `jobs` contiguous chunks and runs
// fn(begin, end) on each, one thread per chunk. Results come back in chunk
// order so that any reduction over them is independent of `jobs`.
template <class T, class Fn>
std::vector<T> parallel_chunks(std::uint64_t n, int jobs, Fn fn) {
  const std::uint64_t workers =
      std::clamp<std::uint64_t>(jobs < 1 ? 1 : static_cast<std::uint64_t>(jobs), 1,
                                std::max<std::uint64_t>(n, 1));
  if (workers == 1) return {fn(std::uint64_t{0}, n)};

  std::vector<T> results(workers);
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> threads;
  threads.reserve(workers);
  for (std::uint64_t w = 0; w < workers; ++w) {
    const std::uint64_t begin = n * w / workers;
    const std::uint64_t end = n * (w + 1) / workers;
    threads.emplace_back([&, w, begin, end] {
      try {
        results[w] = fn(begin, end);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : threads) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return results;
}

}  // namespace flowpoly::detail
