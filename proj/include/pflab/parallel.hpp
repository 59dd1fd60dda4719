// parallel.hpp
// Thread-parallel loops and deterministic reductions.
//
// Every sum in the project goes through pairwise_sum / block_sum so results
// are bitwise identical regardless of the number of worker threads: the
// summation tree is fixed by the data layout, threads only compute disjoint
// pre-assigned blocks.

#ifndef PFLAB_PARALLEL_HPP
#define PFLAB_PARALLEL_HPP

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace pflab {

// Worker count: PFLAB_THREADS env var, else min(hardware_concurrency, 8).
int thread_count();
void set_thread_count(int n); // n >= 1; overrides the env default

// Runs fn(begin, end) over [0, n) in contiguous chunks, possibly on
// several threads. fn must only write to locations it owns.
void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& fn);

// Fixed-shape pairwise reduction of a contiguous range (serial).
double pairwise_sum(std::span<const double> v);

// Deterministic parallel sum: fixed 1024-element blocks are summed pairwise
// (in parallel), then the block partials are combined pairwise (serially).
double block_sum(std::span<const double> v);

// block_sum of a virtual array term(i), i in [0, n).
double block_sum_fn(std::size_t n, const std::function<double(std::size_t)>& term);

} // namespace pflab

#endif
