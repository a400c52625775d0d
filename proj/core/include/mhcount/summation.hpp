#pragma once

#include <atomic>
#include <cmath>
#include <complex>
#include <cstdint>
#include <thread>
#include <vector>

namespace mhcount {

// Neumaier variant of compensated summation; order of add() calls is part of
// the contract, callers must feed terms in a fixed order.
struct CompensatedSum {
  double sum = 0.0;
  double comp = 0.0;

  void add(double x) {
    double t = sum + x;
    if (std::abs(sum) >= std::abs(x))
      comp += (sum - t) + x;
    else
      comp += (x - t) + sum;
    sum = t;
  }

  double value() const { return sum + comp; }
};

struct ComplexSum {
  CompensatedSum re, im;

  void add(std::complex<double> z) {
    re.add(z.real());
    im.add(z.imag());
  }

  std::complex<double> value() const { return {re.value(), im.value()}; }
};

// Terms are grouped into fixed-size blocks; block partials are combined left
// to right. The grouping depends only on n, so the result is bit-identical
// for any worker count, including workers == 1.
inline constexpr int64_t kSumBlockLen = 4096;

template <class TermFn>
std::complex<double> blocked_complex_sum(int64_t n, int workers, TermFn&& term) {
  if (n <= 0) return {0.0, 0.0};
  const int64_t nblocks = (n + kSumBlockLen - 1) / kSumBlockLen;
  std::vector<std::complex<double>> partials(static_cast<size_t>(nblocks));

  auto run_block = [&](int64_t b) {
    const int64_t lo = b * kSumBlockLen;
    const int64_t hi = std::min<int64_t>(lo + kSumBlockLen, n);
    ComplexSum acc;
    for (int64_t i = lo; i < hi; ++i) acc.add(term(i));
    partials[static_cast<size_t>(b)] = acc.value();
  };

  if (workers <= 1 || nblocks == 1) {
    for (int64_t b = 0; b < nblocks; ++b) run_block(b);
  } else {
    std::atomic<int64_t> next{0};
    auto worker = [&] {
      for (;;) {
        int64_t b = next.fetch_add(1);
        if (b >= nblocks) return;
        run_block(b);
      }
    };
    const int nthreads = static_cast<int>(std::min<int64_t>(workers, nblocks));
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(nthreads));
    for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  ComplexSum total;
  for (const auto& p : partials) total.add(p);
  return total.value();
}

// Integer-valued work split over [0, n) in fixed chunks; chunk results are
// reduced by the caller, so only order-insensitive reductions belong here.
template <class ChunkFn>
void parallel_chunks(int64_t n, int workers, int64_t chunk_len, ChunkFn&& chunk) {
  if (n <= 0) return;
  const int64_t nchunks = (n + chunk_len - 1) / chunk_len;
  if (workers <= 1 || nchunks == 1) {
    for (int64_t c = 0; c < nchunks; ++c)
      chunk(c, c * chunk_len, std::min<int64_t>((c + 1) * chunk_len, n));
    return;
  }
  std::atomic<int64_t> next{0};
  auto worker = [&] {
    for (;;) {
      int64_t c = next.fetch_add(1);
      if (c >= nchunks) return;
      chunk(c, c * chunk_len, std::min<int64_t>((c + 1) * chunk_len, n));
    }
  };
  const int nthreads = static_cast<int>(std::min<int64_t>(workers, nchunks));
  std::vector<std::thread> pool;
  pool.reserve(static_cast<size_t>(nthreads));
  for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
}

}  // namespace mhcount
