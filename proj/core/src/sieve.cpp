#include "kfree/sieve.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <stdexcept>
#include <string>
#include <thread>

namespace kfree {

namespace {

void check_k(unsigned k) {
  if (k < 2) throw std::invalid_argument("k must be at least 2, got " + std::to_string(k));
}

void check_argument(u64 Z) {
  if (Z == 0) throw std::invalid_argument("Z must be positive");
  if (Z > kMaxArgument) {
    throw std::out_of_range("Z = " + std::to_string(Z) + " too large: 2Z + 1 must stay below 2^63");
  }
}

unsigned resolve_threads(unsigned requested) {
  if (requested != 0) return requested;
  return std::max(1u, std::thread::hardware_concurrency());
}

// Runs body(segment_lo, segment_end, buffer) over [1, last] in segments and
// sums the results. Segments are handed out through an atomic counter, each
// worker owns its buffer.
template <typename Body>
u64 sum_over_segments(u64 last, const SieveOptions& options, Body body) {
  const u64 seg = std::max<u64>(options.segment_size, 64);
  const u64 n_segments = (last + seg - 1) / seg;
  const unsigned n_threads =
      static_cast<unsigned>(std::min<u64>(resolve_threads(options.threads), n_segments));

  auto worker = [&](std::atomic<u64>& next, u64& total) {
    SieveSegment buffer;
    for (u64 s = next.fetch_add(1); s < n_segments; s = next.fetch_add(1)) {
      const u64 lo = 1 + s * seg;
      const u64 end = std::min(lo + seg, last + 1);
      total += body(lo, end, buffer);
    }
  };

  std::atomic<u64> next{0};
  if (n_threads <= 1) {
    u64 total = 0;
    worker(next, total);
    return total;
  }
  std::vector<u64> partial(n_threads, 0);
  std::vector<std::thread> pool;
  pool.reserve(n_threads);
  for (unsigned t = 0; t < n_threads; ++t) {
    pool.emplace_back(worker, std::ref(next), std::ref(partial[t]));
  }
  for (auto& th : pool) th.join();
  u64 total = 0;
  for (u64 p : partial) total += p;
  return total;
}

u64 pairs_up_to(u64 Z, unsigned k, const SieveOptions& options) {
  const auto powers = prime_powers_up_to(Z + 1, k);
  return sum_over_segments(Z, options, [&](u64 lo, u64 end, SieveSegment& buf) {
    // One element of overlap so the pair (end - 1, end) is seen here.
    sieve_into(buf, lo, end + 1, k, powers);
    return buf.count_adjacent_pairs();
  });
}

}  // namespace

u64 SieveSegment::count() const {
  u64 total = 0;
  for (auto w : words_) total += static_cast<u64>(std::popcount(w));
  return total;
}

u64 SieveSegment::count_adjacent_pairs() const {
  if (size() < 2) return 0;
  u64 total = 0;
  const std::size_t n = words_.size();
  for (std::size_t j = 0; j < n; ++j) {
    std::uint64_t next = (j + 1 < n) ? words_[j + 1] : 0;
    std::uint64_t shifted = (words_[j] >> 1) | (next << 63);
    total += static_cast<u64>(std::popcount(words_[j] & shifted));
  }
  // Bits past the end are zero, so the last entry never pairs with padding.
  return total;
}

std::vector<u64> primes_up_to(u64 limit) {
  std::vector<u64> primes;
  if (limit < 2) return primes;
  std::vector<bool> composite(limit + 1, false);
  for (u64 i = 2; i <= limit; ++i) {
    if (composite[i]) continue;
    primes.push_back(i);
    if (i <= limit / i) {
      for (u64 j = i * i; j <= limit; j += i) composite[j] = true;
    }
  }
  return primes;
}

std::vector<u64> prime_powers_up_to(u64 limit, unsigned k) {
  check_k(k);
  std::vector<u64> out;
  for (u64 p : primes_up_to(iroot(limit, k))) {
    out.push_back(*checked_pow(p, k));
  }
  return out;
}

int moebius(u64 n) {
  if (n == 0) throw std::invalid_argument("moebius: n must be positive");
  int sign = 1;
  for (u64 p = 2; p <= n / p; ++p) {
    if (n % p != 0) continue;
    n /= p;
    if (n % p == 0) return 0;
    sign = -sign;
  }
  if (n > 1) sign = -sign;
  return sign;
}

bool is_kfree(u64 n, unsigned k) {
  check_k(k);
  if (n == 0) throw std::invalid_argument("is_kfree: n must be positive");
  for (u64 p = 2; p <= n / p; ++p) {
    unsigned e = 0;
    while (n % p == 0) {
      n /= p;
      if (++e >= k) return false;
    }
  }
  return true;
}

std::vector<std::int8_t> moebius_table(u64 limit) {
  std::vector<std::int8_t> mu(limit + 1, 1);
  if (limit == 0) return mu;
  std::vector<u64> primes;
  std::vector<bool> composite(limit + 1, false);
  for (u64 i = 2; i <= limit; ++i) {
    if (!composite[i]) {
      primes.push_back(i);
      mu[i] = -1;
    }
    for (u64 p : primes) {
      if (p > limit / i) break;
      composite[i * p] = true;
      if (i % p == 0) {
        mu[i * p] = 0;
        break;
      }
      mu[i * p] = static_cast<std::int8_t>(-mu[i]);
    }
  }
  return mu;
}

void sieve_into(SieveSegment& seg, u64 lo, u64 hi, unsigned k, const std::vector<u64>& prime_powers) {
  if (lo < 1 || lo >= hi) throw std::invalid_argument("sieve range must satisfy 1 <= lo < hi");
  seg.lo_ = lo;
  seg.hi_ = hi;
  seg.k_ = k;
  const u64 size = hi - lo;
  seg.words_.assign((size + 63) / 64, ~std::uint64_t{0});
  if (size % 64 != 0) seg.words_.back() = (std::uint64_t{1} << (size % 64)) - 1;

  auto* words = seg.words_.data();
  for (u64 q : prime_powers) {
    if (q >= hi) break;
    u64 first = (lo + q - 1) / q * q;
    for (u64 i = first - lo; i < size; i += q) {
      words[i >> 6] &= ~(std::uint64_t{1} << (i & 63));
    }
  }
}

SieveSegment sieve_segment(u64 lo, u64 hi, unsigned k, const SieveOptions& options) {
  check_k(k);
  if (lo < 1 || lo >= hi) throw std::invalid_argument("sieve range must satisfy 1 <= lo < hi");
  if (hi - lo > options.max_range) {
    throw std::length_error("sieve range of " + std::to_string(hi - lo) +
                            " entries exceeds the configured maximum " +
                            std::to_string(options.max_range));
  }
  SieveSegment seg;
  sieve_into(seg, lo, hi, k, prime_powers_up_to(hi - 1, k));
  return seg;
}

u64 count_kfree(u64 Z, unsigned k, const SieveOptions& options) {
  check_k(k);
  check_argument(Z);
  const auto powers = prime_powers_up_to(Z, k);
  return sum_over_segments(Z, options, [&](u64 lo, u64 end, SieveSegment& buf) {
    sieve_into(buf, lo, end, k, powers);
    return buf.count();
  });
}

PairCount count_consecutive_kfree(u64 Z, unsigned k, const SieveOptions& options) {
  check_k(k);
  check_argument(Z);
  return PairCount{Z, k, pairs_up_to(Z, k, options)};
}

u64 count_star(u64 Z, unsigned k, const SieveOptions& options) {
  check_k(k);
  check_argument(Z);
  return pairs_up_to(2 * Z, k, options) - pairs_up_to(Z, k, options);
}

}  // namespace kfree
