#pragma once

// k-free indicators, Moebius values and consecutive k-free pair counts.
//
// Everything here is exact. The segmented counters sieve [1, Z + 1] (one
// element past Z, since the pair (Z, Z + 1) belongs to A_k(Z)) by striking
// multiples of p^k for every prime p with p^k <= Z + 1.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "kfree/numeric.hpp"

namespace kfree {

struct SieveOptions {
  /// Entries per segment.
  u64 segment_size = u64{1} << 22;
  /// Largest range a single sieve_segment call accepts.
  u64 max_range = u64{1} << 32;
  /// Worker threads for the counting routines; 0 means hardware concurrency.
  unsigned threads = 1;
};

/// Bit array of k-free flags over [lo, hi).
class SieveSegment {
 public:
  SieveSegment() = default;

  u64 lo() const { return lo_; }
  u64 hi() const { return hi_; }
  unsigned k() const { return k_; }
  u64 size() const { return hi_ - lo_; }

  /// True iff lo + i is k-free.
  bool operator[](u64 i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }
  bool contains_kfree(u64 n) const { return (*this)[n - lo_]; }

  /// Number of k-free entries.
  u64 count() const;
  /// Number of i in [0, size - 1) with both entries i and i + 1 k-free.
  u64 count_adjacent_pairs() const;

  const std::vector<std::uint64_t>& words() const { return words_; }

 private:
  friend void sieve_into(SieveSegment&, u64, u64, unsigned, const std::vector<u64>&);

  u64 lo_ = 1;
  u64 hi_ = 1;
  unsigned k_ = 2;
  std::vector<std::uint64_t> words_;
};

struct PairCount {
  u64 Z = 0;
  unsigned k = 2;
  u64 count = 0;
};

/// All primes <= limit, by a plain sieve of Eratosthenes.
std::vector<u64> primes_up_to(u64 limit);

/// The prime powers p^k with p^k <= limit, in increasing order of p.
std::vector<u64> prime_powers_up_to(u64 limit, unsigned k);

/// Moebius function by trial division.
int moebius(u64 n);
bool is_kfree(u64 n, unsigned k);

/// mu(n) for 0 <= n <= limit (entry 0 unused), via a linear sieve.
std::vector<std::int8_t> moebius_table(u64 limit);

SieveSegment sieve_segment(u64 lo, u64 hi, unsigned k, const SieveOptions& options = {});

/// Reuses `seg`'s storage. `prime_powers` must contain every p^k < hi.
void sieve_into(SieveSegment& seg, u64 lo, u64 hi, unsigned k,
                const std::vector<u64>& prime_powers);

u64 count_kfree(u64 Z, unsigned k, const SieveOptions& options = {});
PairCount count_consecutive_kfree(u64 Z, unsigned k, const SieveOptions& options = {});
/// A_k(2Z) - A_k(Z).
u64 count_star(u64 Z, unsigned k, const SieveOptions& options = {});

}  // namespace kfree
