#pragma once

// Experiment orchestration: error scans against c_k Z, the end-to-end
// determinant-method pipeline on one box, the shortest-vector histogram
// report, and flat-file serialisation of all of them.

#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "kfree/constants.hpp"
#include "kfree/detmethod.hpp"
#include "kfree/dioph.hpp"
#include "kfree/exponents.hpp"
#include "kfree/lattice.hpp"
#include "kfree/numeric.hpp"
#include "kfree/sieve.hpp"

namespace kfree {

struct ScanRow {
  u64 Z = 0;
  unsigned k = 2;
  u64 A = 0;
  Decimal ck_lo, ck_hi;
  /// E = A - c_k Z as the interval [A - ck_hi Z, A - ck_lo Z].
  Decimal E_lo, E_hi;
  /// log|E_mid| / log Z.
  double log_ratio = 0;

  double E_mid() const;
  double E_half_width() const;
  /// The enclosure is too coarse to resolve |E|.
  bool enclosure_too_wide() const;
};

struct ScanOptions {
  /// Prime cutoff for the c_k enclosure.
  u64 cutoff = 10'000'000;
  int digits = Decimal::kDefaultDigits;
  SieveOptions sieve;
};

/// Geometric grid from Z_min to Z_max (both included), duplicates dropped.
std::vector<u64> geometric_grid(u64 Z_min, u64 Z_max, unsigned points);

/// Requires k >= 2 and Z_min >= 10.
std::vector<ScanRow> scan_error(unsigned k, u64 Z_min, u64 Z_max, unsigned points,
                                const ScanOptions& options = {});

/// Least-squares slope of log|E| against log Z over rows whose enclosure
/// resolves E. Throws std::runtime_error with fewer than three such rows.
double fit_exponent(const std::vector<ScanRow>& rows);

struct IntervalReport {
  u64 z = 0;
  std::size_t solutions = 0;
  std::size_t rank = 0;
  std::optional<BigInt> aux_height;
  std::optional<double> kappa;
  bool vanishing_verified = false;
  /// Delta_1 over the first H solutions, when J >= H.
  std::optional<BigInt> delta1;
  u64 N_I = 0;
};

struct PipelineReport {
  Box requested;
  /// The box actually analysed: `requested`, or its swap when Y < X.
  Box box;
  bool swapped = false;
  unsigned d = 2;
  unsigned e = 0;
  std::size_t H = 1;
  Rational delta;
  MChoice m_choice;
  /// M after raising it to the covering bound 2Y/X when needed.
  u64 M = 1;
  u64 interval_count = 0;
  /// Intervals with no solution and N_I = 0; not listed individually.
  u64 trivial_intervals = 0;
  std::vector<IntervalReport> intervals;
  /// z of intervals whose evaluation matrix still has rank H.
  std::vector<u64> full_rank_intervals;
  u64 total = 0;
  u64 direct_count = 0;
  /// X M^(1/2) + Y.
  double envelope = 0;
  double envelope_ratio = 0;

  bool partition_ok() const { return total == direct_count; }
};

struct PipelineOptions {
  unsigned max_d = 6;
};

/// Checks max(X, Y) <= 2 (2Z)^(1/k) and (XY)^k >= Z.
bool satisfies_assumptions(const Box& box);

PipelineReport run_pipeline(const Box& box, unsigned d = 2, const Rational& delta = ratio(1, 10),
                            const PipelineOptions& options = {});

struct Lemma3Row {
  Rational L;
  u64 observed = 0;
  /// Y/L + XY/L^2.
  double bound = 0;
  double ratio = 0;
};

struct Lemma3Report {
  Rational X, Y;
  u64 M = 1;
  ShortestHistogram histogram;
  std::vector<Lemma3Row> rows;
  /// Every L1 lies in [Y/(2 sqrt M), 4Y].
  bool range_ok = false;
  double max_ratio = 0;
};

Lemma3Report verify_lemma3(const Rational& X, const Rational& Y, u64 M);

// ---------------------------------------------------------------------------
// Serialisation

enum class Format { Csv, Json };
Format parse_format(const std::string& name);

using Cell = std::variant<std::string, i64, u64, double, bool>;

/// Column-ordered rows; JSON objects use the column names as keys.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  /// Extra key/value pairs. CSV drops them; JSON wraps {"summary", "rows"}.
  std::vector<std::pair<std::string, Cell>> summary;
};

Table to_table(const std::vector<ScanRow>& rows);
Table to_table(const PipelineReport& report);
Table to_table(const Lemma3Report& report);
Table to_table(const ExponentTable& table);
Table to_table(const MaxResult& result);

std::string render(const Table& table, Format format);
/// Writes to `path`; errors carry the path.
void emit(const Table& table, Format format, const std::string& path);

}  // namespace kfree
