#include "kfree/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace kfree {

namespace {

using ordered_json = nlohmann::ordered_json;

Rational to_q(u64 n) { return Rational(BigInt(std::to_string(n))); }

std::string fmt_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

// ---------------------------------------------------------------------------
// Error scan

double ScanRow::E_mid() const { return 0.5 * (E_lo.to_double() + E_hi.to_double()); }

double ScanRow::E_half_width() const { return 0.5 * (E_hi - E_lo).to_double(); }

bool ScanRow::enclosure_too_wide() const {
  // Resolved only when the interval stays on one side of zero and is
  // narrower than the magnitude it brackets.
  const bool straddles = E_lo <= Decimal(E_lo.digits()) && E_hi >= Decimal(E_hi.digits());
  return straddles || 2 * E_half_width() >= std::fabs(E_mid());
}

std::vector<u64> geometric_grid(u64 Z_min, u64 Z_max, unsigned points) {
  if (Z_min == 0 || Z_min > Z_max) throw std::invalid_argument("geometric_grid: need 0 < Z_min <= Z_max");
  std::vector<u64> grid;
  if (Z_min == Z_max || points == 1) {
    grid.push_back(Z_min);
    return grid;
  }
  if (points == 0) {
    // Dyadic spacing.
    for (u64 z = Z_min; z < Z_max; z = z > Z_max / 2 ? Z_max : 2 * z) grid.push_back(z);
    grid.push_back(Z_max);
    return grid;
  }
  const long double lo = std::log(static_cast<long double>(Z_min));
  const long double hi = std::log(static_cast<long double>(Z_max));
  for (unsigned i = 0; i < points; ++i) {
    u64 z;
    if (i == 0) {
      z = Z_min;
    } else if (i + 1 == points) {
      z = Z_max;
    } else {
      const long double t = lo + (hi - lo) * i / (points - 1);
      z = static_cast<u64>(std::llround(std::exp(t)));
      z = std::clamp(z, Z_min, Z_max);
    }
    if (grid.empty() || z > grid.back()) grid.push_back(z);
  }
  return grid;
}

std::vector<ScanRow> scan_error(unsigned k, u64 Z_min, u64 Z_max, unsigned points,
                                const ScanOptions& options) {
  if (k < 2) throw std::invalid_argument("scan_error: k must be at least 2");
  if (Z_min < 10) throw std::invalid_argument("scan_error: Z_min must be at least 10");
  const std::vector<u64> grid = geometric_grid(Z_min, Z_max, points);
  const Enclosure ck = euler_product_ck(k, options.cutoff, options.digits);

  std::vector<ScanRow> rows;
  rows.reserve(grid.size());
  for (u64 Z : grid) {
    ScanRow r;
    r.Z = Z;
    r.k = k;
    r.A = count_consecutive_kfree(Z, k, options.sieve).count;
    const Decimal Zd = Decimal::from_integer(BigInt(std::to_string(Z)), options.digits);
    const Decimal Ad = Decimal::from_integer(BigInt(std::to_string(r.A)), options.digits);
    // Products with an integer are exact at this scale.
    r.ck_lo = ck.lower.multiply(Zd, Rounding::Down);
    r.ck_hi = ck.upper.multiply(Zd, Rounding::Up);
    r.E_lo = Ad - r.ck_hi;
    r.E_hi = Ad - r.ck_lo;
    const double mid = std::fabs(r.E_mid());
    r.log_ratio = mid > 0 && Z > 1 ? std::log(mid) / std::log(static_cast<double>(Z)) : 0.0;
    rows.push_back(std::move(r));
  }
  return rows;
}

double fit_exponent(const std::vector<ScanRow>& rows) {
  std::vector<std::pair<double, double>> pts;
  for (const auto& r : rows) {
    if (r.enclosure_too_wide() || r.Z < 2) continue;
    pts.emplace_back(std::log(static_cast<double>(r.Z)), std::log(std::fabs(r.E_mid())));
  }
  if (pts.size() < 3) {
    throw std::runtime_error("fit_exponent: " + std::to_string(pts.size()) +
                             " usable rows, need at least 3");
  }
  double sx = 0, sy = 0;
  for (const auto& [x, y] : pts) {
    sx += x;
    sy += y;
  }
  const double n = static_cast<double>(pts.size());
  const double mx = sx / n, my = sy / n;
  double sxx = 0, sxy = 0;
  for (const auto& [x, y] : pts) {
    sxx += (x - mx) * (x - mx);
    sxy += (x - mx) * (y - my);
  }
  if (sxx == 0) throw std::runtime_error("fit_exponent: all usable rows share one Z");
  return sxy / sxx;
}

// ---------------------------------------------------------------------------
// Pipeline

bool satisfies_assumptions(const Box& box) {
  const Rational big = std::max(box.X, box.Y);
  const unsigned k = box.k;
  // max(X, Y)^k <= 2^k * 2Z and (XY)^k >= Z
  if (pow(big, k) > pow(Rational(2), k) * 2 * to_q(box.Z)) return false;
  return pow(box.X * box.Y, k) >= to_q(box.Z);
}

PipelineReport run_pipeline(const Box& box, unsigned d, const Rational& delta,
                            const PipelineOptions& options) {
  box.validate();
  if (box.Z < 2) throw std::invalid_argument("run_pipeline: Z must be at least 2");
  if (d < 1) throw std::invalid_argument("run_pipeline: d must be at least 1");
  if (sgn(delta) <= 0) throw std::invalid_argument("run_pipeline: delta must be positive");
  if (!satisfies_assumptions(box)) {
    throw std::invalid_argument("run_pipeline: box violates max(X,Y) <= 2(2Z)^(1/k), XY >= Z^(1/k)");
  }

  PipelineReport rep;
  rep.requested = box;
  rep.swapped = box.Y < box.X;
  rep.box = rep.swapped ? box.swapped() : box;
  rep.delta = delta;
  const Box& w = rep.box;

  const BoxAnalysis analysis = analyze_box(w);
  rep.m_choice = choose_M(analysis, w.k, delta);
  const u64 cover_min = to_u64(ceil_of(2 * w.Y / w.X));
  rep.M = std::max<u64>({rep.m_choice.M, cover_min, 1});

  const std::vector<IntervalSpec> intervals = cover_intervals(w.X, w.Y, rep.M);
  rep.interval_count = intervals.size();

  // s = x/y lies in (z/M, (z+1)/M] exactly for z = ceil(M x / y) - 1.
  std::map<u64, std::vector<Quadruple>> by_z;
  for (const Quadruple& q : enumerate_solutions(w)) {
    const u64 z = to_u64(ceil_of(ratio(BigInt(std::to_string(rep.M)) * BigInt(std::to_string(q.x)),
                                       BigInt(std::to_string(q.y))))) - 1;
    by_z[z].push_back(q);
  }

  // Raise d until no populated interval has a full-rank evaluation matrix.
  const unsigned d_cap = std::max(d, options.max_d);
  for (rep.d = d;; ++rep.d) {
    rep.e = choose_degrees(analysis, rep.d).second;
    const MonomialBasis basis = monomial_basis(rep.d, rep.e);
    rep.H = basis.H();
    rep.full_rank_intervals.clear();
    for (const auto& [z, sols] : by_z) {
      if (sols.size() < rep.H) continue;
      if (rank_and_nullvector(evaluation_matrix(sols, basis)).rank == rep.H) {
        rep.full_rank_intervals.push_back(z);
      }
    }
    if (rep.full_rank_intervals.empty() || rep.d >= d_cap) break;
  }

  const MonomialBasis basis = monomial_basis(rep.d, rep.e);
  for (const IntervalSpec& spec : intervals) {
    const ReducedBasis reduced = gauss_reduce(make_lattice(spec));
    const u64 n = count_NI(spec, w, reduced);
    rep.total += n;

    const auto it = by_z.find(spec.z);
    if (it == by_z.end() && n == 0) {
      ++rep.trivial_intervals;
      continue;
    }
    IntervalReport ir;
    ir.z = spec.z;
    ir.N_I = n;
    if (it != by_z.end()) {
      const std::vector<Quadruple>& sols = it->second;
      ir.solutions = sols.size();
      const RankResult rr = rank_and_nullvector(evaluation_matrix(sols, basis));
      ir.rank = rr.rank;
      if (rr.rank < rep.H) {
        const AuxPolynomial aux = find_aux_polynomial(sols, rep.d, rep.e, w.Z);
        ir.aux_height = aux.height;
        ir.kappa = aux.kappa_measured;
        ir.vanishing_verified = verify_vanishing(aux, sols);
      }
      if (sols.size() >= rep.H) {
        const std::vector<Quadruple> first(sols.begin(), sols.begin() + rep.H);
        ir.delta1 = delta1_check(first, basis);
      }
    }
    rep.intervals.push_back(std::move(ir));
  }

  rep.direct_count = count_N(w);
  rep.envelope = w.X.get_d() * std::sqrt(static_cast<double>(rep.M)) + w.Y.get_d();
  rep.envelope_ratio = rep.envelope > 0 ? static_cast<double>(rep.total) / rep.envelope : 0.0;
  return rep;
}

// ---------------------------------------------------------------------------
// Shortest-vector report

Lemma3Report verify_lemma3(const Rational& X, const Rational& Y, u64 M) {
  Lemma3Report rep;
  rep.X = X;
  rep.Y = Y;
  rep.M = M;
  rep.histogram = shortest_histogram(X, Y, M);
  for (const auto& [L, count] : rep.histogram.buckets) {
    Lemma3Row row;
    row.L = L;
    row.observed = count;
    row.bound = Rational(Y / L + X * Y / (L * L)).get_d();
    row.ratio = static_cast<double>(count) / row.bound;
    rep.max_ratio = std::max(rep.max_ratio, row.ratio);
    rep.rows.push_back(std::move(row));
  }
  // Y/(2 sqrt M) <= min L1  <=>  Y^2 <= 4 M min_L1^2
  const Rational& lo = rep.histogram.min_L1;
  const Rational& hi = rep.histogram.max_L1;
  rep.range_ok = rep.histogram.intervals > 0 && Y * Y <= 4 * to_q(M) * lo * lo && hi <= 4 * Y;
  return rep;
}

// ---------------------------------------------------------------------------
// Serialisation

Format parse_format(const std::string& name) {
  if (name == "csv") return Format::Csv;
  if (name == "json") return Format::Json;
  throw std::invalid_argument("unknown format '" + name + "' (expected csv or json)");
}

Table to_table(const std::vector<ScanRow>& rows) {
  Table t;
  t.columns = {"Z", "k", "A", "ck_lo", "ck_hi", "E_lo", "E_hi", "log_ratio"};
  for (const auto& r : rows) {
    t.rows.push_back({Cell{r.Z}, Cell{u64{r.k}}, Cell{r.A}, Cell{r.ck_lo.to_string()},
                      Cell{r.ck_hi.to_string()}, Cell{r.E_lo.to_string()}, Cell{r.E_hi.to_string()},
                      Cell{r.log_ratio}});
  }
  return t;
}

Table to_table(const PipelineReport& rep) {
  Table t;
  t.columns = {"z", "solutions", "rank", "aux_height", "kappa", "vanishing_verified", "delta1", "N_I"};
  for (const auto& ir : rep.intervals) {
    t.rows.push_back({Cell{ir.z}, Cell{u64{ir.solutions}}, Cell{u64{ir.rank}},
                      Cell{ir.aux_height ? ir.aux_height->get_str() : std::string()},
                      ir.kappa ? Cell{*ir.kappa} : Cell{std::string()}, Cell{ir.vanishing_verified},
                      Cell{ir.delta1 ? ir.delta1->get_str() : std::string()}, Cell{ir.N_I}});
  }
  std::string full_rank;
  for (u64 z : rep.full_rank_intervals) full_rank += (full_rank.empty() ? "" : " ") + std::to_string(z);
  t.summary = {
      {"k", Cell{u64{rep.box.k}}},
      {"X", Cell{to_string(rep.box.X)}},
      {"Y", Cell{to_string(rep.box.Y)}},
      {"Z", Cell{rep.box.Z}},
      {"sign", Cell{i64{rep.box.sign}}},
      {"swapped", Cell{rep.swapped}},
      {"d", Cell{u64{rep.d}}},
      {"e", Cell{u64{rep.e}}},
      {"H", Cell{u64{rep.H}}},
      {"delta", Cell{to_string(rep.delta)}},
      {"M_chosen", Cell{rep.m_choice.M}},
      {"M_clamped", Cell{rep.m_choice.clamped}},
      {"M", Cell{rep.M}},
      {"interval_count", Cell{rep.interval_count}},
      {"trivial_intervals", Cell{rep.trivial_intervals}},
      {"full_rank_intervals", Cell{full_rank}},
      {"total", Cell{rep.total}},
      {"direct_count", Cell{rep.direct_count}},
      {"partition_ok", Cell{rep.partition_ok()}},
      {"envelope", Cell{rep.envelope}},
      {"envelope_ratio", Cell{rep.envelope_ratio}},
  };
  return t;
}

Table to_table(const Lemma3Report& rep) {
  Table t;
  t.columns = {"L", "observed", "bound", "ratio"};
  for (const auto& r : rep.rows) {
    t.rows.push_back({Cell{to_string(r.L)}, Cell{r.observed}, Cell{r.bound}, Cell{r.ratio}});
  }
  t.summary = {
      {"X", Cell{to_string(rep.X)}},
      {"Y", Cell{to_string(rep.Y)}},
      {"M", Cell{rep.M}},
      {"intervals", Cell{rep.histogram.intervals}},
      {"min_L1", Cell{to_string(rep.histogram.min_L1)}},
      {"max_L1", Cell{to_string(rep.histogram.max_L1)}},
      {"range_ok", Cell{rep.range_ok}},
      {"max_ratio", Cell{rep.max_ratio}},
  };
  return t;
}

Table to_table(const ExponentTable& table) {
  Table t;
  t.columns = {"k", "label", "value", "exact"};
  for (const auto& r : table.rows) {
    t.rows.push_back({Cell{u64{table.k}}, Cell{r.label}, Cell{r.value},
                      Cell{r.exact ? to_string(*r.exact) : std::string()}});
  }
  t.summary = {{"new_is_smallest", Cell{table.new_is_smallest}}};
  return t;
}

Table to_table(const MaxResult& result) {
  Table t;
  t.columns = {"objective", "max_value", "u", "v"};
  for (const auto& p : result.argmax) {
    t.rows.push_back({Cell{to_string(result.which)}, Cell{to_string(result.max_value)},
                      Cell{to_string(p.u)}, Cell{to_string(p.v)}});
  }
  return t;
}

namespace {

std::string csv_field(const Cell& c) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, std::string>) {
          if (v.find_first_of(",\"\n") == std::string::npos) return v;
          std::string out = "\"";
          for (char ch : v) out += ch == '"' ? std::string("\"\"") : std::string(1, ch);
          return out + "\"";
        } else if constexpr (std::is_same_v<T, double>) {
          return fmt_double(v);
        } else if constexpr (std::is_same_v<T, bool>) {
          return v ? "true" : "false";
        } else {
          return std::to_string(v);
        }
      },
      c);
}

ordered_json json_value(const Cell& c) {
  return std::visit([](const auto& v) { return ordered_json(v); }, c);
}

}  // namespace

std::string render(const Table& table, Format format) {
  if (format == Format::Csv) {
    std::ostringstream out;
    for (std::size_t i = 0; i < table.columns.size(); ++i) out << (i ? "," : "") << table.columns[i];
    out << '\n';
    for (const auto& row : table.rows) {
      for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << csv_field(row[i]);
      out << '\n';
    }
    return out.str();
  }

  ordered_json rows = ordered_json::array();
  for (const auto& row : table.rows) {
    ordered_json obj = ordered_json::object();
    for (std::size_t i = 0; i < row.size() && i < table.columns.size(); ++i) {
      obj[table.columns[i]] = json_value(row[i]);
    }
    rows.push_back(std::move(obj));
  }
  if (table.summary.empty()) return rows.dump(2) + "\n";
  ordered_json doc = ordered_json::object();
  ordered_json summary = ordered_json::object();
  for (const auto& [key, value] : table.summary) summary[key] = json_value(value);
  doc["summary"] = std::move(summary);
  doc["rows"] = std::move(rows);
  return doc.dump(2) + "\n";
}

void emit(const Table& table, Format format, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << render(table, format);
  out.flush();
  if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

}  // namespace kfree
