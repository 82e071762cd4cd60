#include <cstdio>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "kfree/harness.hpp"

using namespace kfree;

namespace {

struct Global {
  std::string format = "csv";
  std::string out = "-";
  unsigned threads = 1;
};

void write(const Table& table, const Global& g) {
  const Format f = parse_format(g.format);
  if (g.out == "-") {
    std::cout << render(table, f);
  } else {
    emit(table, f, g.out);
  }
}

Rational parse_q(const std::string& text, const char* name) {
  try {
    return parse_rational(text);
  } catch (const std::exception&) {
    throw CLI::ValidationError(std::string("--") + name, "expected an integer, decimal or p/q, got '" + text + "'");
  }
}

Table count_table(u64 Z, unsigned k, const SieveOptions& opt) {
  Table t;
  t.columns = {"Z", "k", "A", "A_star"};
  t.rows.push_back({Cell{Z}, Cell{u64{k}}, Cell{count_consecutive_kfree(Z, k, opt).count},
                    Cell{count_star(Z, k, opt)}});
  return t;
}

Table constant_table(unsigned k, u64 cutoff, int digits) {
  const Enclosure e = euler_product_ck(k, cutoff, digits);
  Table t;
  t.columns = {"k", "cutoff", "digits", "lower", "upper", "width"};
  t.rows.push_back({Cell{u64{k}}, Cell{cutoff}, Cell{i64{digits}}, Cell{e.lower.to_string()},
                    Cell{e.upper.to_string()}, Cell{e.width().to_string()}});
  return t;
}

Table dioph_table(const Box& box, bool list) {
  Table t;
  if (!list) {
    t.columns = {"k", "X", "Y", "Z", "sign", "N"};
    t.rows.push_back({Cell{u64{box.k}}, Cell{to_string(box.X)}, Cell{to_string(box.Y)}, Cell{box.Z},
                      Cell{i64{box.sign}}, Cell{count_N(box)}});
    return t;
  }
  t.columns = {"a", "b", "x", "y"};
  for (const auto& s : enumerate_solutions(box)) t.rows.push_back({Cell{s.a}, Cell{s.b}, Cell{s.x}, Cell{s.y}});
  t.summary = {{"k", Cell{u64{box.k}}}, {"X", Cell{to_string(box.X)}}, {"Y", Cell{to_string(box.Y)}},
               {"Z", Cell{box.Z}},      {"sign", Cell{i64{box.sign}}}, {"N", Cell{u64{t.rows.size()}}}};
  return t;
}

Table lattice_table(u64 M, const Rational& X, const Rational& Y) {
  Table t;
  t.columns = {"z", "e1_x", "e1_y", "e2_x", "e2_y", "norm1_sq", "norm2_sq", "L1", "L2"};
  for (const auto& spec : cover_intervals(X, Y, M)) {
    const ReducedBasis b = gauss_reduce(make_lattice(spec));
    t.rows.push_back({Cell{spec.z}, Cell{b.e1[0]}, Cell{b.e1[1]}, Cell{b.e2[0]}, Cell{b.e2[1]},
                      Cell{to_string(b.norm1_sq)}, Cell{to_string(b.norm2_sq)}, Cell{to_string(b.L1)},
                      Cell{to_string(b.L2)}});
  }
  t.summary = {{"M", Cell{M}}, {"X", Cell{to_string(X)}}, {"Y", Cell{to_string(Y)}},
               {"intervals", Cell{u64{t.rows.size()}}}};
  return t;
}

Table maxima_table(const Rational& w) {
  Table t = to_table(maximize_bilinear(Objective::Phi, w));
  const Table psi = to_table(maximize_bilinear(Objective::Psi, w));
  t.rows.insert(t.rows.end(), psi.rows.begin(), psi.rows.end());
  t.summary = {{"w", Cell{to_string(w)}}};
  return t;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Consecutive k-free integers: counts, constants and the determinant method"};
  app.require_subcommand(1);
  app.fallthrough();

  Global g;
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--out", g.out, "Output file, '-' for stdout");
  app.add_option("--threads", g.threads, "Worker threads for sieving")->check(CLI::Range(1u, 1024u));

  unsigned k = 2;
  u64 Z = 0;
  std::string xs, ys, ws, delta_s = "1/10";

  auto* count = app.add_subcommand("count", "A_k(Z) and A*_k(Z)");
  u64 segment = SieveOptions{}.segment_size;
  count->add_option("--k", k)->required()->check(CLI::Range(2u, 64u));
  count->add_option("--z", Z)->required();
  count->add_option("--segment-size", segment)->check(CLI::PositiveNumber);

  auto* constant = app.add_subcommand("constant", "Rigorous enclosure of c_k");
  u64 cutoff = 1000000;
  int digits = Decimal::kDefaultDigits;
  constant->add_option("--k", k)->required()->check(CLI::Range(2u, 64u));
  constant->add_option("--cutoff", cutoff)->required()->check(CLI::Range(u64{2}, u64{1} << 40));
  constant->add_option("--digits", digits)->required()->check(CLI::Range(40, 10000));

  auto* dioph = app.add_subcommand("dioph", "Solutions of a x^k - b y^k = sign in a box");
  int sign = 1;
  bool list = false;
  dioph->add_option("--k", k)->required()->check(CLI::Range(2u, 64u));
  dioph->add_option("--x", xs)->required();
  dioph->add_option("--y", ys)->required();
  dioph->add_option("--z", Z)->required();
  dioph->add_option("--sign", sign)->check(CLI::IsMember({1, -1}));
  dioph->add_flag("--list", list, "List every solution");

  auto* lattice = app.add_subcommand("lattice", "Reduced interval lattices, or the shortest-vector report");
  u64 M = 1;
  bool histogram = false;
  lattice->add_option("--m", M)->required()->check(CLI::PositiveNumber);
  lattice->add_option("--x", xs)->required();
  lattice->add_option("--y", ys)->required();
  lattice->add_flag("--histogram", histogram, "Bucket shortest-vector lengths and compare with Y/L + XY/L^2");

  auto* pipeline = app.add_subcommand("pipeline", "Determinant method on one box");
  unsigned d = 2;
  pipeline->add_option("--k", k)->required()->check(CLI::Range(2u, 64u));
  pipeline->add_option("--x", xs)->required();
  pipeline->add_option("--y", ys)->required();
  pipeline->add_option("--z", Z)->required();
  pipeline->add_option("--d", d)->check(CLI::Range(1u, 6u));
  pipeline->add_option("--delta", delta_s);

  auto* exponent = app.add_subcommand("exponent", "Maxima of Phi and Psi, or the exponent comparison for k");
  auto* w_opt = exponent->add_option("--w", ws, "Region parameter (default 14/9)");
  exponent->add_option("--k", k, "Print the comparison table for this k")->check(CLI::Range(2u, 64u))->excludes(w_opt);

  auto* scan = app.add_subcommand("scan", "E = A_k(Z) - c_k Z on a geometric grid");
  u64 zmin = 0, zmax = 0;
  unsigned points = 0;
  u64 scan_cutoff = ScanOptions{}.cutoff;
  scan->add_option("--k", k)->required()->check(CLI::Range(2u, 64u));
  scan->add_option("--z-min", zmin)->required();
  scan->add_option("--z-max", zmax)->required();
  scan->add_option("--points", points, "Grid size; 0 gives the dyadic grid")->required();
  scan->add_option("--cutoff", scan_cutoff, "Prime cutoff for the c_k enclosure")->check(CLI::Range(u64{2}, u64{1} << 40));

  CLI11_PARSE(app, argc, argv);

  try {
    SieveOptions sieve;
    sieve.threads = g.threads;
    if (count->parsed()) {
      sieve.segment_size = segment;
      write(count_table(Z, k, sieve), g);
    } else if (constant->parsed()) {
      write(constant_table(k, cutoff, digits), g);
    } else if (dioph->parsed()) {
      const Box box{parse_q(xs, "x"), parse_q(ys, "y"), Z, k, sign};
      box.validate();
      write(dioph_table(box, list), g);
    } else if (lattice->parsed()) {
      const Rational X = parse_q(xs, "x"), Y = parse_q(ys, "y");
      write(histogram ? to_table(verify_lemma3(X, Y, M)) : lattice_table(M, X, Y), g);
    } else if (pipeline->parsed()) {
      const Box box{parse_q(xs, "x"), parse_q(ys, "y"), Z, k, 1};
      write(to_table(run_pipeline(box, d, parse_q(delta_s, "delta"))), g);
    } else if (exponent->parsed()) {
      if (exponent->count("--k") > 0) {
        write(to_table(theorem_exponent(k)), g);
      } else {
        write(maxima_table(ws.empty() ? ratio(BigInt(14), BigInt(9)) : parse_q(ws, "w")), g);
      }
    } else if (scan->parsed()) {
      ScanOptions opt;
      opt.cutoff = scan_cutoff;
      opt.sieve = sieve;
      write(to_table(scan_error(k, zmin, zmax, points, opt)), g);
    }
  } catch (const CLI::Error& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "kfree: %s\n", e.what());
    return 1;
  }
  return 0;
}
