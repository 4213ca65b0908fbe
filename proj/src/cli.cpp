#include "wgql/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>
#include <stdexcept>

#include "wgql/charsum.hpp"
#include "wgql/circle.hpp"
#include "wgql/integral.hpp"
#include "wgql/parallel.hpp"
#include "wgql/series.hpp"

namespace wgql::cli {
namespace {

std::string real(double v) {
  if (v == 0.0) v = 0.0;  // drop the sign of -0
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

class CsvWriter {
 public:
  CsvWriter(std::ostream& out, const std::string& command, std::initializer_list<const char*> columns) : out_(out) {
    out_ << kSchemaTag << ' ' << command << '\n';
    bool first = true;
    for (const char* c : columns) {
      out_ << (first ? "" : ",") << c;
      first = false;
    }
    out_ << '\n';
  }

  template <class... Fields>
  void row(const Fields&... fields) {
    bool first = true;
    ((out_ << (first ? "" : ",") << fields, first = false), ...);
    out_ << '\n';
  }

 private:
  std::ostream& out_;
};

std::string optional_real(const std::optional<double>& v) { return v ? real(*v) : std::string(); }

PrimeTable table_for(u64 n) { return PrimeTable(std::max<u64>(2, integer_root(n, 2))); }

const char* command_name(Command c) {
  switch (c) {
    case Command::sieve: return "sieve";
    case Command::series: return "series";
    case Command::p0: return "p0";
    case Command::predict: return "predict";
    case Command::count: return "count";
    case Command::scan: return "scan";
    case Command::arcs: return "arcs";
    case Command::charsum: return "charsum";
    case Command::exponent_check: return "exponent-check";
  }
  return "?";
}

i64 single_n(const RunConfig& c) {
  if (c.n.size() != 1) throw std::domain_error("exactly one --n is required");
  return c.n.front();
}

void run_sieve(const RunConfig& c, std::ostream& out) {
  const PrimeTable table(c.limit);
  CsvWriter csv(out, "sieve", {"p", "von_mangoldt"});
  for (u64 p : table.primes()) csv.row(p, real(table.von_mangoldt(p)));
}

void run_series(const RunConfig& c, std::ostream& out) {
  const i64 N = single_n(c);
  const u64 P = c.p_limit ? c.p_limit : 200;
  const auto profile = series_profile(N, P);
  CsvWriter csv(out, "series", {"q", "a_value", "partial_sum", "s_factor", "product"});
  std::map<u64, double> factors;
  for (const auto& f : profile.s_factors) factors[f.prime] = f.value;
  double partial = 0.0, product = 1.0;
  for (u64 q = 1; q <= P; ++q) {
    partial += profile.a_values[q];
    const auto it = factors.find(q);
    if (it != factors.end()) {
      product *= it->second;
      csv.row(q, real(profile.a_values[q]), real(partial), real(it->second), real(product));
    } else {
      csv.row(q, real(profile.a_values[q]), real(partial), "", real(product));
    }
  }
}

void run_p0(const RunConfig& c, std::ostream& out) {
  const i64 x = static_cast<i64>(c.x);
  const std::string method = c.mode.empty() ? (x <= kMaxExactP0 ? "exact" : "continuous") : c.mode;
  CsvWriter csv(out, "p0", {"N", "x", "method", "p0", "p0_over_x_mu", "error_estimate"});
  const double x_mu = std::pow(static_cast<double>(x), kMu.to_double());
  if (method == "exact") {
    const SingularIntegralTable table(x);
    for (i64 N : c.n) {
      const double v = table(N);
      csv.row(N, x, method, real(v), real(v / x_mu), real(0.0));
    }
  } else if (method == "continuous") {
    for (i64 N : c.n) {
      const auto q = p0_continuous(N, x);
      if (!q.converged) throw std::runtime_error("p0: quadrature did not converge, error " + real(q.error));
      csv.row(N, x, method, real(q.value), real(q.value / x_mu), real(q.error));
    }
  } else {
    throw std::domain_error("p0: --mode must be exact or continuous");
  }
}

void run_predict(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const u64 P = c.p_limit ? c.p_limit : default_prediction_limit(c.x);
  const auto table = table_for(c.x);
  err << "predict: x = " << c.x << ", sample = " << c.sample << ", P = " << P << '\n';
  const auto summary = c.n.empty() ? predict_vs_actual(c.x, c.sample, P, table, c.seed)
                                   : predict_at(c.x, c.n, P, table);
  CsvWriter csv(out, "predict", {"N", "weighted_count", "p0", "series_product", "main_term", "ratio"});
  for (const auto& r : summary.rows)
    csv.row(r.N, real(r.weighted_count), real(r.p0), real(r.series_product), real(r.main_term),
            optional_real(r.ratio));
  err << "predict: ratios used " << summary.used << ", min " << real(summary.min) << ", median "
      << real(summary.median) << ", max " << real(summary.max) << ", mean " << real(summary.mean) << '\n';
}

void run_count(const RunConfig& c, std::ostream& out) {
  if (c.n.empty()) throw std::domain_error("count: at least one --n is required");
  u64 top = c.x;
  for (i64 N : c.n) top = std::max<u64>(top, static_cast<u64>(std::max<i64>(N, 0)));
  const auto table = table_for(top);
  CsvWriter csv(out, "count",
                {"N", "x", "weighted_count", "unweighted_count", "unconstrained_count", "witness_p2", "witness_p3",
                 "witness_p4", "witness_p5"});
  for (i64 N : c.n) {
    const auto r = r_exact(N, c.x, table);
    if (r.witness) {
      const auto& w = *r.witness;
      csv.row(N, c.x, real(r.weighted_count), r.unweighted_count, r.unconstrained_count, w[0], w[1], w[2], w[3]);
    } else {
      csv.row(N, c.x, real(r.weighted_count), r.unweighted_count, r.unconstrained_count, "", "", "", "");
    }
  }
}

void run_scan(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const std::string mode = c.mode.empty() ? "unconstrained" : c.mode;
  ScanMode scan_mode;
  u64 window = 0;
  if (mode == "unconstrained") {
    scan_mode = ScanMode::unconstrained;
  } else if (mode == "constrained") {
    scan_mode = ScanMode::constrained;
    window = c.x;
  } else {
    throw std::domain_error("scan: --mode must be unconstrained or constrained");
  }
  const u64 x_max = c.limit;
  const auto table = table_for(std::max(x_max, window));
  const auto scan = scan_exceptional(x_max, scan_mode, table, window);
  CsvWriter csv(out, "scan", {"N", "mode", "witness_p2", "witness_p3", "witness_p4", "witness_p5"});
  if (!c.all) {
    for (u64 N : scan.exceptional) csv.row(N, mode, "", "", "", "");
  } else {
    std::size_t next = 0;
    for (u64 N = 2; N <= x_max; N += 2) {
      if (next < scan.exceptional.size() && scan.exceptional[next] == N) {
        ++next;
        csv.row(N, mode, "", "", "", "");
        continue;
      }
      std::optional<PrimeQuadruple> w;
      if (scan_mode == ScanMode::unconstrained) {
        w = smallest_witness(static_cast<i64>(N), table);
      } else {
        // smallest windowed prime witness
        const std::array<PowerWindow, 4> win{power_window(2, window), power_window(3, window),
                                             power_window(4, window), power_window(5, window)};
        for (u64 p2 = win[0].n_min; p2 <= win[0].n_max && !w; ++p2) {
          if (!table.is_prime(p2) || p2 * p2 >= N) continue;
          for (u64 p3 = win[1].n_min; p3 <= win[1].n_max && !w; ++p3) {
            if (!table.is_prime(p3)) continue;
            for (u64 p4 = win[2].n_min; p4 <= win[2].n_max && !w; ++p4) {
              if (!table.is_prime(p4)) continue;
              const u64 used = p2 * p2 + p3 * p3 * p3 + p4 * p4 * p4 * p4;
              if (used >= N) break;
              const u64 p5 = integer_root(N - used, 5);
              if (win[3].contains(p5) && table.is_prime(p5) && used + p5 * p5 * p5 * p5 * p5 == N)
                w = PrimeQuadruple{p2, p3, p4, p5};
            }
          }
        }
      }
      if (w)
        csv.row(N, mode, (*w)[0], (*w)[1], (*w)[2], (*w)[3]);
      else
        csv.row(N, mode, "", "", "", "");
    }
  }
  err << "scan: " << scan.exceptional.size() << " exceptional even N <= " << x_max << '\n';
}

void run_arcs(const RunConfig& c, std::ostream& out) {
  const u64 P = c.p_limit ? c.p_limit : 3;
  const u64 Q = c.q_grid ? c.q_grid : 2 * P * P + 1;
  const auto partition = arc_partition(P, Q, c.diagnostic);
  CsvWriter csv(out, "arcs", {"a", "q", "center", "half_width"});
  for (const auto& arc : partition.arcs)
    csv.row(arc.a, arc.q, real(arc.center.to_double()), real(arc.half_width.to_double()));
}

void run_charsum(const RunConfig& c, std::ostream& out) {
  const CharacterTable table(c.modulus);
  CsvWriter csv(out, "charsum", {"index", "conductor", "is_principal", "is_primitive", "re", "im"});
  for (std::size_t i = 0; i < table.size(); ++i) {
    const auto chi = table.character(i);
    const cplx v = ck_sum_twisted(c.k, c.a, chi);
    csv.row(i, chi.conductor, chi.is_principal ? 1 : 0, chi.is_primitive ? 1 : 0, real(v.real()), real(v.imag()));
  }
}

void dispatch(const RunConfig& c, std::ostream& out, std::ostream& err) {
  switch (c.command) {
    case Command::sieve: return run_sieve(c, out);
    case Command::series: return run_series(c, out);
    case Command::p0: return run_p0(c, out);
    case Command::predict: return run_predict(c, out, err);
    case Command::count: return run_count(c, out);
    case Command::scan: return run_scan(c, out, err);
    case Command::arcs: return run_arcs(c, out);
    case Command::charsum: return run_charsum(c, out);
    case Command::exponent_check: out << exponent_check() << '\n'; return;
  }
}

}  // namespace

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  set_thread_count(config.threads);
  try {
    if (config.output_path.empty() || config.output_path == "-" || config.command == Command::exponent_check) {
      dispatch(config, out, err);
      out.flush();
    } else {
      std::ostringstream buffer;
      dispatch(config, buffer, err);
      std::ofstream file(config.output_path, std::ios::binary);
      if (!file) throw std::runtime_error("cannot open " + config.output_path);
      file << buffer.str();
      if (!file) throw std::runtime_error("write failed for " + config.output_path);
    }
  } catch (const std::exception& e) {
    err << "error: " << command_name(config.command) << ": " << e.what() << '\n';
    return 1;
  }
  return 0;
}

int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Circle-method numerics for N = p2^2 + p3^3 + p4^4 + p5^5", "wgql"};
  app.require_subcommand(1);
  RunConfig config;
  unsigned threads = 0;
  app.add_option("--threads", threads, "worker threads (0 = hardware)");

  auto out_opt = [&](CLI::App* sub) { sub->add_option("--out", config.output_path, "output CSV path, - for stdout"); };

  auto* sieve = app.add_subcommand("sieve", "primes and von Mangoldt weights");
  sieve->add_option("--limit", config.limit, "inclusive limit")->required();
  out_opt(sieve);

  auto* series = app.add_subcommand("series", "A(q, N), s(p, N), partial sum and product");
  series->add_option("--n", config.n, "N")->required()->expected(1);
  series->add_option("--plimit", config.p_limit, "truncation P (default 200)");
  out_opt(series);

  auto* p0 = app.add_subcommand("p0", "singular integral P0(N, x)");
  p0->add_option("--n", config.n, "N (repeatable)")->required();
  p0->add_option("--x", config.x, "window parameter x")->required();
  p0->add_option("--mode", config.mode, "exact or continuous")->check(CLI::IsMember({"exact", "continuous"}));
  out_opt(p0);

  auto* predict = app.add_subcommand("predict", "R(N) against the main term on sampled even N");
  predict->add_option("--x", config.x, "window parameter x")->required();
  predict->add_option("--sample", config.sample, "number of even N in (x/2, x]");
  predict->add_option("--n", config.n, "explicit N instead of sampling");
  predict->add_option("--plimit", config.p_limit, "series truncation P (default min(200, x^(13/180)))");
  predict->add_option("--seed", config.seed, "sampling seed");
  out_opt(predict);

  auto* count = app.add_subcommand("count", "exact representation counts for given N");
  count->add_option("--n", config.n, "N (repeatable)")->required();
  count->add_option("--x", config.x, "window parameter x")->required();
  out_opt(count);

  auto* scan = app.add_subcommand("scan", "exceptional even N");
  scan->add_option("--xmax", config.limit, "largest N scanned")->required();
  scan->add_option("--mode", config.mode, "unconstrained or constrained")
      ->check(CLI::IsMember({"unconstrained", "constrained"}));
  scan->add_option("--x", config.x, "window parameter for constrained mode");
  scan->add_flag("--all", config.all, "also list representable N with witnesses");
  out_opt(scan);

  auto* arcs = app.add_subcommand("arcs", "major arc partition");
  arcs->add_option("--plimit", config.p_limit, "largest denominator P")->required();
  arcs->add_option("--qgrid", config.q_grid, "arc scale Q (default 2P^2 + 1)");
  arcs->add_flag("--diagnostic", config.diagnostic, "allow overlapping arcs");
  out_opt(arcs);

  auto* charsum = app.add_subcommand("charsum", "C_k(a, chi) over all characters mod q");
  charsum->add_option("--q", config.modulus, "modulus")->required();
  charsum->add_option("--k", config.k, "exponent in {2,3,4,5}")->check(CLI::Range(2u, 5u));
  charsum->add_option("--a", config.a, "frequency a");
  out_opt(charsum);

  auto* exponent = app.add_subcommand("exponent-check", "audit of the exceptional-set exponent");

  const std::map<CLI::App*, Command> commands{
      {sieve, Command::sieve}, {series, Command::series},   {p0, Command::p0},
      {predict, Command::predict}, {count, Command::count}, {scan, Command::scan},
      {arcs, Command::arcs},   {charsum, Command::charsum}, {exponent, Command::exponent_check}};

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  if (!reversed.empty()) reversed.pop_back();  // program name
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n' << app.help();
    return 2;
  }
  for (const auto& [sub, cmd] : commands)
    if (sub->parsed()) config.command = cmd;
  config.threads = threads;
  return run(config, out, err);
}

int main_entry(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return main_entry(args, std::cout, std::cerr);
}

}  // namespace wgql::cli
