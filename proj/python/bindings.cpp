#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "wgql/arith.hpp"
#include "wgql/charsum.hpp"
#include "wgql/circle.hpp"
#include "wgql/integral.hpp"
#include "wgql/parallel.hpp"
#include "wgql/series.hpp"

namespace py = pybind11;
using namespace wgql;

namespace {

PrimeTable table_for(u64 n) { return PrimeTable(std::max<u64>(2, integer_root(n, 2))); }

py::dict local_factor_dict(const LocalFactor& f) {
  py::dict d;
  d["prime"] = f.prime;
  d["value"] = f.value;
  d["depth"] = f.depth;
  d["stabilized"] = f.stabilized;
  d["lifted"] = f.lifted;
  d["obstruction"] = f.obstruction;
  d["approximations"] = f.approximations;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Prime-power representation numerics (C++ core)";

  m.def("set_thread_count", &set_thread_count, py::arg("count"));
  m.def("thread_count", &thread_count);

  py::class_<PrimeTable>(m, "PrimeTable")
      .def(py::init<u64>(), py::arg("limit"))
      .def_property_readonly("limit", &PrimeTable::limit)
      .def("primes", [](const PrimeTable& t) { return std::vector<u64>(t.primes().begin(), t.primes().end()); })
      .def("is_prime", &PrimeTable::is_prime)
      .def("von_mangoldt", &PrimeTable::von_mangoldt)
      .def("__len__", &PrimeTable::size);

  m.def("sieve_primes", [](u64 limit) {
    const auto t = sieve_primes(limit);
    return std::vector<u64>(t.primes().begin(), t.primes().end());
  });
  m.def("euler_phi", &euler_phi);
  m.def("moebius", &moebius);
  m.def("divisor_count", &divisor_count);
  m.def("lcm_list", [](const std::vector<u64>& v) { return lcm_list(v); });

  m.def("ck_sum", &ck_sum, py::arg("k"), py::arg("a"), py::arg("q"));
  m.def(
      "character_sums",
      [](u64 q, unsigned k, i64 a) {
        const CharacterTable table(q);
        py::list out;
        for (std::size_t i = 0; i < table.size(); ++i) {
          const auto chi = table.character(i);
          py::dict d;
          d["conductor"] = chi.conductor;
          d["principal"] = chi.is_principal;
          d["primitive"] = chi.is_primitive;
          d["value"] = ck_sum_twisted(k, a, chi);
          out.append(d);
        }
        return out;
      },
      py::arg("q"), py::arg("k"), py::arg("a"));

  m.def("local_count", &local_count, py::arg("p"), py::arg("alpha"), py::arg("N"));
  m.def("a_term", &a_term, py::arg("q"), py::arg("N"));
  m.def("s_factor", [](u64 p, i64 N) { return local_factor_dict(s_factor(p, N)); }, py::arg("p"), py::arg("N"));
  m.def(
      "series_profile",
      [](i64 N, u64 P) {
        const auto s = series_profile(N, P);
        py::dict d;
        d["N"] = s.N;
        d["P"] = s.q_limit;
        d["a_values"] = s.a_values;
        d["partial_sum"] = s.partial_sum;
        d["product"] = s.product;
        d["anomalous"] = s.anomalous;
        py::list tails;
        for (const auto& b : s.tail_blocks) tails.append(py::make_tuple(b.lower, b.abs_sum));
        d["tail_blocks"] = tails;
        return d;
      },
      py::arg("N"), py::arg("P"));

  m.def("p0_exact", [](i64 N, i64 x) { return p0_exact(N, x); }, py::arg("N"), py::arg("x"));
  m.def(
      "p0_continuous",
      [](i64 N, i64 x, double rel_tol) {
        const auto r = p0_continuous(N, x, rel_tol);
        return py::make_tuple(r.value, r.error, r.converged);
      },
      py::arg("N"), py::arg("x"), py::arg("rel_tol") = 1e-4);
  m.def(
      "main_term",
      [](i64 N, i64 x, u64 P) {
        const auto r = main_term(N, x, P);
        py::dict d;
        d["p0"] = r.p0;
        d["series_product"] = r.series_product;
        d["main_term"] = r.main_term;
        d["outside_window"] = r.outside_window;
        return d;
      },
      py::arg("N"), py::arg("x"), py::arg("P"));

  m.def(
      "r_exact",
      [](i64 N, u64 x) {
        const auto r = r_exact(N, x, table_for(std::max<u64>(x, static_cast<u64>(std::max<i64>(N, 0)))));
        py::dict d;
        d["weighted_count"] = r.weighted_count;
        d["unweighted_count"] = r.unweighted_count;
        d["unconstrained_count"] = r.unconstrained_count;
        d["witness"] = r.witness;
        return d;
      },
      py::arg("N"), py::arg("x"));
  m.def(
      "r_all", [](u64 x, bool weighted) {
        return r_all(x, table_for(x), weighted ? CountMode::weighted : CountMode::unweighted).values;
      },
      py::arg("x"), py::arg("weighted") = true);
  m.def(
      "discrete_circle", [](i64 N, u64 x, u64 M) { return discrete_circle(N, x, M, table_for(x)); }, py::arg("N"),
      py::arg("x"), py::arg("M"));
  m.def(
      "arc_partition",
      [](u64 P, u64 Q, bool allow_overlap) {
        std::vector<std::pair<u64, u64>> out;
        for (const auto& a : arc_partition(P, Q, allow_overlap).arcs) out.emplace_back(a.a, a.q);
        return out;
      },
      py::arg("P"), py::arg("Q"), py::arg("allow_overlap") = false);
  m.def(
      "classify_alpha",
      [](double alpha, u64 P, u64 Q) -> std::optional<std::pair<u64, u64>> {
        const auto loc = classify_alpha(alpha, arc_partition(P, Q, true));
        if (!loc.major) return std::nullopt;
        return std::make_pair(loc.a, loc.q);
      },
      py::arg("alpha"), py::arg("P"), py::arg("Q"));
  m.def(
      "scan_exceptional",
      [](u64 x_max, bool constrained, u64 window_x) {
        const u64 top = constrained ? std::max(x_max, window_x) : x_max;
        return scan_exceptional(x_max, constrained ? ScanMode::constrained : ScanMode::unconstrained, table_for(top),
                                window_x)
            .exceptional;
      },
      py::arg("x_max"), py::arg("constrained") = false, py::arg("window_x") = 0);
  m.def(
      "predict",
      [](u64 x, std::vector<i64> Ns, u64 P) {
        const auto s = predict_at(x, Ns, P, table_for(x));
        py::list rows;
        for (const auto& r : s.rows) {
          py::dict d;
          d["N"] = r.N;
          d["weighted_count"] = r.weighted_count;
          d["p0"] = r.p0;
          d["series_product"] = r.series_product;
          d["main_term"] = r.main_term;
          d["ratio"] = r.ratio;
          rows.append(d);
        }
        return rows;
      },
      py::arg("x"), py::arg("Ns"), py::arg("P"));
  m.def("sample_even", &sample_even, py::arg("x"), py::arg("count"), py::arg("seed"));
  m.def("exponent_check", [] {
    const auto r = exponent_check();
    return py::make_tuple(r.num(), r.den());
  });
}
