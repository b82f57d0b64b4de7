#pragma once

// Executable consequences of the correctness argument. Each suite returns a
// report; `inject_fault` perturbs the suite so that it must fail.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "dqc/diqc.hpp"
#include "dqc/interval.hpp"
#include "dqc/metrics.hpp"
#include "dqc/oracle.hpp"
#include "dqc/qsim/amplitude_model.hpp"
#include "dqc/qsim/circuits.hpp"
#include "dqc/random.hpp"

namespace dqc {

struct CheckReport {
  explicit CheckReport(std::string n = {}) : name(std::move(n)) {}

  std::string name;
  bool passed = true;
  std::uint64_t cases = 0;
  std::uint64_t failures = 0;
  std::string first_failure;

  void fail(const std::string& what) {
    passed = false;
    if (failures++ == 0) first_failure = what;
  }
};

// Small-angle slack: arcsin(sin x) may round a few ulps below x.
inline constexpr double kRescaleSlack = 1e-12;

// 0 <= 2K theta/pi - 2K arcsin(sqrt(r) sin theta)/pi < 1 over odd K < 100,
// ten r values above the admission threshold and 1000 angles.
inline CheckReport check_rescale_shift(bool inject_fault = false) {
  CheckReport rep{"rescale-shift-grid"};
  for (std::uint64_t K = 1; K < 100; K += 2) {
    const double lo_r = admission_threshold(K) + 1e-6;
    for (int ri = 0; ri < 10; ++ri) {
      double r = lo_r + (1.0 - lo_r) * ri / 9.0;
      if (inject_fault) r = 0.25 * r;
      for (int ti = 0; ti < 1000; ++ti) {
        const double theta = kHalfPi * ti / 1000.0;
        const double scale = 2.0 * static_cast<double>(K) / std::numbers::pi;
        const double shift = scale * theta - scale * std::asin(std::sqrt(r) * std::sin(theta));
        ++rep.cases;
        if (!(shift >= -kRescaleSlack && shift < 1.0)) {
          std::ostringstream os;
          os << "K=" << K << " r=" << r << " theta=" << theta << " shift=" << shift;
          rep.fail(os.str());
        }
      }
    }
  }
  return rep;
}

// With a raw interval no wider than sin(pi/21) sin(8pi/21) in one quadrant at
// K_i, the search returns K >= 3 K_i whose (possibly rescaled) interval fits one quadrant.
inline CheckReport check_next_k_progress(std::uint64_t trials = 20000, std::uint64_t seed = 7, bool inject_fault = false) {
  CheckReport rep{"next-k-progress"};
  Rng rng(seed);
  const double width_cap = std::sin(std::numbers::pi / 21.0) * std::sin(8.0 * std::numbers::pi / 21.0);
  for (std::uint64_t t = 0; t < trials; ++t) {
    const std::uint64_t K = 2 * (rng.next_u64() % 200) + 1;
    const std::uint64_t R = rng.next_u64() % K;
    const double w = width_cap * (0.001 + 0.999 * rng.uniform()) * (inject_fault ? 6.0 : 1.0);
    const double a_lo = (1.0 - std::min(w, 1.0)) * rng.uniform();
    const double a_hi = std::min(1.0, a_lo + w);
    const AngleInterval theta = angles_from_quadrant(K, R, gamma_from_interval(a_lo, a_hi, R));
    if (!(theta.high > theta.low)) continue;
    ++rep.cases;
    const NextK next = find_next_k_diqc(theta, 3, K, false);
    const bool fits = next.found && same_quadrant(next.K, rescale_angle(theta.low, next.r), rescale_angle(theta.high, next.r));
    if (!next.found || next.K < 3 * K || !fits || !(next.r > admission_threshold(next.K) || next.r == 1.0)) {
      std::ostringstream os;
      os << "K_i=" << K << " R=" << R << " a=[" << a_lo << ", " << a_hi << "] found=" << next.found << " K=" << next.K;
      rep.fail(os.str());
    }
  }
  return rep;
}

// sum_{i >= i0} f(K_i) <= sum_{i=0}^{t-i0} f(K_max / q^i) for random K chains with K_i >= q K_{i-1}.
inline CheckReport check_geometric_sum(std::uint64_t trials = 5000, std::uint64_t seed = 11, bool inject_fault = false) {
  CheckReport rep{"geometric-sum"};
  Rng rng(seed);
  for (std::uint64_t t = 0; t < trials; ++t) {
    const unsigned q = (rng.next_u64() & 1) ? 3 : 2;
    const double eps = 1e-4 + 0.01 * rng.uniform();
    const double K_max = static_cast<double>(k_max_cap(eps));
    const double alpha = 0.01 + 0.49 * rng.uniform();
    std::vector<double> Ks;
    double K = 1.0 + 2.0 * static_cast<double>(rng.next_u64() % 3);
    while (K < K_max) {
      Ks.push_back(K);
      K = std::ceil(K * q * (1.0 + 0.5 * rng.uniform()));
      if (std::fmod(K, 2.0) == 0.0) K += 1.0;
    }
    if (Ks.size() < 2) continue;
    if (inject_fault) Ks.back() = K_max * 1.5;
    const double C = 2.0 * q * K_max / ((q - 1) * alpha);
    const std::vector<std::function<double(double)>> fs = {[](double x) { return x; },
                                                           [C](double x) { return x * std::log(C / x); }};
    for (std::size_t fi = 0; fi < fs.size(); ++fi) {
      const auto& f = fs[fi];
      for (std::size_t i0 = 1; i0 < Ks.size(); ++i0) {
        double lhs = 0.0;
        for (std::size_t i = i0; i < Ks.size(); ++i) lhs += f(Ks[i]);
        double rhs = 0.0;
        for (std::size_t i = 0; i + i0 < Ks.size(); ++i) rhs += f(K_max / std::pow(static_cast<double>(q), static_cast<double>(i)));
        ++rep.cases;
        if (lhs > rhs * (1.0 + 1e-12)) {
          std::ostringstream os;
          os << "q=" << q << " len=" << Ks.size() << " i0=" << i0 << " f#" << fi << " lhs=" << lhs << " rhs=" << rhs;
          rep.fail(os.str());
        }
      }
    }
  }
  return rep;
}

// Phase-estimation counting needs more gates than one node at K_max, for 4 <= n <= 30, k in {1, 2}.
inline CheckReport check_gate_comparison(bool inject_fault = false) {
  CheckReport rep{"gate-comparison"};
  for (unsigned k = 1; k <= 2; ++k) {
    for (unsigned n = 4; n <= 30; ++n) {
      ++rep.cases;
      const bool holds = node_beats_phase_counting(n, k);
      if (holds == inject_fault) rep.fail("n=" + std::to_string(n) + " k=" + std::to_string(k));
    }
  }
  return rep;
}

// Statevector P[11] against sin^2((2p+1) theta~) for m <= 6, every t, four r values, p <= 10.
inline CheckReport check_backend_equivalence(unsigned max_m = 6, std::uint64_t max_power = 10, double tol = 1e-10,
                                             bool inject_fault = false) {
  CheckReport rep{"backend-equivalence"};
  for (unsigned m = 1; m <= max_m; ++m) {
    const Index size = Index{1} << m;
    for (Index t = 0; t <= size; ++t) {
      SubOracle sub;
      sub.m = m;
      for (Index i = 0; i < t; ++i) sub.marked_local.push_back(i);
      for (double r : {0.25, 0.5, 0.8, 1.0}) {
        StateVector state(m + 2);
        apply_A(state, sub, r);
        for (std::uint64_t p = 0; p <= max_power; ++p) {
          if (p > 0) apply_Q(state, sub, r);
          const double r_model = inject_fault ? r * 0.999 : r;
          const double expect = prob11_analytic(AmplitudeModel{m, t, r_model}, p);
          const double got = prob11(state);
          ++rep.cases;
          if (std::abs(got - expect) > tol || std::abs(state.norm_squared() - 1.0) > tol) {
            std::ostringstream os;
            os << "m=" << m << " t=" << t << " r=" << r << " p=" << p << " sv=" << got << " model=" << expect;
            rep.fail(os.str());
          }
        }
      }
    }
  }
  return rep;
}

inline std::vector<CheckReport> run_all_checks(bool inject_fault = false) {
  return {check_rescale_shift(inject_fault), check_next_k_progress(20000, 7, inject_fault),
          check_geometric_sum(5000, 11, inject_fault), check_gate_comparison(inject_fault),
          check_backend_equivalence(6, 10, 1e-10, inject_fault)};
}

}  // namespace dqc
