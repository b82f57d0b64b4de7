#pragma once

// JSON run summaries and CSV traces. Column headers carry units.

#include <json.hpp>
#include <ostream>
#include <span>
#include <string>

#include "dqc/applications.hpp"
#include "dqc/coordinator.hpp"
#include "dqc/diqc.hpp"
#include "dqc/io.hpp"
#include "dqc/metrics.hpp"
#include "dqc/miqae.hpp"
#include "dqc/property_checks.hpp"

namespace dqc {

using Json = nlohmann::ordered_json;

inline Json to_json(const ResourceCounters& c) {
  return {{"oracle_calls_paper", c.oracle_calls_paper},
          {"oracle_calls_physical", c.oracle_calls_physical},
          {"total_shots", c.total_shots},
          {"max_K", c.max_K},
          {"max_k", c.max_power()}};
}

inline Json to_json(const NodeResult& r) {
  return {{"node_id", r.node_id},
          {"m", r.m},
          {"epsilon_node", r.epsilon_node},
          {"alpha_node", r.alpha_node},
          {"seed", r.seed},
          {"status", to_string(r.status)},
          {"amplitude_interval", {r.interval.low, r.interval.high}},
          {"amplitude_estimate", r.amplitude_estimate},
          {"count_estimate", r.count_estimate},
          {"t_prime", r.t_prime},
          {"count_interval", {r.scaled_low, r.scaled_high}},
          {"counters", to_json(r.counters)}};
}

inline Json to_json(const AggregateResult& a) {
  Json nodes = Json::array();
  for (const auto& n : a.nodes) nodes.push_back(to_json(n.result));
  return {{"n", a.n},
          {"k", a.k},
          {"epsilon", a.epsilon},
          {"alpha", a.alpha},
          {"t_prime", a.t_prime},
          {"error_bound", a.error_bound},
          {"confidence", a.confidence},
          {"status", to_string(a.status)},
          {"totals", to_json(a.totals)},
          {"nodes", nodes}};
}

inline Json to_json(const CommunicationLedger& l) {
  return {{"qubits_per_A", l.qubits_per_A},
          {"A_invocations", l.A_invocations},
          {"total_qubits", l.total_qubits},
          {"classical_bits", l.classical_bits}};
}

inline Json to_json(const ApplicationResult& a) {
  Json nodes = Json::array();
  for (const auto& n : a.nodes) nodes.push_back(to_json(n.result));
  return {{"problem", to_string(a.problem)},
          {"n", a.n},
          {"k", a.k},
          {"estimate", a.estimate},
          {"scaled_estimate", a.scaled_estimate},
          {"error_bound", a.error_bound},
          {"confidence", a.confidence},
          {"status", to_string(a.status)},
          {"ledger", to_json(a.ledger)},
          {"communication_bound_qubits", a.communication_bound},
          {"totals", to_json(a.totals)},
          {"nodes", nodes}};
}

inline Json to_json(const CheckReport& r) {
  return {{"suite", r.name},
          {"passed", r.passed},
          {"cases", r.cases},
          {"failures", r.failures},
          {"first_failure", r.first_failure}};
}

inline Json to_json(const ResourceReport& r) {
  return {{"context", r.context},
          {"qubits", r.qubits},
          {"gate_count", r.gate_count.str()},
          {"max_Q_depth", r.max_Q_depth},
          {"query_bound", r.query_bound}};
}

// ---- CSV ----------------------------------------------------------------------

inline constexpr const char* kNodeTraceHeader =
    "run,node,round,K,quadrant_R,r,q,alpha_round,shots_cap,shots,hits,a_hat,raw_a_low,raw_a_high,"
    "theta_low_rad,theta_high_rad,a_low,a_high,a_width,backtracked,retried";

inline void write_node_trace(std::ostream& out, std::uint64_t run, std::uint64_t node, std::span<const RoundRecord> rounds) {
  for (const auto& r : rounds) {
    out << run << ',' << node << ',' << r.index << ',' << r.K << ',' << r.quadrant << ',' << format_number(r.r) << ','
        << r.q << ',' << format_number(r.alpha_round) << ',' << r.shots_cap << ',' << r.shots << ',' << r.hits << ','
        << format_number(r.a_hat) << ',' << format_number(r.raw.low) << ',' << format_number(r.raw.high) << ','
        << format_number(r.theta.low) << ',' << format_number(r.theta.high) << ','
        << format_number(r.amplitude_low()) << ',' << format_number(r.amplitude_high()) << ','
        << format_number(r.amplitude_width()) << ',' << (r.backtracked ? 1 : 0) << ',' << (r.retried ? 1 : 0) << '\n';
  }
}

inline constexpr const char* kMiqaeTraceHeader =
    "run,round,K,quadrant_R,alpha_round,shots_cap,shots,a_hat,raw_a_low,raw_a_high,theta_low_rad,theta_high_rad";

inline void write_miqae_trace(std::ostream& out, std::uint64_t run, std::span<const MiqaeRound> rounds) {
  for (const auto& r : rounds) {
    out << run << ',' << r.index << ',' << r.K << ',' << r.quadrant << ',' << format_number(r.alpha_round) << ','
        << r.shots_cap << ',' << r.shots << ',' << format_number(r.a_hat) << ',' << format_number(r.raw.low) << ','
        << format_number(r.raw.high) << ',' << format_number(r.theta.low) << ',' << format_number(r.theta.high) << '\n';
  }
}

}  // namespace dqc
