#pragma once

// Backend recommendation from circuit metrics. Rules are tried in order and
// compare strictly:
//
//   R1  EV  > 0.2                                   statevector
//   R2  ER' > 0.5                                   statevector
//   R3  (PC > 0.9 and CD < 0.2) or (PC < 0.15 and CD > 0.9)   tensornet
//   R4  otherwise                                   either
//
// ER' is the entanglement ratio with back-to-back multi-qubit gates on the
// same qubit set counted once (CNOT-RZ-CNOT ladders collapse to one).

#include <cstdio>
#include <string>
#include <string_view>
#include <vector>

#include "qcsim/metrics.hpp"

namespace qcsim {

enum class Backend { StateVector, TensorNet, Either };
enum class DistributedBenefit { High, Low };
enum class PathfindingClass { PathfindingBound, ContractionBound, Unbounded, Unknown };

constexpr std::string_view backend_name(Backend b) noexcept {
  switch (b) {
    case Backend::StateVector: return "statevector";
    case Backend::TensorNet: return "tensornet";
    case Backend::Either: return "either";
  }
  return "?";
}

constexpr std::string_view benefit_name(DistributedBenefit b) noexcept {
  return b == DistributedBenefit::High ? "high" : "low";
}

constexpr std::string_view pathfinding_class_name(PathfindingClass c) noexcept {
  switch (c) {
    case PathfindingClass::PathfindingBound: return "pathfinding_bound";
    case PathfindingClass::ContractionBound: return "contraction_bound";
    case PathfindingClass::Unbounded: return "unbounded";
    case PathfindingClass::Unknown: return "unknown";
  }
  return "?";
}

struct AdvisorThresholds {
  static constexpr double kEntanglementVariance = 0.2;
  static constexpr double kEntanglementRatio = 0.5;
  static constexpr double kHighCommunication = 0.9;
  static constexpr double kLowCriticalDepth = 0.2;
  static constexpr double kLowCommunication = 0.15;
  static constexpr double kHighCriticalDepth = 0.9;
  static constexpr double kDistributedCommunication = 0.9;
  static constexpr double kUnboundedRatio = 0.9;
  static constexpr double kLightRatio = 0.4;
  static constexpr double kFlatCriticalDepth = 0.9;
};

struct Recommendation {
  Backend backend = Backend::Either;
  DistributedBenefit distributed_benefit = DistributedBenefit::Low;
  PathfindingClass pathfinding_class = PathfindingClass::Unknown;
  std::vector<std::string> rationale;
  MetricsReport metrics;
};

namespace advisor_detail {

inline std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

inline std::string cmp(std::string_view metric, double observed, std::string_view op, double threshold) {
  return std::string(metric) + "=" + num(observed) + " " + std::string(op) + " " + num(threshold);
}

}  // namespace advisor_detail

inline Recommendation recommend(const MetricsReport& report, [[maybe_unused]] int n) {
  using T = AdvisorThresholds;
  using advisor_detail::cmp;
  Recommendation rec;
  rec.metrics = report;

  const auto& ev = report.entanglement_variance;
  const auto& pc = report.program_communication;
  const auto& cd = report.critical_depth;
  const auto& er = report.entanglement_ratio;
  const auto er_eff = report.effective_entanglement_ratio ? report.effective_entanglement_ratio : er;

  if (!report.complete()) {
    std::string missing;
    for (const auto& [key, why] : report.absent_reasons) missing += (missing.empty() ? "" : ", ") + key;
    rec.rationale.push_back("R4: metrics absent (" + missing + "); no rule applied");
  } else if (*ev > T::kEntanglementVariance) {
    rec.backend = Backend::StateVector;
    rec.rationale.push_back("R1: " + cmp("EV", *ev, ">", T::kEntanglementVariance) + " -> statevector");
  } else if (*er_eff > T::kEntanglementRatio) {
    rec.backend = Backend::StateVector;
    rec.rationale.push_back("R2: " + cmp("ER'", *er_eff, ">", T::kEntanglementRatio) + " -> statevector");
  } else if (*pc > T::kHighCommunication && *cd < T::kLowCriticalDepth) {
    rec.backend = Backend::TensorNet;
    rec.rationale.push_back("R3: " + cmp("PC", *pc, ">", T::kHighCommunication) + " and " +
                            cmp("CD", *cd, "<", T::kLowCriticalDepth) + " -> tensornet");
  } else if (*pc < T::kLowCommunication && *cd > T::kHighCriticalDepth) {
    rec.backend = Backend::TensorNet;
    rec.rationale.push_back("R3: " + cmp("PC", *pc, "<", T::kLowCommunication) + " and " +
                            cmp("CD", *cd, ">", T::kHighCriticalDepth) + " -> tensornet");
  } else {
    rec.rationale.push_back("R4: no decisive rule (" + cmp("EV", *ev, "<=", T::kEntanglementVariance) + ", " +
                            cmp("ER'", *er_eff, "<=", T::kEntanglementRatio) + ", PC=" + advisor_detail::num(*pc) +
                            ", CD=" + advisor_detail::num(*cd) + ") -> either");
  }

  if (pc && *pc >= T::kDistributedCommunication) {
    rec.distributed_benefit = DistributedBenefit::High;
    rec.rationale.push_back("distributed: " + cmp("PC", *pc, ">=", T::kDistributedCommunication) + " -> high");
  } else if (pc) {
    rec.rationale.push_back("distributed: " + cmp("PC", *pc, "<", T::kDistributedCommunication) + " -> low");
  }

  if (er && *er >= T::kUnboundedRatio) {
    rec.pathfinding_class = PathfindingClass::Unbounded;
    rec.rationale.push_back("pathfinding: " + cmp("ER", *er, ">=", T::kUnboundedRatio) + " -> unbounded");
  } else if (er && cd && *er <= T::kLightRatio) {
    const bool flat = *cd >= T::kFlatCriticalDepth;
    rec.pathfinding_class = flat ? PathfindingClass::PathfindingBound : PathfindingClass::ContractionBound;
    rec.rationale.push_back("pathfinding: " + cmp("ER", *er, "<=", T::kLightRatio) + " and " +
                            cmp("CD", *cd, flat ? ">=" : "<", T::kFlatCriticalDepth) + " -> " +
                            std::string(pathfinding_class_name(rec.pathfinding_class)));
  }
  return rec;
}

inline Recommendation advise_circuit(const Circuit& c) { return recommend(compute_all(c), c.num_qubits()); }

}  // namespace qcsim
