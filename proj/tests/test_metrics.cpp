#include <gtest/gtest.h>

#include "oracles.hpp"
#include "qcsim/metrics.hpp"

using namespace qcsim;

namespace {

Circuit gen(Family f, int n, std::optional<std::uint64_t> seed = std::nullopt) {
  GeneratorSpec s;
  s.family = f;
  s.n = n;
  s.seed = seed;
  return generate(s);
}

}  // namespace

TEST(Metrics, AgreeWithFirstPrinciplesOnAllFamilies) {
  for (Family f : kAllFamilies)
    for (int n : {2, 3, 5, 8, 12})
      for (std::uint64_t seed : {1u, 2u}) {
        const auto c = gen(f, n, f == Family::Random || f == Family::HiddenShift || f == Family::BernsteinVazirani
                                     ? std::optional<std::uint64_t>(seed)
                                     : std::nullopt);
        const auto r = compute_all(c);
        SCOPED_TRACE(std::string(family_name(f)) + " n=" + std::to_string(n));
        EXPECT_NEAR(*r.program_communication, oracle::program_communication(c), 1e-12);
        EXPECT_EQ(r.depth, oracle::depth(c));
        EXPECT_NEAR(*r.parallelism, oracle::parallelism(c), 1e-12);
        EXPECT_NEAR(*r.entanglement_variance, oracle::entanglement_variance(c), 1e-12);
        EXPECT_NEAR(*r.entanglement_ratio,
                    static_cast<double>(c.multi_qubit_count()) / static_cast<double>(c.gate_count()), 1e-15);
        if (c.multi_qubit_count() > 0) {
          EXPECT_NEAR(*r.critical_depth, oracle::critical_depth(c), 1e-12);
        } else {
          EXPECT_FALSE(r.critical_depth.has_value());
        }
      }
}

TEST(Metrics, QaoaIsFullyConnectedAndBalanced) {
  for (int n = 2; n <= 32; ++n) {
    const auto r = compute_all(gen(Family::QAOA, n));
    EXPECT_EQ(*r.program_communication, 1.0);
    EXPECT_EQ(*r.entanglement_variance, 0.0);
  }
}

TEST(Metrics, ChainFamiliesHaveUnitCriticalDepth) {
  for (Family f : {Family::VQE, Family::HamiltonianSim, Family::BernsteinVazirani})
    for (int n = 3; n <= 32; ++n) EXPECT_EQ(critical_depth(gen(f, n)), 1.0) << family_name(f) << " n=" << n;
}

TEST(Metrics, BellCircuit) {
  const auto r = compute_all(bell_circuit());
  EXPECT_EQ(*r.program_communication, 1.0);
  EXPECT_EQ(*r.critical_depth, 1.0);
  EXPECT_EQ(*r.entanglement_ratio, 0.5);
  EXPECT_EQ(r.depth, 2u);
  EXPECT_EQ(*r.parallelism, 0.0);
}

TEST(Metrics, EmptyCircuitReportsAbsentMetrics) {
  const auto r = compute_all(Circuit(3));
  EXPECT_FALSE(r.complete());
  EXPECT_FALSE(r.critical_depth);
  EXPECT_FALSE(r.entanglement_ratio);
  EXPECT_FALSE(r.parallelism);
  EXPECT_FALSE(r.entanglement_variance);
  EXPECT_TRUE(r.absent_reasons.count("critical_depth"));
  EXPECT_EQ(*r.program_communication, 0.0);
}

TEST(Metrics, UndefinedCasesThrow) {
  EXPECT_THROW(program_communication(Circuit(1)), UndefinedMetricError);
  EXPECT_THROW(critical_depth(Circuit(2)), UndefinedMetricError);
  EXPECT_THROW(entanglement_ratio(Circuit(2)), UndefinedMetricError);
  EXPECT_THROW(parallelism(Circuit(2)), UndefinedMetricError);
}

TEST(Metrics, MeasureOpsAreIgnored) {
  auto c = bell_circuit();
  const auto before = compute_all(c);
  c.add(GateKind::Measure, {0});
  c.add(GateKind::Measure, {1});
  const auto after = compute_all(c);
  EXPECT_EQ(before.depth, after.depth);
  EXPECT_EQ(*before.parallelism, *after.parallelism);
}

TEST(Metrics, ParallelismIsClamped) {
  Circuit c(4);
  for (int q = 0; q < 4; ++q) c.add(GateKind::H, {q});
  EXPECT_EQ(parallelism(c), 1.0);
}

TEST(Metrics, EffectiveCountCollapsesLadders) {
  Circuit c(3);
  c.add(GateKind::CNOT, {0, 1});
  c.add(GateKind::RZ, {1}, 0.3);
  c.add(GateKind::CNOT, {0, 1});
  c.add(GateKind::CNOT, {1, 2});
  c.add(GateKind::CNOT, {0, 1});
  EXPECT_EQ(effective_multi_qubit_count(c), 3u);
  EXPECT_EQ(c.multi_qubit_count(), 4u);
}

TEST(Metrics, InteractionGraphMultiplicity) {
  const auto g = interaction_graph(gen(Family::QAOA, 5));
  EXPECT_EQ(g.num_edges(), 10u);
  for (const auto& [e, mult] : g.edge_multiplicity) EXPECT_EQ(mult, 2);
  for (int d : g.degrees()) EXPECT_EQ(d, 4);
}
