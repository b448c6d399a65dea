#include <gtest/gtest.h>

#include "qcsim/advisor.hpp"
#include "qcsim/generators.hpp"

using namespace qcsim;

namespace {

MetricsReport report(double pc, double cd, double er, double p, double ev) {
  MetricsReport r;
  r.program_communication = pc;
  r.critical_depth = cd;
  r.entanglement_ratio = er;
  r.effective_entanglement_ratio = er;
  r.parallelism = p;
  r.entanglement_variance = ev;
  return r;
}

Recommendation advise(Family f, int n) {
  GeneratorSpec s;
  s.family = f;
  s.n = n;
  return advise_circuit(generate(s));
}

}  // namespace

TEST(Advisor, RuleOrder) {
  EXPECT_EQ(recommend(report(1.0, 0.1, 0.3, 0.5, 0.3), 10).backend, Backend::StateVector);
  EXPECT_EQ(recommend(report(1.0, 0.1, 0.6, 0.5, 0.1), 10).backend, Backend::StateVector);
  EXPECT_EQ(recommend(report(1.0, 0.1, 0.3, 0.5, 0.1), 10).backend, Backend::TensorNet);
  EXPECT_EQ(recommend(report(0.1, 0.95, 0.3, 0.5, 0.1), 10).backend, Backend::TensorNet);
  EXPECT_EQ(recommend(report(0.5, 0.2, 0.3, 0.5, 0.1), 10).backend, Backend::Either);
}

TEST(Advisor, BoundariesFallThrough) {
  EXPECT_EQ(recommend(report(0.5, 0.5, 0.3, 0.5, 0.2), 10).backend, Backend::Either);
  EXPECT_EQ(recommend(report(0.5, 0.5, 0.5, 0.5, 0.1), 10).backend, Backend::Either);
  EXPECT_EQ(recommend(report(0.9, 0.1, 0.3, 0.5, 0.1), 10).backend, Backend::Either);
  EXPECT_EQ(recommend(report(0.15, 0.95, 0.3, 0.5, 0.1), 10).backend, Backend::Either);
  EXPECT_EQ(recommend(report(0.9, 0.1, 0.3, 0.5, 0.1), 10).distributed_benefit, DistributedBenefit::High);
  EXPECT_EQ(recommend(report(0.89, 0.1, 0.3, 0.5, 0.1), 10).distributed_benefit, DistributedBenefit::Low);
}

TEST(Advisor, PathfindingClasses) {
  EXPECT_EQ(recommend(report(1, 0.1, 0.9, 0, 0), 8).pathfinding_class, PathfindingClass::Unbounded);
  EXPECT_EQ(recommend(report(0.1, 0.9, 0.4, 0, 0), 8).pathfinding_class, PathfindingClass::PathfindingBound);
  EXPECT_EQ(recommend(report(0.1, 0.5, 0.2, 0, 0), 8).pathfinding_class, PathfindingClass::ContractionBound);
  EXPECT_EQ(recommend(report(0.1, 0.5, 0.6, 0, 0), 8).pathfinding_class, PathfindingClass::Unknown);
}

TEST(Advisor, EffectiveRatioDrivesSecondRule) {
  auto r = report(1.0, 0.1, 0.64, 0.5, 0.0);
  r.effective_entanglement_ratio = 0.32;
  EXPECT_EQ(recommend(r, 32).backend, Backend::TensorNet);
}

TEST(Advisor, RationaleNamesMetricAndThreshold) {
  const auto rec = recommend(report(1.0, 0.1, 0.3, 0.5, 0.3), 10);
  ASSERT_FALSE(rec.rationale.empty());
  EXPECT_NE(rec.rationale[0].find("EV=0.3 > 0.2"), std::string::npos);
  for (const auto& line : rec.rationale) EXPECT_FALSE(line.empty());
}

TEST(Advisor, BellIsUndecided) {
  const auto rec = advise_circuit(bell_circuit());
  EXPECT_EQ(rec.backend, Backend::Either);
  EXPECT_NE(rec.rationale[0].find("no decisive rule"), std::string::npos);
}

TEST(Advisor, EmptyCircuit) {
  const auto rec = advise_circuit(Circuit(2));
  EXPECT_EQ(rec.backend, Backend::Either);
  EXPECT_EQ(rec.pathfinding_class, PathfindingClass::Unknown);
  EXPECT_NE(rec.rationale[0].find("absent"), std::string::npos);
}

TEST(Advisor, LightChainFamiliesPreferTensorNetworks) {
  for (Family f : {Family::VQE, Family::HamiltonianSim}) {
    const auto rec = advise(f, 32);
    EXPECT_EQ(rec.backend, Backend::TensorNet) << family_name(f);
    EXPECT_EQ(rec.pathfinding_class, PathfindingClass::PathfindingBound) << family_name(f);
  }
}

TEST(Advisor, QaoaAndQft) {
  EXPECT_EQ(advise(Family::QAOA, 32).backend, Backend::TensorNet);
  const auto qft = advise(Family::QFT, 32);
  EXPECT_EQ(qft.pathfinding_class, PathfindingClass::Unbounded);
  EXPECT_EQ(qft.distributed_benefit, DistributedBenefit::High);
}
