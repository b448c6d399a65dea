#include <gtest/gtest.h>

#include <cstdlib>
#include <random>

#include "oracles.hpp"
#include "qcsim/statevector.hpp"

using namespace qcsim;

namespace {

Circuit random_circuit(int n, std::uint64_t seed, int gates) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> kind_pick(0, 11), qubit(0, n - 1);
  std::uniform_real_distribution<double> angle(0.0, 6.28);
  Circuit c(n);
  for (int i = 0; i < gates; ++i) {
    const auto kind = kAllGateKinds[static_cast<std::size_t>(kind_pick(rng))];
    std::vector<int> qs{qubit(rng)};
    if (arity(kind) == 2) {
      int b = qubit(rng);
      while (b == qs[0]) b = qubit(rng);
      qs.push_back(b);
    }
    if (is_parameterized(kind)) c.add(kind, qs, angle(rng));
    else c.add(kind, qs);
  }
  return c;
}

}  // namespace

TEST(StateVector, BellAmplitudes) {
  const auto sv = run<double>(bell_circuit());
  const double r = 1.0 / std::sqrt(2.0);
  EXPECT_NEAR(std::abs(sv[0] - Complex(r)), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(sv[1]), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(sv[2]), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(sv[3] - Complex(r)), 0.0, 1e-12);
  const auto d = distribution(sv).to_map();
  ASSERT_EQ(d.size(), 2u);
  EXPECT_NEAR(d.at("00"), 0.5, 1e-12);
  EXPECT_NEAR(d.at("11"), 0.5, 1e-12);
}

TEST(StateVector, MatchesGatherOracle) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const int n = 2 + static_cast<int>(seed % 6);
    const auto c = random_circuit(n, seed, 60);
    const auto ref = oracle::simulate(c);
    const auto sv = run<double>(c);
    for (std::size_t i = 0; i < ref.size(); ++i) EXPECT_LT(std::abs(sv[i] - ref[i]), 1e-12);
  }
}

TEST(StateVector, SinglePrecisionTracksDouble) {
  const auto c = random_circuit(6, 99, 80);
  const auto a = run<float>(c);
  const auto b = run<double>(c);
  for (std::size_t i = 0; i < b.amplitudes().size(); ++i)
    EXPECT_LT(std::abs(Complex(a[i]) - b[i]), 1e-5);
  EXPECT_NEAR(a.norm_squared(), 1.0, 1e-5);
}

TEST(StateVector, CnotControlIsFirstQubit) {
  Circuit c(2);
  c.add(GateKind::X, {1});
  c.add(GateKind::CNOT, {1, 0});
  EXPECT_NEAR(std::norm(run<double>(c)[3]), 1.0, 1e-15);
  Circuit d(2);
  d.add(GateKind::X, {1});
  d.add(GateKind::CNOT, {0, 1});
  EXPECT_NEAR(std::norm(run<double>(d)[2]), 1.0, 1e-15);
}

TEST(StateVector, StopsAtMeasure) {
  auto c = bell_circuit();
  c.add(GateKind::Measure, {0});
  EXPECT_NEAR(std::norm(run<double>(c)[3]), 0.5, 1e-12);
  auto sv = StateVector<double>::zero(2);
  EXPECT_THROW(sv.apply(GateOp{GateKind::Measure, {0}, std::nullopt}), UnsupportedError);
}

TEST(StateVector, CapacityGuardNamesBytes) {
  try {
    StateVector<float>::zero(25, 24);
    FAIL() << "expected CapacityError";
  } catch (const CapacityError& e) {
    EXPECT_EQ(e.required_bytes(), (std::uint64_t{1} << 25) * 8);
    EXPECT_NE(std::string(e.what()).find(std::to_string((std::uint64_t{1} << 25) * 8)), std::string::npos);
  }
}

TEST(StateVector, EnvironmentOverridesGuard) {
  ::setenv("QCSIM_MAX_QUBITS", "12", 1);
  EXPECT_EQ(max_statevector_qubits(), 12);
  EXPECT_THROW(StateVector<double>::zero(13), CapacityError);
  ::setenv("QCSIM_MAX_QUBITS", "junk", 1);
  EXPECT_EQ(max_statevector_qubits(), kDefaultMaxQubits);
  ::unsetenv("QCSIM_MAX_QUBITS");
}

TEST(StateVector, MemoryModel) {
  EXPECT_EQ(sv_memory_bytes(22, Precision::Single), 32u * 1024 * 1024);
  EXPECT_EQ(sv_memory_bytes(13, Precision::Single), 64u * 1024);
  EXPECT_EQ(sv_memory_bytes(1, Precision::Single), 16u);
  EXPECT_EQ(sv_memory_bytes(1, Precision::Double), 32u);
}

TEST(Sampling, SeededAndConsistent) {
  const auto d = distribution(run<double>(bell_circuit()));
  const auto a = sample(d, 10000, 42);
  const auto b = sample(d, 10000, 42);
  EXPECT_EQ(a, b);
  EXPECT_EQ(a.size(), 2u);
  EXPECT_NEAR(static_cast<double>(a.at("00")) / 10000.0, 0.5, 0.03);
  EXPECT_THROW(sample(d, 0, 1), ParameterError);
}

TEST(Sampling, NeverDrawsZeroProbabilityOutcomes) {
  Circuit c(3);
  c.add(GateKind::X, {2});
  const auto counts = sample(distribution(run<double>(c)), 500, 3);
  ASSERT_EQ(counts.size(), 1u);
  EXPECT_EQ(counts.begin()->first, "100");
}
