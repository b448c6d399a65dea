#include <gtest/gtest.h>

#include <random>

#include "qcsim/tensor.hpp"

using namespace qcsim;

namespace {

Tensor random_tensor(std::vector<Label> labels, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  std::vector<int> dims(labels.size(), 2);
  std::vector<Complex> d(std::size_t{1} << labels.size());
  for (auto& v : d) v = {g(rng), g(rng)};
  return Tensor(std::move(labels), std::move(dims), std::move(d));
}

/// Element of `t` at the assignment `values[label]`.
Complex at(const Tensor& t, const std::map<Label, int>& values) {
  std::size_t off = 0;
  const auto st = t.strides();
  for (std::size_t k = 0; k < t.labels.size(); ++k) off += st[k] * static_cast<std::size_t>(values.at(t.labels[k]));
  return t.data[off];
}

}  // namespace

TEST(Tensor, ValidatesShape) {
  EXPECT_THROW(Tensor({0, 1}, {2}, {1, 0}), StructuralError);
  EXPECT_THROW(Tensor({0}, {2}, {1, 0, 0}), StructuralError);
  EXPECT_THROW(Tensor({3, 3}, {2, 2}, std::vector<Complex>(4)), StructuralError);
}

TEST(Tensor, InputWithHadamard) {
  const double r = 1.0 / std::sqrt(2.0);
  Tensor in({0}, {2}, {1.0, 0.0});
  Tensor h({0, 1}, {2, 2}, {r, r, r, -r});
  const auto out = contract_pair(in, h);
  ASSERT_EQ(out.labels, std::vector<Label>{1});
  EXPECT_NEAR(out.data[0].real(), r, 1e-15);
  EXPECT_NEAR(out.data[1].real(), r, 1e-15);
}

TEST(Tensor, OuterProduct) {
  Tensor a({0}, {2}, {1.0, 2.0});
  Tensor b({1}, {2}, {3.0, 5.0});
  const auto out = contract_pair(a, b);
  EXPECT_EQ(out.labels, (std::vector<Label>{0, 1}));
  EXPECT_EQ(out.data, (std::vector<Complex>{3.0, 5.0, 6.0, 10.0}));
  EXPECT_EQ(pair_flops(a, b), 4.0);
}

TEST(Tensor, ContractionMatchesExplicitSum) {
  std::mt19937_64 rng(5);
  const auto a = random_tensor({4, 1, 7, 2}, rng);
  const auto b = random_tensor({2, 9, 4}, rng);
  const auto out = contract_pair(a, b);
  EXPECT_EQ(out.labels, (std::vector<Label>{1, 7, 9}));
  EXPECT_EQ(pair_flops(a, b), 32.0);
  for (int x1 = 0; x1 < 2; ++x1)
    for (int x7 = 0; x7 < 2; ++x7)
      for (int x9 = 0; x9 < 2; ++x9) {
        Complex want = 0.0;
        for (int x2 = 0; x2 < 2; ++x2)
          for (int x4 = 0; x4 < 2; ++x4) {
            std::map<Label, int> v{{1, x1}, {7, x7}, {9, x9}, {2, x2}, {4, x4}};
            want += at(a, v) * at(b, v);
          }
        EXPECT_LT(std::abs(at(out, {{1, x1}, {7, x7}, {9, x9}}) - want), 1e-12);
      }
}

TEST(Tensor, DimensionMismatch) {
  Tensor a({0}, {2}, {1.0, 0.0});
  Tensor b({0}, {3}, {1.0, 0.0, 0.0});
  EXPECT_THROW(contract_pair(a, b), StructuralError);
}

TEST(Tensor, FixIndexAndPermute) {
  std::mt19937_64 rng(8);
  const auto t = random_tensor({3, 5, 6}, rng);
  const auto f = fix_index(t, 5, 1);
  EXPECT_EQ(f.labels, (std::vector<Label>{3, 6}));
  for (int a = 0; a < 2; ++a)
    for (int c = 0; c < 2; ++c) EXPECT_EQ(at(f, {{3, a}, {6, c}}), at(t, {{3, a}, {5, 1}, {6, c}}));
  const auto p = permute(t, {6, 3, 5});
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int c = 0; c < 2; ++c) {
        std::map<Label, int> v{{3, a}, {5, b}, {6, c}};
        EXPECT_EQ(at(p, v), at(t, v));
      }
  EXPECT_EQ(fix_index(t, 42, 0).labels, t.labels);
  EXPECT_THROW(fix_index(t, 5, 2), StructuralError);
  EXPECT_THROW(permute(t, {3, 5}), StructuralError);
}
