#pragma once

#include <algorithm>
#include <complex>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "qcsim/circuit.hpp"

namespace qcsim {

using Label = int;

/// Dense tensor with named indices. Data is row-major in the order of
/// `labels` (the first label varies slowest).
struct Tensor {
  std::vector<Label> labels;
  std::vector<int> dims;
  std::vector<Complex> data;

  Tensor() = default;
  Tensor(std::vector<Label> ls, std::vector<int> ds, std::vector<Complex> d)
      : labels(std::move(ls)), dims(std::move(ds)), data(std::move(d)) {
    if (labels.size() != dims.size()) throw StructuralError("label/dimension count mismatch");
    if (data.size() != element_count(dims)) throw StructuralError("tensor data length does not match its shape");
    auto sorted = labels;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw StructuralError("duplicate label within a tensor");
  }

  static Tensor scalar(Complex v) { return Tensor({}, {}, {v}); }

  static std::size_t element_count(const std::vector<int>& ds) {
    std::size_t n = 1;
    for (int d : ds) n *= static_cast<std::size_t>(d);
    return n;
  }

  std::size_t rank() const noexcept { return labels.size(); }
  std::size_t size() const noexcept { return data.size(); }

  int position_of(Label l) const {
    auto it = std::find(labels.begin(), labels.end(), l);
    return it == labels.end() ? -1 : static_cast<int>(it - labels.begin());
  }

  std::vector<std::size_t> strides() const {
    std::vector<std::size_t> s(labels.size(), 1);
    for (std::size_t k = labels.size(); k-- > 1;) s[k - 1] = s[k] * static_cast<std::size_t>(dims[k]);
    return s;
  }

  Complex value() const {
    if (!labels.empty()) throw StructuralError("tensor is not a scalar");
    return data[0];
  }
};

namespace tensor_detail {

/// Row-major enumeration of linear offsets over the given (stride, dim) axes.
inline std::vector<std::size_t> offsets(const std::vector<std::size_t>& strides, const std::vector<int>& dims) {
  std::vector<std::size_t> out{0};
  for (std::size_t ax = 0; ax < dims.size(); ++ax) {
    std::vector<std::size_t> next;
    next.reserve(out.size() * static_cast<std::size_t>(dims[ax]));
    for (std::size_t base : out)
      for (int v = 0; v < dims[ax]; ++v) next.push_back(base + static_cast<std::size_t>(v) * strides[ax]);
    out = std::move(next);
  }
  return out;
}

}  // namespace tensor_detail

/// Product of the dimensions of all distinct labels of a and b.
inline double pair_flops(const Tensor& a, const Tensor& b) {
  double f = 1.0;
  for (std::size_t k = 0; k < a.labels.size(); ++k) f *= a.dims[k];
  for (std::size_t k = 0; k < b.labels.size(); ++k)
    if (a.position_of(b.labels[k]) < 0) f *= b.dims[k];
  return f;
}

/// Sums over shared labels. Output labels: a's unshared labels in order, then
/// b's unshared labels in order.
inline Tensor contract_pair(const Tensor& a, const Tensor& b) {
  using tensor_detail::offsets;
  const auto sa = a.strides(), sb = b.strides();

  std::vector<std::size_t> a_free_s, a_sh_s, b_sh_s, b_free_s;
  std::vector<int> a_free_d, sh_d, b_free_d;
  std::vector<Label> out_labels;
  std::vector<int> out_dims;

  for (std::size_t k = 0; k < a.labels.size(); ++k) {
    int pb = b.position_of(a.labels[k]);
    if (pb < 0) {
      a_free_s.push_back(sa[k]);
      a_free_d.push_back(a.dims[k]);
      out_labels.push_back(a.labels[k]);
      out_dims.push_back(a.dims[k]);
    } else {
      if (a.dims[k] != b.dims[static_cast<std::size_t>(pb)])
        throw StructuralError("dimension mismatch on shared label " + std::to_string(a.labels[k]));
      a_sh_s.push_back(sa[k]);
      b_sh_s.push_back(sb[static_cast<std::size_t>(pb)]);
      sh_d.push_back(a.dims[k]);
    }
  }
  for (std::size_t k = 0; k < b.labels.size(); ++k) {
    if (a.position_of(b.labels[k]) >= 0) continue;
    b_free_s.push_back(sb[k]);
    b_free_d.push_back(b.dims[k]);
    out_labels.push_back(b.labels[k]);
    out_dims.push_back(b.dims[k]);
  }

  const auto afo = offsets(a_free_s, a_free_d);
  const auto aso = offsets(a_sh_s, sh_d);
  const auto bso = offsets(b_sh_s, sh_d);
  const auto bfo = offsets(b_free_s, b_free_d);

  std::vector<Complex> out(afo.size() * bfo.size(), Complex{0.0, 0.0});
  const std::size_t nb = bfo.size();
  for (std::size_t i = 0; i < afo.size(); ++i) {
    Complex* row = out.data() + i * nb;
    for (std::size_t s = 0; s < aso.size(); ++s) {
      const Complex av = a.data[afo[i] + aso[s]];
      if (av == Complex{0.0, 0.0}) continue;
      const Complex* bp = b.data.data() + bso[s];
      for (std::size_t j = 0; j < nb; ++j) row[j] += av * bp[bfo[j]];
    }
  }
  return Tensor(std::move(out_labels), std::move(out_dims), std::move(out));
}

/// Fixes `label` to `value`, dropping that index.
inline Tensor fix_index(const Tensor& t, Label label, int value) {
  const int pos = t.position_of(label);
  if (pos < 0) return t;
  const auto p = static_cast<std::size_t>(pos);
  if (value < 0 || value >= t.dims[p]) throw StructuralError("slice value out of range");
  const auto st = t.strides();
  std::vector<Label> ls;
  std::vector<int> ds;
  std::vector<std::size_t> ss;
  for (std::size_t k = 0; k < t.labels.size(); ++k) {
    if (k == p) continue;
    ls.push_back(t.labels[k]);
    ds.push_back(t.dims[k]);
    ss.push_back(st[k]);
  }
  const auto offs = tensor_detail::offsets(ss, ds);
  const std::size_t base = static_cast<std::size_t>(value) * st[p];
  std::vector<Complex> d(offs.size());
  for (std::size_t i = 0; i < offs.size(); ++i) d[i] = t.data[base + offs[i]];
  return Tensor(std::move(ls), std::move(ds), std::move(d));
}

/// Reorders the tensor's axes to `order` (a permutation of its labels).
inline Tensor permute(const Tensor& t, const std::vector<Label>& order) {
  if (order.size() != t.labels.size()) throw StructuralError("permutation has wrong length");
  const auto st = t.strides();
  std::vector<std::size_t> ss;
  std::vector<int> ds;
  for (Label l : order) {
    int pos = t.position_of(l);
    if (pos < 0) throw StructuralError("permutation names unknown label " + std::to_string(l));
    ss.push_back(st[static_cast<std::size_t>(pos)]);
    ds.push_back(t.dims[static_cast<std::size_t>(pos)]);
  }
  const auto offs = tensor_detail::offsets(ss, ds);
  std::vector<Complex> d(offs.size());
  for (std::size_t i = 0; i < offs.size(); ++i) d[i] = t.data[offs[i]];
  return Tensor(order, std::move(ds), std::move(d));
}

}  // namespace qcsim
