// Bell state on both backends.
#include <iostream>

#include "qcsim/qcsim.hpp"

int main() {
  const auto bell = qcsim::bell_circuit();

  const auto sv = qcsim::simulate_distribution(bell, qcsim::Precision::Double);
  const auto tn = qcsim::reconstruct_distribution(bell);

  std::cout << "bitstring  statevector  tensornet\n";
  for (std::uint64_t i = 0; i < 4; ++i)
    std::cout << qcsim::to_bitstring(i, 2) << "         " << sv.probs[i] << "          " << tn.probs[i] << '\n';

  for (const auto& [bits, count] : qcsim::sample(sv, 1000, 7)) std::cout << bits << ": " << count << '\n';
}
