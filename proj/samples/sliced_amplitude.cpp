// One QFT amplitude, contracted whole and in 8 slices over 2 workers.
#include <iostream>

#include "qcsim/qcsim.hpp"

int main() {
  qcsim::GeneratorSpec spec;
  spec.family = qcsim::Family::QFT;
  spec.n = 10;
  const auto c = qcsim::generate(spec);
  const std::string zeros(10, '0');

  qcsim::PathfinderConfig cfg;
  cfg.num_samples = 16;
  const auto whole = qcsim::amplitude(c, zeros, cfg);

  qcsim::WorkerPoolConfig pool;
  pool.workers = 2;
  const auto run = qcsim::run_sliced(c, zeros, cfg, pool, 8);

  std::cout << "unsliced: " << whole << '\n'
            << "sliced:   " << run.result << " (" << run.slices << " slices, imbalance " << run.imbalance()
            << ", " << run.wall_time_s << " s)\n";
}
