#pragma once

#include "qcsim/error.hpp"
#include "qcsim/circuit.hpp"
#include "qcsim/qasm.hpp"
#include "qcsim/generators.hpp"
#include "qcsim/metrics.hpp"
#include "qcsim/statevector.hpp"
#include "qcsim/tensor.hpp"
#include "qcsim/tensornet.hpp"
#include "qcsim/sliced_executor.hpp"
#include "qcsim/advisor.hpp"
#include "qcsim/harness.hpp"
