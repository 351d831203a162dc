// Fidelity of the cavity I -> cavity II transfer as the extra spring is
// switched on, at G/kappa = 10 with the coherent-state figure parameters.

#include <cstdio>

#include "gstx/simulator/transfer.hpp"
#include "gstx/simulator/validation.hpp"

int main() {
  using namespace gstx::simulator;
  std::printf("%6s %12s %12s %12s\n", "p", "F_numeric", "F_closed", "lambda");
  for (double p : {0.0, 0.5, 1.0, 2.0, 5.0, 10.0, 20.0, 50.0}) {
    const auto exp = figure_experiment(10.0, p, 1.5, coherent_figure_input(), kDefaultSteps);
    const auto num = run_transfer(exp);
    const auto cf = run_closed_form(exp);
    std::printf("%6.1f %12.6f %12.6f %12.6f\n", p, num.F, cf.F, num.lambda);
  }
}
