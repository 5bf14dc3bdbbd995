// Minimal end-to-end walkthrough: generate a ring-plus-cluster point set,
// select landmarks with each method at a few sizes, and print the relative
// spectral error of the resulting low-rank kernel approximation.

#include <cstdio>

#include "nysa/nysa.hpp"

int main() {
  using namespace nysa;
  const Dataset data = standardize(synth_ring_cluster(300, 11));
  const KernelSpec spec{KernelFamily::GaussianRBF, 0.8};
  const KernelMatrix kernel = kernel_matrix(spec, data);
  const double gamma = 1e-3;
  const ProjectorKernel p = projector_kernel(kernel, gamma);

  std::printf("n = %td, effective dimension at gamma=%g: %.2f\n",
              static_cast<std::ptrdiff_t>(p.n()), gamma,
              effective_dimension(p));
  std::printf("%-10s", "k");
  for (Index k : {5, 10, 20, 40}) std::printf("%12td", static_cast<std::ptrdiff_t>(k));
  std::printf("\n");

  const auto row = [&](const char* name, auto&& select) {
    std::printf("%-10s", name);
    for (Index k : {5, 10, 20, 40}) {
      const LandmarkSet lm = select(k);
      const double err =
          error_operator_norm(kernel, nystrom(kernel.entries, lm, 1e-12));
      std::printf("%12.3e", err);
    }
    std::printf("\n");
  };

  row("greedy", [&](Index k) { return das_sample(p, k).landmarks; });
  row("scores", [&](Index k) { return rls_sample(p, k, 42); });
  row("uniform", [&](Index k) { return uniform_sample(p.n(), k, 42); });
  return 0;
}
