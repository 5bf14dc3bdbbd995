// Prints an ASCII density map of the inverse Christoffel values (ridge
// leverage scores) over a two-moons point set: sparse regions light up,
// dense regions stay quiet — the signal the adaptive samplers exploit.

#include <cstdio>
#include <vector>

#include "nysa/nysa.hpp"

int main() {
  using namespace nysa;
  const Dataset data = standardize(synth_two_moons(400, 5));
  const KernelMatrix kernel =
      kernel_matrix(KernelSpec{KernelFamily::GaussianRBF, 0.5}, data);
  const ProjectorKernel p = projector_kernel(kernel, 1e-3);
  const Vector lev = leverage_scores(p);

  constexpr int rows = 24, cols = 60;
  std::vector<double> grid(rows * cols, 0.0);
  std::vector<int> hits(rows * cols, 0);
  const double x0 = data.points.col(0).minCoeff();
  const double x1 = data.points.col(0).maxCoeff();
  const double y0 = data.points.col(1).minCoeff();
  const double y1 = data.points.col(1).maxCoeff();
  for (Index i = 0; i < data.n(); ++i) {
    const int cx = static_cast<int>((data.points(i, 0) - x0) / (x1 - x0) *
                                    (cols - 1));
    const int cy = static_cast<int>((data.points(i, 1) - y0) / (y1 - y0) *
                                    (rows - 1));
    grid[cy * cols + cx] += lev[i];
    hits[cy * cols + cx] += 1;
  }
  const char* shade = " .:-=+*#%@";
  double max_cell = 0.0;
  for (int c = 0; c < rows * cols; ++c)
    if (hits[c] > 0) max_cell = std::max(max_cell, grid[c] / hits[c]);
  for (int r = rows - 1; r >= 0; --r) {
    for (int c = 0; c < cols; ++c) {
      const int cell = r * cols + c;
      if (hits[cell] == 0) {
        std::putchar(' ');
        continue;
      }
      const double v = grid[cell] / hits[cell] / max_cell;
      std::putchar(shade[static_cast<int>(v * 9.0)]);
    }
    std::putchar('\n');
  }
  std::printf("mean leverage: %.4f  (max %.4f)\n", lev.mean(),
              lev.maxCoeff());
  return 0;
}
