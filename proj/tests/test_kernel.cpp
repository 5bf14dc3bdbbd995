#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <fstream>

#include "nysa/csv.hpp"
#include "nysa/kernel.hpp"
#include "nysa/rng.hpp"

using namespace nysa;

namespace {

Dataset random_dataset(Index n, Index d, std::uint64_t seed) {
  Rng rng(seed);
  Matrix raw(n, d);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < d; ++j) raw(i, j) = rng.normal();
  return standardize(raw);
}

}  // namespace

TEST_CASE("standardize basics") {
  SECTION("two-point column") {
    Matrix raw(2, 1);
    raw << 0.0, 2.0;
    const Dataset ds = standardize(raw);
    CHECK(ds.points(0, 0) == Catch::Approx(-1.0));
    CHECK(ds.points(1, 0) == Catch::Approx(1.0));
    CHECK(ds.feature_means[0] == Catch::Approx(1.0));
    CHECK(ds.feature_stds[0] == Catch::Approx(1.0));
  }
  SECTION("idempotence") {
    const Dataset first = random_dataset(50, 3, 7);
    const Dataset second = standardize(first.points);
    CHECK((second.points - first.points).cwiseAbs().maxCoeff() < 1e-12);
  }
  SECTION("constant column maps to zeros") {
    Matrix raw(3, 2);
    raw << 5.0, 1.0, 5.0, 2.0, 5.0, 3.0;
    const Dataset ds = standardize(raw);
    CHECK(ds.points.col(0).cwiseAbs().maxCoeff() == 0.0);
    CHECK(ds.feature_stds[0] == 1.0);
  }
  SECTION("column statistics after standardization") {
    const Dataset ds = random_dataset(200, 4, 3);
    for (Index j = 0; j < ds.d(); ++j) {
      CHECK(std::abs(ds.points.col(j).mean()) < 1e-10);
      const double var = ds.points.col(j).squaredNorm() /
                         static_cast<double>(ds.n());
      CHECK(std::abs(std::sqrt(var) - 1.0) < 1e-10);
    }
  }
  SECTION("non-finite input rejected") {
    Matrix raw(2, 1);
    raw << 1.0, std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(standardize(raw), data_error);
  }
}

TEST_CASE("kernel_eval closed forms") {
  Vector x(2), y(2);
  x << 0.0, 0.0;
  y << 1.0, 1.0;  // ||x-y|| = sqrt(2)
  const KernelSpec gauss{KernelFamily::GaussianRBF, 1.0};
  CHECK(kernel_eval(gauss, x, x) == 1.0);
  CHECK(kernel_eval(gauss, x, y) == Catch::Approx(std::exp(-1.0)));

  Vector a(1), b(1);
  a << 0.0;
  b << 2.0;
  const KernelSpec lap{KernelFamily::Laplace, 2.0};
  CHECK(kernel_eval(lap, a, b) == Catch::Approx(std::exp(-1.0)));

  SECTION("translation invariance") {
    Rng rng(5);
    Vector p(3), q(3), t(3);
    for (Index j = 0; j < 3; ++j) {
      p[j] = rng.normal();
      q[j] = rng.normal();
      t[j] = rng.normal();
    }
    CHECK(kernel_eval(gauss, p, q) ==
          Catch::Approx(kernel_eval(gauss, (p + t).eval(), (q + t).eval()))
              .epsilon(1e-14));
  }
  SECTION("bad bandwidth") {
    CHECK_THROWS_AS(kernel_eval(KernelSpec{KernelFamily::Laplace, 0.0}, x, y),
                    config_error);
  }
}

TEST_CASE("kernel_matrix structure") {
  SECTION("single point") {
    Matrix raw(2, 1);
    raw << 0.0, 1.0;  // standardize needs n >= 2; check unit diagonal there
    const Dataset ds = standardize(raw);
    const KernelMatrix k =
        kernel_matrix(KernelSpec{KernelFamily::GaussianRBF, 1.0}, ds);
    CHECK(k.entries(0, 0) == 1.0);
    CHECK(k.entries(1, 1) == 1.0);
  }
  SECTION("identical points give all-ones block") {
    Dataset ds;
    ds.points = Matrix::Zero(2, 2);
    ds.feature_means = Vector::Zero(2);
    ds.feature_stds = Vector::Ones(2);
    const KernelMatrix k =
        kernel_matrix(KernelSpec{KernelFamily::GaussianRBF, 1.0}, ds);
    CHECK((k.entries - Matrix::Ones(2, 2)).cwiseAbs().maxCoeff() == 0.0);
  }
  SECTION("matches scalar double loop") {
    const Dataset ds = random_dataset(20, 3, 11);
    const KernelSpec spec{KernelFamily::Laplace, 1.5};
    const KernelMatrix k = kernel_matrix(spec, ds);
    for (Index i = 0; i < 20; ++i)
      for (Index j = 0; j < 20; ++j) {
        const double direct =
            std::exp(-(ds.points.row(i) - ds.points.row(j)).norm() / 1.5);
        CHECK(std::abs(k.entries(i, j) - direct) < 1e-14);
      }
  }
  SECTION("symmetry and unit diagonal") {
    const Dataset ds = random_dataset(40, 2, 13);
    const KernelMatrix k =
        kernel_matrix(KernelSpec{KernelFamily::GaussianRBF, 0.7}, ds);
    CHECK((k.entries - k.entries.transpose()).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((k.entries.diagonal().array() - 1.0).abs().maxCoeff() == 0.0);
  }
  SECTION("strict positive definiteness on distinct points") {
    for (std::uint64_t seed : {1, 2, 3}) {
      const Dataset ds = random_dataset(30, 2, seed);
      for (KernelFamily fam :
           {KernelFamily::GaussianRBF, KernelFamily::Laplace}) {
        const KernelMatrix k = kernel_matrix(KernelSpec{fam, 1.0}, ds);
        CHECK(k.spectrum().minCoeff() > 0.0);
      }
    }
  }
  SECTION("exchange symmetry under row permutation") {
    const Dataset ds = random_dataset(15, 3, 17);
    const KernelSpec spec{KernelFamily::GaussianRBF, 1.0};
    const KernelMatrix k = kernel_matrix(spec, ds);
    Dataset flipped = ds;
    flipped.points.row(0).swap(flipped.points.row(7));
    const KernelMatrix kf = kernel_matrix(spec, flipped);
    Matrix expected = k.entries;
    expected.row(0).swap(expected.row(7));
    expected.col(0).swap(expected.col(7));
    CHECK((kf.entries - expected).cwiseAbs().maxCoeff() == 0.0);
  }
  SECTION("spectrum accessor is descending") {
    const Dataset ds = random_dataset(25, 2, 19);
    const Vector s =
        kernel_matrix(KernelSpec{KernelFamily::GaussianRBF, 1.0}, ds)
            .spectrum();
    for (Index i = 1; i < s.size(); ++i) CHECK(s[i] <= s[i - 1]);
  }
}

TEST_CASE("kernel_cross consistency") {
  const Dataset ds = random_dataset(50, 3, 23);
  const KernelSpec spec{KernelFamily::GaussianRBF, 1.2};
  const KernelMatrix k = kernel_matrix(spec, ds);
  SECTION("singleton") {
    const Matrix block = kernel_cross(spec, ds, {4}, {4});
    CHECK(block(0, 0) == 1.0);
  }
  SECTION("random index sets match the dense slice") {
    Rng rng(29);
    IndexList rows, cols;
    for (int i = 0; i < 7; ++i) rows.push_back(rng.index(50));
    for (int i = 0; i < 9; ++i) cols.push_back(rng.index(50));
    const Matrix block = kernel_cross(spec, ds, rows, cols);
    for (std::size_t a = 0; a < rows.size(); ++a)
      for (std::size_t b = 0; b < cols.size(); ++b)
        CHECK(std::abs(block(static_cast<Index>(a), static_cast<Index>(b)) -
                       k.entries(rows[a], cols[b])) < 1e-14);
  }
  SECTION("out of range rejected") {
    CHECK_THROWS_AS(kernel_cross(spec, ds, {50}, {0}), config_error);
  }
}

TEST_CASE("csv ingestion") {
  const std::string path = "test_kernel_tmp.csv";
  SECTION("plain numeric with header") {
    std::ofstream out(path);
    out << "a,b,label\n1.0,2.0,0\n3.5,-1.25,1\n";
    out.close();
    const Matrix m = read_csv_matrix(path);
    REQUIRE(m.rows() == 2);
    REQUIRE(m.cols() == 3);
    CHECK(m(1, 1) == -1.25);
    const Matrix dropped = read_csv_matrix(path, 2);
    REQUIRE(dropped.cols() == 2);
    CHECK(dropped(1, 1) == -1.25);
  }
  SECTION("no header") {
    std::ofstream out(path);
    out << "1,2\n3,4\n";
    out.close();
    const Matrix m = read_csv_matrix(path);
    REQUIRE(m.rows() == 2);
    CHECK(m(0, 0) == 1.0);
  }
  SECTION("ragged rows rejected") {
    std::ofstream out(path);
    out << "1,2\n3\n";
    out.close();
    CHECK_THROWS_AS(read_csv_matrix(path), data_error);
  }
  SECTION("non-numeric body rejected") {
    std::ofstream out(path);
    out << "1,2\n3,oops\n";
    out.close();
    CHECK_THROWS_AS(read_csv_matrix(path), data_error);
  }
  std::remove(path.c_str());
}

TEST_CASE("rng determinism and distribution sanity") {
  SECTION("same seed, same stream") {
    Rng a(99), b(99);
    for (int i = 0; i < 100; ++i) CHECK(a.raw() == b.raw());
  }
  SECTION("u01 range and mean") {
    Rng rng(1);
    double sum = 0.0;
    for (int i = 0; i < 20000; ++i) {
      const double u = rng.u01();
      REQUIRE(u >= 0.0);
      REQUIRE(u < 1.0);
      sum += u;
    }
    CHECK(std::abs(sum / 20000.0 - 0.5) < 3.0 * 0.2887 / std::sqrt(20000.0));
  }
  SECTION("normal moments") {
    Rng rng(2);
    double sum = 0.0, sq = 0.0;
    const int n = 20000;
    for (int i = 0; i < n; ++i) {
      const double z = rng.normal();
      sum += z;
      sq += z * z;
    }
    CHECK(std::abs(sum / n) < 3.0 / std::sqrt(static_cast<double>(n)));
    CHECK(std::abs(sq / n - 1.0) < 4.0 * std::sqrt(2.0 / n));
  }
  SECTION("without-replacement sampler is uniform") {
    const Index n = 10, k = 3;
    std::vector<int> counts(10, 0);
    const int trials = 50000;
    for (int s = 0; s < trials; ++s) {
      Rng rng(static_cast<std::uint64_t>(s) + 1);
      for (Index i : sample_without_replacement(rng, n, k))
        counts[static_cast<std::size_t>(i)]++;
    }
    const double expect = trials * 0.3;
    const double se = std::sqrt(trials * 0.3 * 0.7);
    for (int c : counts) CHECK(std::abs(c - expect) < 3.5 * se);
  }
}
