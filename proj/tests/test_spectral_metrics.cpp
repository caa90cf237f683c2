#include "sysid/spectral_metrics.hpp"

#include <cmath>
#include <random>

#include <doctest.h>

#include "oracles.hpp"
#include "sysid/errors.hpp"
#include "sysid/numerics.hpp"

using namespace sysid;
namespace oracle = sysid::testing;

TEST_CASE("spectrum_variation") {
    SUBCASE("identical spectra") {
        Spectrum a = {{1, 0}, {2, 0}};
        CHECK(spectrum_variation(a, a) == 0.0);
    }
    SUBCASE("asymmetric pair {1,2} vs {2,4}") {
        Spectrum a = {{1, 0}, {2, 0}};
        Spectrum b = {{2, 0}, {4, 0}};
        CHECK(spectrum_variation(a, b) == doctest::Approx(2.0));
        CHECK(spectrum_variation(b, a) == doctest::Approx(1.0));
    }
    SUBCASE("imaginary pair against the origin") {
        Spectrum a = {{0, 1}, {0, -1}};
        Spectrum b = {{0, 0}, {0, 0}};
        CHECK(spectrum_variation(a, b) == doctest::Approx(1.0));
    }
    SUBCASE("size mismatch rejected") {
        Spectrum a = {{1, 0}};
        Spectrum b = {{1, 0}, {2, 0}};
        CHECK_THROWS_AS(spectrum_variation(a, b), SizeMismatch);
    }
}

TEST_CASE("hausdorff") {
    SUBCASE("max of the two variations") {
        Spectrum a = {{1, 0}, {2, 0}};
        Spectrum b = {{2, 0}, {4, 0}};
        CHECK(hausdorff(a, b) == doctest::Approx(2.0));
    }
    SUBCASE("metric axioms on random spectra") {
        std::mt19937_64 rng(55);
        for (int trial = 0; trial < 200; ++trial) {
            Spectrum a = oracle::random_spectrum(rng, 4);
            Spectrum b = oracle::random_spectrum(rng, 4);
            Spectrum c = oracle::random_spectrum(rng, 4);
            CHECK(hausdorff(a, a) == 0.0);
            CHECK(hausdorff(a, b) == hausdorff(b, a));
            CHECK(hausdorff(a, c) <= hausdorff(a, b) + hausdorff(b, c) + 1e-12);
        }
    }
}

TEST_CASE("elsner_bound") {
    SUBCASE("zero perturbation") {
        std::mt19937_64 rng(56);
        Matrix A = oracle::random_matrix(rng, 3, 3);
        CHECK(elsner_bound(A, A) == 0.0);
        CHECK(hausdorff(eig(A), eig(A)) == 0.0);
    }
    SUBCASE("Jordan block with an epsilon corner") {
        const double eps = 1e-4;
        Matrix A(2, 2);
        A << 0, 1, 0, 0;
        Matrix B(2, 2);
        B << 0, 1, eps, 0;
        const double dist = hausdorff(eig(A), eig(B));
        CHECK(dist == doctest::Approx(std::sqrt(eps)).epsilon(1e-6));
        const double bound = elsner_bound(A, B);
        CHECK(bound ==
              doctest::Approx(std::sqrt(spectral_norm(A) + spectral_norm(B)) *
                              std::sqrt(eps))
                  .epsilon(1e-6));
        CHECK(dist <= bound + 1e-10);
    }
    SUBCASE("dominates the Hausdorff distance on random pairs") {
        std::mt19937_64 rng(57);
        std::uniform_int_distribution<int> dim(1, 6);
        std::uniform_real_distribution<double> log_scale(-8.0, 0.0);
        for (int trial = 0; trial < 500; ++trial) {
            const Index n = dim(rng);
            Matrix A = oracle::random_matrix(rng, n, n);
            Matrix B = trial % 2 == 0
                           ? Matrix(A + std::pow(10.0, log_scale(rng)) *
                                            oracle::random_matrix(rng, n, n))
                           : oracle::random_matrix(rng, n, n);
            CHECK(hausdorff(eig(A), eig(B)) <= elsner_bound(A, B) + 1e-10);
        }
    }
    SUBCASE("unitary similarity changes neither side") {
        std::mt19937_64 rng(58);
        Matrix A = oracle::random_matrix(rng, 4, 4);
        Matrix B = A + 0.01 * oracle::random_matrix(rng, 4, 4);
        Eigen::HouseholderQR<Matrix> qr(oracle::random_matrix(rng, 4, 4));
        Matrix Q = qr.householderQ();
        const double base = hausdorff(eig(A), eig(B));
        const double rotated =
            hausdorff(eig(Q.transpose() * A * Q), eig(Q.transpose() * B * Q));
        CHECK(base == doctest::Approx(rotated).epsilon(1e-9));
    }
    SUBCASE("size mismatch rejected") {
        CHECK_THROWS_AS(elsner_bound(Matrix::Zero(2, 2), Matrix::Zero(3, 3)),
                        SizeMismatch);
    }
}
