#include "sysid/ho_kalman.hpp"

#include <random>

#include <doctest.h>

#include "oracles.hpp"
#include "sysid/errors.hpp"
#include "sysid/experiments.hpp"
#include "sysid/numerics.hpp"
#include "sysid/spectral_metrics.hpp"

using namespace sysid;
namespace oracle = sysid::testing;

TEST_CASE("ho_kalman on hand-checkable data") {
    SUBCASE("scalar example with balanced factors") {
        MarkovParams g{Matrix{{0.0, 1.0, 0.5}}, 3, 1, 1};
        Realization r = ho_kalman(g, 1, 1, 1);
        CHECK(r.Ahat(0, 0) == doctest::Approx(0.5));
        CHECK(r.Dhat(0, 0) == 0.0);
        CHECK((r.Bhat(0, 0) * r.Chat(0, 0)) == doctest::Approx(1.0));
        CHECK(std::abs(r.Bhat(0, 0)) == doctest::Approx(1.0));
        CHECK(std::abs(r.Chat(0, 0)) == doctest::Approx(1.0));
        CHECK_FALSE(r.near_singular);
    }
    SUBCASE("zero Markov matrix flags near-singular and yields zeros") {
        MarkovParams g{Matrix::Zero(1, 4), 4, 1, 1};
        Realization r = ho_kalman(g, 1, 1, 2);
        CHECK(r.near_singular);
        CHECK(r.Ahat.norm() == 0.0);
        CHECK(r.Bhat.norm() == 0.0);
        CHECK(r.Chat.norm() == 0.0);
    }
    SUBCASE("bad partition rejected") {
        MarkovParams g{Matrix::Zero(1, 4), 4, 1, 1};
        CHECK_THROWS_AS(ho_kalman(g, 1, 1, 1), BadPartition);
    }
}

TEST_CASE("ho_kalman exactness on noiseless data") {
    StateSpace ss = builtin_system("stable");
    MarkovParams g = markov_matrix(ss, 15);
    Realization r = ho_kalman(g, 4, 8, 6);

    SUBCASE("Markov blocks agree out to k = 12") {
        StateSpace recovered(r.Ahat, r.Bhat, r.Chat, r.Dhat);
        MarkovParams gr = markov_matrix(recovered, 14);
        for (Index k = 0; k < 14; ++k) {
            CHECK(spectral_norm(gr.block(k) - g.block(k)) < 1e-8);
        }
    }
    SUBCASE("recovered spectrum matches the true poles") {
        CHECK(hausdorff(eig(r.Ahat), eig(ss.A)) <= 1e-8);
    }
    SUBCASE("factors are balanced: O^T O = Q Q^T = Sigma") {
        Matrix sigma = r.sigma.asDiagonal();
        CHECK((r.Ohat.transpose() * r.Ohat - sigma).norm() < 1e-9);
        CHECK((r.Qhat * r.Qhat.transpose() - sigma).norm() < 1e-9);
    }
    SUBCASE("O Q reconstructs the rank-n truncation") {
        HankelSet h = hankel_from_markov(g, 8, 6, 4);
        CHECK(spectral_norm(r.Ohat * r.Qhat - h.L) <= 1e-10);
    }
    SUBCASE("round trip through realization_markov") {
        MarkovParams gr = realization_markov(r, 15);
        CHECK(spectral_norm(gr.G - g.G) < 1e-8);
    }
}

TEST_CASE("realization_markov trivia") {
    SUBCASE("zero realization gives a zero Markov matrix") {
        MarkovParams g{Matrix::Zero(1, 4), 4, 1, 1};
        Realization r = ho_kalman(g, 1, 1, 2);
        CHECK(realization_markov(r, 6).G.norm() == 0.0);
    }
    SUBCASE("scalar example reproduces its input") {
        MarkovParams g{Matrix{{0.0, 1.0, 0.5}}, 3, 1, 1};
        Realization r = ho_kalman(g, 1, 1, 1);
        MarkovParams back = realization_markov(r, 3);
        CHECK(back.G(0, 0) == doctest::Approx(0.0));
        CHECK(back.G(0, 1) == doctest::Approx(1.0));
        CHECK(back.G(0, 2) == doctest::Approx(0.5));
    }
}

TEST_CASE("pole error degrades continuously with the perturbation") {
    StateSpace ss = builtin_system("stable");
    MarkovParams g = markov_matrix(ss, 15);
    std::mt19937_64 rng(77);
    Matrix direction = oracle::random_matrix(rng, 2, 30);
    direction /= spectral_norm(direction);
    Spectrum truth = eig(ss.A);

    double previous = 1e300;
    for (double eps : {1e-2, 1e-4, 1e-6, 1e-8}) {
        MarkovParams noisy{g.G + eps * direction, g.K, g.p, g.m};
        Realization r = ho_kalman(noisy, 4, 8, 6);
        const double err = hausdorff(eig(r.Ahat), truth);
        CHECK(err < previous);
        previous = err;
    }
    CHECK(previous < 1e-4);  // vanishing perturbation, vanishing pole error
}
