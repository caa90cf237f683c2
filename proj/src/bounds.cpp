#include "sysid/bounds.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "sysid/errors.hpp"
#include "sysid/ho_kalman.hpp"
#include "sysid/numerics.hpp"

namespace sysid {

namespace {

double floor_ratio(Index num, Index den) {
    return static_cast<double>(num / den);  // integer floor, num >= 0
}

double hankel_exponent(Index n, Index m, Index p, Index K1, Index K2) {
    const double em =
        floor_ratio(n - 1, 2 * m) / std::log(2.0 * static_cast<double>(m * K1));
    const double ep =
        floor_ratio(n - 1, 2 * p) / std::log(2.0 * static_cast<double>(p * K2));
    return std::max(em, ep);
}

void require_delta(double delta, const char* who) {
    if (!(delta > 0.0 && delta < 1.0)) {
        throw BadDelta(std::string(who) + ": delta must lie in (0, 1)");
    }
}

}  // namespace

double BoundInputs::Tbar0() const {
    const double kq = static_cast<double>(K * q());
    const double l = std::log(kq);
    return kq * l * l;
}

double phi(const Matrix& A, int tau_max) {
    if (A.rows() != A.cols()) throw NonSquare("phi: A must be square");
    if (tau_max < 1) throw BadHorizon("phi: tau_max must be at least 1");
    const double spr = spectral_radius(A);
    const double sqrt_spr = std::sqrt(spr);

    double best = 1.0;  // tau = 0 term: ||I|| / spr^0
    int argmax = 0;
    int decreasing_run = 0;
    double prev = 1.0;
    Matrix power = Matrix::Identity(A.rows(), A.cols());
    double denom = 1.0;
    for (int tau = 1; tau <= tau_max; ++tau) {
        power = power * A;
        denom *= sqrt_spr;
        const double num = spectral_norm(power);
        double ratio;
        if (denom == 0.0) {
            if (num == 0.0) {
                ratio = 0.0;  // nilpotent tail
            } else {
                return std::numeric_limits<double>::infinity();
            }
        } else {
            ratio = num / denom;
        }
        if (ratio > best) {
            best = ratio;
            argmax = tau;
        }
        decreasing_run = ratio < prev ? decreasing_run + 1 : 0;
        prev = ratio;
        if (spr < 1.0 && decreasing_run >= 50) return best;
    }
    if (spr < 1.0 && argmax == tau_max) {
        throw Diverging("phi: ratio still increasing at tau_max with spr < 1");
    }
    return best;
}

Matrix gamma_inf(const StateSpace& ss, double sigma_w, double sigma_u) {
    if (ss.spectral_radius() >= 1.0 - 1e-9) {
        throw Unstable("gamma_inf: undefined unless spr(A) < 1");
    }
    Matrix W = sigma_w * sigma_w * Matrix::Identity(ss.n(), ss.n()) +
               sigma_u * sigma_u * ss.B * ss.B.transpose();
    return dlyap(ss.A, W);
}

double sigma_e(const StateSpace& ss, Index K, double phi_val,
               double gamma_norm) {
    if (K < 2) throw BadHorizon("sigma_e: K must be at least 2");
    const double sprK = std::pow(ss.spectral_radius(), static_cast<double>(K));
    if (sprK >= 1.0) {
        throw Marginal("sigma_e: requires spr(A)^K < 1");
    }
    Matrix CA = ss.C;
    for (Index i = 1; i < K; ++i) CA = CA * ss.A;  // C A^{K-1}
    return phi_val * spectral_norm(CA) *
           std::sqrt(static_cast<double>(K) * gamma_norm / (1.0 - sprK));
}

double delta_single(const BoundInputs& in, double H_norm,
                    double sigma_n_Hminus) {
    if (sigma_n_Hminus <= 0.0) {
        throw DegenerateHankel("delta_single: sigma_n(Hminus) must be positive");
    }
    if (in.Tbar < 2) throw BadHorizon("delta_single: Tbar must be at least 2");
    const double nK = static_cast<double>(in.n * in.K);
    const double Tq = static_cast<double>(in.Tbar * in.q());
    return in.calibration_C * std::sqrt(nK) * std::log(Tq) * H_norm /
           (sigma_n_Hminus * sigma_n_Hminus) *
           std::sqrt(in.Tbar0() / static_cast<double>(in.Tbar));
}

double pole_bound(double delta_val, double A_norm, Index n) {
    if (delta_val < 0.0 || n < 1) {
        throw BadRank("pole_bound: need delta_val >= 0 and n >= 1");
    }
    const double inv_n = 1.0 / static_cast<double>(n);
    return std::pow(delta_val + 2.0 * A_norm, 1.0 - inv_n) *
           std::pow(delta_val, inv_n);
}

double c1(Index K, Index p, Index m, double delta) {
    require_delta(delta, "c1");
    if (K < 1) throw BadHorizon("c1: K must be at least 1");
    const double Kd = static_cast<double>(K);
    return 8.0 * std::sqrt(2.0 * Kd * (Kd + 1.0) * static_cast<double>(p + m) *
                           std::log(27.0 * Kd / delta));
}

double c2(Index K, Index p, Index n, double delta, double F_norm) {
    require_delta(delta, "c2");
    if (K < 1) throw BadHorizon("c2: K must be at least 1");
    if (F_norm < 0.0) throw NonFinite("c2: F_norm must be nonnegative");
    const double Kd = static_cast<double>(K);
    const double poly = Kd * Kd * Kd / 3.0 + Kd * Kd / 2.0 + Kd / 6.0;
    return 16.0 * F_norm *
           std::sqrt(poly * 2.0 * static_cast<double>(p + n) *
                     std::log(27.0 * Kd / delta));
}

double delta_multi(const BoundInputs& in, double Hplus_norm,
                   double sigma_n_Hminus, double c1_val, double c2_val) {
    if (sigma_n_Hminus <= 0.0) {
        throw DegenerateHankel("delta_multi: sigma_n(Hminus) must be positive");
    }
    if (in.N < 1) throw BadHorizon("delta_multi: N must be at least 1");
    const double sn = sigma_n_Hminus;
    return 9.0 * std::sqrt(static_cast<double>(in.n)) / sn *
           (Hplus_norm / sn + 2.0) *
           std::sqrt(static_cast<double>(std::min(in.K1, in.K2 + 1))) *
           (in.sigma_v * c1_val + in.sigma_w * c2_val) / in.sigma_u *
           std::sqrt(1.0 / static_cast<double>(in.N));
}

Index min_trajectories(Index p, Index n, Index m, Index K, double delta) {
    require_delta(delta, "min_trajectories");
    const double rhs =
        8.0 * static_cast<double>(p * K) +
        4.0 * static_cast<double>(p + n + m + 4) *
            std::log(3.0 * static_cast<double>(K) / delta);
    return static_cast<Index>(std::ceil(rhs));
}

double sigma_n_upper(Index n, Index m, Index p, Index K1, Index K2,
                     double delta_bar) {
    const double rho = std::exp(std::numbers::pi * std::numbers::pi / 4.0);
    const Index K = K1 + K2 + 1;
    return 2.0 * delta_bar * static_cast<double>(n * K) *
           std::sqrt(static_cast<double>(p * m)) *
           std::pow(rho, -hankel_exponent(n, m, p, K1, K2));
}

NormBounds norm_bounds(const StateSpace& ss, Index K1, Index K2, Index K) {
    const double b_bar = ss.B.cwiseAbs().maxCoeff();
    const double c_bar = ss.C.cwiseAbs().maxCoeff();
    const double delta_bar = b_bar * c_bar;
    const Index n = ss.n();
    const Index p = ss.p();
    const Index m = ss.m();
    NormBounds out;
    out.O = c_bar * std::sqrt(static_cast<double>(K1 * m * n));
    out.Q = b_bar * std::sqrt(static_cast<double>((K2 + 1) * p * n));
    out.H = 0.5 * delta_bar * static_cast<double>(n) *
            std::sqrt(static_cast<double>(p * m)) * static_cast<double>(K);
    out.F = c_bar * std::sqrt(static_cast<double>(m * n * K));
    out.valid = ss.spectral_radius() <= 1.0 + 1e-9;
    return out;
}

double sample_complexity(Setting mode, Index n, Index m, Index p, Index K,
                         Index K1, Index K2, Index q) {
    const double varrho = std::exp(std::numbers::pi * std::numbers::pi);
    const double growth = std::pow(varrho, hankel_exponent(n, m, p, K1, K2));
    if (mode == Setting::Single) {
        return static_cast<double>(q) / static_cast<double>(n * p * m) * growth;
    }
    const double Kd = static_cast<double>(K);
    return static_cast<double>(n) * Kd * Kd * Kd / static_cast<double>(p) *
           growth;
}

BoundReport evaluate_bounds(const BoundInputs& in) {
    require_delta(in.delta, "evaluate_bounds");
    BoundReport report;

    MarkovParams g = markov_matrix(in.ss, in.K);
    HankelSet hankel = hankel_from_markov(g, in.K1, in.K2, in.n);
    ExtendedMatrices ext = extended_matrices(in.ss, in.K1, in.K2, in.K);
    Realization exact = ho_kalman(g, in.n, in.K1, in.K2);

    report.H_norm = spectral_norm(hankel.H);
    report.Hplus_norm = spectral_norm(hankel.Hplus);
    report.F_norm = spectral_norm(ext.F);
    report.Abar_norm = spectral_norm(exact.Ahat);
    report.sigma_n_Hminus = svd(hankel.Hminus).S(in.n - 1);

    const double spr = in.ss.spectral_radius();
    const double sprK = std::pow(spr, static_cast<double>(in.K));
    const bool stable = spr < 1.0 - 1e-9;
    const bool spr_condition = sprK <= 0.99;
    const bool hankel_ok = report.sigma_n_Hminus > 0.0;

    report.phi = phi(in.ss.A);
    if (stable) {
        report.gamma_inf_norm =
            spectral_norm(gamma_inf(in.ss, in.sigma_w, in.sigma_u));
        report.sigma_e =
            sigma_e(in.ss, in.K, report.phi, *report.gamma_inf_norm);
    }

    report.c1 = c1(in.K, in.p, in.m, in.delta);
    report.c2 = c2(in.K, in.p, in.n, in.delta, report.F_norm);
    report.min_trajectories =
        min_trajectories(in.p, in.n, in.m, in.K, in.delta);

    if (hankel_ok && in.Tbar >= 2) {
        report.delta_single =
            delta_single(in, report.H_norm, report.sigma_n_Hminus);
        report.pole_bound_single =
            pole_bound(*report.delta_single, report.Abar_norm, in.n);
    }
    if (hankel_ok && in.N >= 1) {
        report.delta_multi = delta_multi(in, report.Hplus_norm,
                                         report.sigma_n_Hminus, report.c1,
                                         report.c2);
        report.pole_bound_multi =
            pole_bound(*report.delta_multi, report.Abar_norm, in.n);
    }

    const double b_bar = in.ss.B.cwiseAbs().maxCoeff();
    const double c_bar = in.ss.C.cwiseAbs().maxCoeff();
    report.sigma_n_upper =
        sigma_n_upper(in.n, in.m, in.p, in.K1, in.K2, b_bar * c_bar);

    Spectrum spectrum = eig(in.ss.A);
    bool distinct_real = true;
    for (std::size_t i = 0; i < spectrum.size(); ++i) {
        if (std::abs(spectrum[i].imag()) > 1e-9) distinct_real = false;
        for (std::size_t j = i + 1; j < spectrum.size(); ++j) {
            if (std::abs(spectrum[i] - spectrum[j]) <= 1e-9) {
                distinct_real = false;
            }
        }
    }

    const double Tq = static_cast<double>(in.Tbar * in.q());
    const bool tbar_condition =
        in.Tbar >= 2 && hankel_ok &&
        static_cast<double>(in.Tbar) / (std::log(Tq) * std::log(Tq)) >=
            static_cast<double>(in.K) * in.Tbar0() /
                (report.sigma_n_Hminus * report.sigma_n_Hminus);

    report.assumptions_ok = {
        {"spr(A) < 1 (Gamma_inf, sigma_e)", stable},
        {"spr(A)^K <= 0.99 (single-trajectory bound)", spr_condition},
        {"sigma_n(Hminus) > 0", hankel_ok},
        {"K1 >= n and K2 >= n", in.K1 >= in.n && in.K2 >= in.n},
        {"Tbar sample-size condition, unit constant (single-trajectory bound)",
         tbar_condition},
        {"N >= min_trajectories (multiple-trajectory bound)",
         in.N >= report.min_trajectories},
        {"A stable/marginally stable with distinct real eigenvalues "
         "(sigma_n upper bound)",
         spr <= 1.0 + 1e-9 && distinct_real},
    };
    return report;
}

}  // namespace sysid
