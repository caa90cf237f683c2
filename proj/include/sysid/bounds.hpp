#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sysid/lti_model.hpp"
#include "sysid/types.hpp"

namespace sysid {

/// Everything the bound formulas need about the true system and the data
/// regime. calibration_C is the unspecified constant of the
/// single-trajectory realization bound; it defaults to 1 and must be
/// reported alongside any value derived from it. Tbar or N may be left
/// at 0 when the corresponding setting is not being evaluated.
struct BoundInputs {
    StateSpace ss;
    Index K = 0;
    Index K1 = 0;
    Index K2 = 0;
    Index n = 0;
    Index p = 0;
    Index m = 0;
    double sigma_u = 1.0;
    double sigma_w = 0.0;
    double sigma_v = 0.0;
    double delta = 0.05;
    Index Tbar = 0;
    Index N = 0;
    double calibration_C = 1.0;

    Index q() const { return p + m + n; }
    double Tbar0() const;  // K*q*log^2(K*q)
};

struct AssumptionFlag {
    std::string name;
    bool satisfied = false;
};

/// Evaluated theoretical quantities. Values whose preconditions fail are
/// absent rather than extrapolated; the violated precondition is named in
/// assumptions_ok.
struct BoundReport {
    double phi = 0.0;
    std::optional<double> gamma_inf_norm;
    std::optional<double> sigma_e;
    double sigma_n_Hminus = 0.0;
    double H_norm = 0.0;
    double Hplus_norm = 0.0;
    double F_norm = 0.0;
    double Abar_norm = 0.0;
    double c1 = 0.0;
    double c2 = 0.0;
    std::optional<double> delta_single;
    std::optional<double> delta_multi;
    std::optional<double> pole_bound_single;
    std::optional<double> pole_bound_multi;
    double sigma_n_upper = 0.0;
    Index min_trajectories = 0;
    std::vector<AssumptionFlag> assumptions_ok;
};

/// max over tau = 0..tau_max of ||A^tau|| / spr(A)^{tau/2}. The scan stops
/// early once the ratio has decreased 50 times in a row; for spr(A) >= 1
/// it runs to tau_max and the result is a lower estimate of the supremum.
/// Nonzero nilpotent A yields +infinity (the supremum is infinite).
double phi(const Matrix& A, int tau_max = 500);

/// Steady-state state covariance: dlyap(A, sigma_w^2 I + sigma_u^2 B B^T).
Matrix gamma_inf(const StateSpace& ss, double sigma_w, double sigma_u);

/// sigma_e = phi * ||C A^{K-1}|| * sqrt(K ||Gamma_inf|| / (1 - spr(A)^K)).
double sigma_e(const StateSpace& ss, Index K, double phi_val,
               double gamma_norm);

/// Single-trajectory realization-error bound
/// Delta = C * sqrt(nK) * log(Tbar q) * ||H|| / sigma_n(Hminus)^2
///         * sqrt(Tbar0 / Tbar).
double delta_single(const BoundInputs& in, double H_norm,
                    double sigma_n_Hminus);

/// Pole-error bound (Delta + 2 ||Abar||)^{1 - 1/n} * Delta^{1/n}.
double pole_bound(double delta_val, double A_norm, Index n);

double c1(Index K, Index p, Index m, double delta);

double c2(Index K, Index p, Index n, double delta, double F_norm);

/// Multiple-trajectory realization-error bound
/// Delta' = (9 sqrt(n) / sigma_n) * (||Hplus|| / sigma_n + 2)
///          * sqrt(min(K1, K2 + 1)) * ((sigma_v C1 + sigma_w C2) / sigma_u)
///          * sqrt(1 / N).
double delta_multi(const BoundInputs& in, double Hplus_norm,
                   double sigma_n_Hminus, double c1_val, double c2_val);

/// Smallest N for which the multiple-trajectory bounds hold:
/// ceil(8 p K + 4 (p + n + m + 4) log(3 K / delta)).
Index min_trajectories(Index p, Index n, Index m, Index K, double delta);

/// Upper bound on sigma_n(Hminus) for stable/marginally stable A with
/// distinct real eigenvalues:
/// 2 delta_bar n K sqrt(pm) * rho^{-max(floor((n-1)/2m)/log(2mK1),
///                                      floor((n-1)/2p)/log(2pK2))},
/// rho = e^{pi^2/4}. Hypotheses are checked by the caller.
double sigma_n_upper(Index n, Index m, Index p, Index K1, Index K2,
                     double delta_bar);

/// Norm bounds on O, Q, H, F for stable/marginally stable systems; valid
/// is false when the spectral-radius hypothesis fails.
struct NormBounds {
    double O = 0.0;
    double Q = 0.0;
    double H = 0.0;
    double F = 0.0;
    bool valid = false;
};
NormBounds norm_bounds(const StateSpace& ss, Index K1, Index K2, Index K);

/// Sample size (unit leading constant) needed for constant pole error:
/// single -> (q / (npm)) * varrho^e, multi -> (n K^3 / p) * varrho^e with
/// e = max(floor((n-1)/2m)/log(2 K1 m), floor((n-1)/2p)/log(2 K2 p)) and
/// varrho = e^{pi^2}. A visualization aid, not a certified threshold.
double sample_complexity(Setting mode, Index n, Index m, Index p, Index K,
                         Index K1, Index K2, Index q);

/// Evaluates every bound quantity for the true system in `in`, recording a
/// satisfied/violated flag per bound precondition.
BoundReport evaluate_bounds(const BoundInputs& in);

}  // namespace sysid
