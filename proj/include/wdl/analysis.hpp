#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wdl/exactsum.hpp"
#include "wdl/jump_table.hpp"
#include "wdl/params.hpp"

namespace wdl {

// Calibrated defaults. All reports echo the values actually used.
inline constexpr double default_c1 = 0.05;
inline constexpr double default_c5 = 0.05;
inline constexpr double default_c4 = 1.0;
inline constexpr double default_alpha = 50.0;

// ---------------------------------------------------------------- sign scan

struct ScanOptions {
    /// Witness threshold: S(t1) >= c1 t1^{1/4}, S(t2) <= -c1 t2^{1/4}.
    double c1 = 0.0;
    /// Perturbation f(t) = f_coeff * t^{1/4} added before scanning.
    double f_coeff = 0.0;
    /// |value| <= zero_tolerance counts as zero (plateau).
    double zero_tolerance = 1e-9;
};

struct ScanReport {
    double t_lo = 0.0;
    double t_hi = 0.0;
    /// Positions where S + f takes a new sign; integers when f = 0.
    std::vector<double> crossings;
    /// Longest subinterval of the window free of sign changes (window edges
    /// count as boundaries).
    double max_gap = 0.0;
    /// max_gap / sqrt(q1 q2 t_lo).
    double gap_ratio = 0.0;
    std::optional<double> witness_plus;
    std::optional<double> witness_minus;
};

ScanReport scan_sign_changes(double t_lo, double t_hi, const JumpTable& table,
                             const ScanOptions& options = {});

// --------------------------------------------------------------- exceedance

/// Threshold c5 (q1 q2)^{3/4} t^{1/4} in the raw domain.
double exceedance_threshold(double t, double c5, std::int64_t q1q2);

struct ExceedanceMeasure {
    double plus = 0.0;
    double minus = 0.0;
};

/// Exact Lebesgue measure of {t in [T, 2T] : +-S(t) > c5 (q1q2)^{3/4} t^{1/4}}.
ExceedanceMeasure exceedance_measure(double T, const JumpTable& table, double c5);

/// Maximal interval on which the threshold inequality holds throughout.
struct Run {
    double start = 0.0;
    double end = 0.0;
    double length() const { return end - start; }
};

/// Maximal runs inside [lo, hi] where sign*S(t) > c5 (q1q2)^{3/4} t^{1/4}.
std::vector<Run> threshold_runs(double lo, double hi, const JumpTable& table, double c5, int sign);

struct RunCount {
    std::uint64_t plus = 0;
    std::uint64_t minus = 0;
    double longest_plus = 0.0;
    double longest_minus = 0.0;
};

/// Greedy left-to-right packing of disjoint length-L subintervals of [T, 2T]
/// on which +-S exceeds the threshold throughout.
RunCount single_sign_runs(double T, const JumpTable& table, double c5, double L);

// ------------------------------------------------------------------ kernel

struct KernelSpec {
    double alpha = default_alpha;
    int zeta = 1;
    std::uint64_t n0 = 1;
    int zeta_prime = -1;
};

/// Validates alpha > sqrt(n0) and zeta = +-1; zeta' = -delta_d2(n0) zeta.
/// zeta' keeps the value 2 magnitude when |delta_d2(n0)| = 2 (q1 = 2).
KernelSpec make_kernel_spec(const Params& params, double alpha, int zeta);

/// K(u) = (1 - |u|)(1 + zeta sin(4 pi alpha sqrt(n0) u)), |u| <= 1.
double kernel_weight(double u, const KernelSpec& spec);

struct KernelTestResult {
    double lhs = 0.0;
    double predicted = 0.0;
    double residual = 0.0;
    std::uint64_t pieces = 0;
};

struct KernelQuadratureOptions {
    double abs_tolerance = 1e-8;
    int max_depth = 30;
};

/// zeta' / (2 n0^{3/4}) sin(4 pi t sqrt(n0) - 3 pi / 4).
double kernel_predicted(double t, const KernelSpec& spec);

/// lhs = integral_{-1}^{1} S*(t + alpha u) K(u) du by adaptive Simpson with
/// forced nodes at every jump of u -> S(q1 q2 (t + alpha u)^2).
KernelTestResult kernel_test(double t, const KernelSpec& spec, const JumpTable& table,
                             double f_coeff = 0.0, const KernelQuadratureOptions& options = {});

/// Step table whose value on (N, N+1) is the single n0 term of the
/// Voronoi expansion at the segment midpoint:
///   (q1 q2 x^{1/4} / (4 sqrt 2 pi)) delta_d2(n0) n0^{-3/4} cos(4 pi sqrt(n0 x) - 3 pi/4),
/// x = (N + 1/2) / (q1 q2).
JumpTable single_term_table(const Params& params, std::uint64_t x_max);

// ------------------------------------------------------------ mean squares

struct MsqResult {
    double value = 0.0;
    std::vector<std::string> warnings;
};

/// I(T, h) = integral_1^T (S(q1q2(x+h)) - S(q1q2 x))^2 dx, exact.
MsqResult short_interval_msq(double T, double h, const JumpTable& table);

struct MaxIncrementMsq {
    double plus = 0.0;
    double minus = 0.0;
};

/// integral_T^{2T} max_{0<=h<=H0} (S_+-(q1q2(t+h)) - S_+-(q1q2 t))^2 dt, exact,
/// by a sliding-window extrema pass over segment values.
MaxIncrementMsq max_increment_msq(double T, double H0, const JumpTable& table);

/// max_{0<=h<=H0} (S_+-(q1q2(t+h)) - S_+-(q1q2 t))^2 at one t (sign = +-1).
double max_increment_sq(double t, double H0, int sign, const JumpTable& table);

/// omega(t) = S_+-^2(q1q2 t) - 4 max_{h<=H0}(dS_+-)^2 - (delta q1 q2 t^{1/4})^2.
double omega_detector(double t, double H0, double delta, int sign, const JumpTable& table);

struct WindowExtrema {
    double min = 0.0;
    double max = 0.0;
};

/// Extrema of S_+- (sign = +-1) over the raw window [lo, hi].
WindowExtrema part_window_extrema(double lo, double hi, int sign, const JumpTable& table);

struct PartSquareRatio {
    double plus = 0.0;
    double minus = 0.0;
};

/// integral_T^{2T} S_+-^2(q1q2 t) dt / ((q1q2)^2 T^{3/2}).
PartSquareRatio part_square_ratio(double T, const JumpTable& table);

// ------------------------------------------------------------------ moments

struct MomentReport {
    double T = 0.0;
    int k = 1;
    double integral = 0.0;         ///< integral_1^T S^k(q1q2 x) dx
    double c_hat = 0.0;            ///< (q1q2)^{-k} integral / integral_1^T x^{k/4} dx
    std::optional<double> first_moment_ratio;  ///< k = 1: |integral| / (q1q2 T^{3/4})
    std::optional<double> f_k;     ///< with a C_k reference
};

/// integral_1^T x^{k/4} dx.
double power_weight_integral(double T, int k);

MomentReport moment(double T, int k, const JumpTable& table,
                    std::optional<double> c_k_ref = std::nullopt);

/// F_k(x) = (q1q2)^{-k} integral_1^x S^k(q1q2 u) du - C_k x^{1+k/4}.
double moment_error(double x, int k, double c_k, const JumpTable& table);

/// (1 / 64 pi^2) sum_{n <= y} delta_d2(n)^2 n^{-3/2}: the diagonal
/// prediction for the k = 2 constant.
double second_moment_prediction(const Params& params, std::uint64_t y);

// ------------------------------------------------------------------- omega

struct OmegaWitness {
    bool found = false;
    int delta = -1;
    double t = 0.0;
    double H0 = 0.0;
    double increment = 0.0;       ///< (q1q2)^{-k} integral_t^{t+H0} S^k(q1q2 u) du
    double f_increment = 0.0;     ///< F_k(t + H0) - F_k(t)
    double c_star = 0.0;          ///< c5^k - delta^k C_k (1 + k/4)
    double lower_bound = 0.0;     ///< c_star H0 t^{k/4}
    bool inequality_holds = false;  ///< delta^k f_increment >= lower_bound
    std::string diagnostics;
};

struct OmegaOptions {
    double c4 = default_c4;
    double c5 = default_c5;
};

/// Delta rule: -1 if C_k >= 0, else +1.
int omega_delta(double c_k);

OmegaWitness omega_witness(double T, int k, double c_k_ref, const JumpTable& table,
                           const OmegaOptions& options = {});

struct FkIncrementCheck {
    double by_definition = 0.0;   ///< F_k(2T) - F_k(T)
    double by_difference = 0.0;   ///< moment over [T, 2T] minus C_k((2T)^p - T^p)
    double relative_gap = 0.0;
};

FkIncrementCheck fk_increment_check(double T, int k, double c_k, const JumpTable& table);

}  // namespace wdl
