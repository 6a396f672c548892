#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "wdl/jump_table.hpp"
#include "wdl/params.hpp"

namespace wdl {

enum class TruncationMode { sign_lemma, msq_lemma };

/// Truncation of the Voronoi-type expansion of S(q1 q2 x), T <= x <= 2T.
struct TruncationParams {
    double T = 0.0;
    double y = 0.0;          ///< R0 runs over n <= y
    std::uint64_t H = 2;     ///< hyperbola split parameter, >= 2
    int J = 0;               ///< dyadic depth: l <= 2^(J+1) h
    std::uint64_t cap = 1'000'000;  ///< max number of R12/R21 terms evaluated
    std::vector<std::string> warnings;

    /// 2^(J+1) H^2, saturated to the largest representable long double.
    long double tail_limit() const;
};

/// J = floor((L + 2 log(q1 q2) - 4 log L) / log 2) with L = log T.
int dyadic_depth(double T, std::int64_t q1q2);

/// sign_lemma: H = ceil(T), y = sqrt(T).
/// msq_lemma:  H = ceil(T), y = min(T / (2h), T log^-6 T).
/// Throws DomainError when T < max(100, (q1 q2)^1.01) or h is missing in
/// msq_lemma mode. Emits warnings when y > min(H^2, (q1 q2)^2 T) log^-4 T.
TruncationParams derive_truncation(double T, std::int64_t q1, std::int64_t q2, TruncationMode mode,
                                   std::optional<double> h = std::nullopt);

/// Appends a warning if y falls outside (1, min(H^2, (q1q2)^2 T) log^-4 T].
void check_truncation_window(TruncationParams& trunc, std::int64_t q1q2);

/// q1 q2 x^{1/4} / (4 sqrt(2) pi).
double voronoi_amplitude(double x, std::int64_t q1q2);

/// cos(4 pi sqrt(n x) - 3 pi / 4), reducing 2 sqrt(n x) modulo 1 before
/// scaling by 2 pi.
double voronoi_phase_cos(double n, double x);

/// Evaluator for R0, R12, R21 holding the coefficient tables for one
/// (params, truncation) pair.
class VoronoiSeries {
public:
    /// Hard ceiling on cached R12/R21 coefficients (memory).
    static constexpr std::uint64_t max_tail_terms = 50'000'000;

    VoronoiSeries(const Params& params, const TruncationParams& trunc);

    double r0(double x) const;
    double r12(double x) const;
    double r21(double x) const;
    /// R0 + R12 + R21; approximates S(q1 q2 x) up to the unevaluated
    /// G-terms and O(q1 q2 log^3 T).
    double approx(double x) const;

    /// Triangle-inequality bound on |R0(x)|.
    double r0_envelope(double x) const;

    const Params& params() const { return params_; }
    const TruncationParams& truncation() const { return trunc_; }
    /// Last index used by R12/R21 (after the exploration cap).
    std::uint64_t tail_hi() const { return tail_hi_; }
    /// True if the cap cut the R12/R21 range short of 2^(J+1) H^2.
    bool capped() const { return capped_; }

private:
    struct Term {
        double n;
        double weight;  // coefficient * n^{-3/4}
    };

    double sum_terms(const std::vector<Term>& terms, double x) const;

    Params params_;
    TruncationParams trunc_;
    std::vector<Term> r0_terms_;
    std::vector<Term> r12_terms_;
    std::vector<Term> r21_terms_;
    double r0_abs_weight_ = 0.0;
    std::uint64_t tail_hi_ = 0;
    bool capped_ = false;
};

double r0_eval(double x, const TruncationParams& trunc, const Params& params);
double r12_eval(double x, const TruncationParams& trunc, const Params& params);
double r21_eval(double x, const TruncationParams& trunc, const Params& params);
double voronoi_approx(double x, const TruncationParams& trunc, const Params& params);

enum class VoronoiPart { r0, full };

struct ResidualStats {
    double mean_sq_residual = 0.0;
    double mean_sq_s = 0.0;
    double ratio = 0.0;  ///< mean_sq_residual / mean_sq_s
    double max_abs_residual = 0.0;
    std::uint64_t samples = 0;
};

/// Means over x in [T, 2T] of (S(q1 q2 x) - R(x))^2 and S(q1 q2 x)^2 on a
/// midpoint grid of `samples` points.
ResidualStats voronoi_residual(const JumpTable& table, const VoronoiSeries& series, double T,
                               std::uint64_t samples, VoronoiPart part = VoronoiPart::r0);

}  // namespace wdl
