#include "wdl/voronoi.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "wdl/arith.hpp"
#include "wdl/compensated.hpp"
#include "wdl/error.hpp"
#include "wdl/exactsum.hpp"

namespace wdl {

long double TruncationParams::tail_limit() const {
    const long double h = static_cast<long double>(H);
    const long double v = std::ldexp(h * h, J + 1);
    return std::isfinite(v) ? v : std::numeric_limits<long double>::max();
}

int dyadic_depth(double T, std::int64_t q1q2) {
    const double L = std::log(T);
    const double v = (L + 2.0 * std::log(static_cast<double>(q1q2)) - 4.0 * std::log(L)) /
                     std::numbers::ln2;
    return std::max(-1, static_cast<int>(std::floor(v)));
}

void check_truncation_window(TruncationParams& trunc, std::int64_t q1q2) {
    const double L = std::log(trunc.T);
    const double h = static_cast<double>(trunc.H);
    const double q = static_cast<double>(q1q2);
    const double upper = std::min(h * h, q * q * trunc.T) / std::pow(L, 4);
    if (trunc.y > upper) {
        trunc.warnings.push_back("y = " + std::to_string(trunc.y) +
                                 " exceeds min(H^2, (q1q2)^2 T) log^-4 T = " +
                                 std::to_string(upper));
    }
    if (trunc.y < 1.0) {
        trunc.warnings.push_back("y = " + std::to_string(trunc.y) + " < 1: R0 is an empty sum");
    }
}

TruncationParams derive_truncation(double T, std::int64_t q1, std::int64_t q2, TruncationMode mode,
                                   std::optional<double> h) {
    if (q1 < 1 || q2 < 1) throw DomainError("derive_truncation: moduli must be >= 1");
    const std::int64_t q1q2 = q1 * q2;
    const double t_min = std::max(100.0, std::pow(static_cast<double>(q1q2), 1.01));
    if (!(T >= t_min)) {
        throw DomainError("derive_truncation: T = " + std::to_string(T) +
                          " below max(100, (q1q2)^1.01) = " + std::to_string(t_min));
    }
    TruncationParams out;
    out.T = T;
    out.H = static_cast<std::uint64_t>(std::ceil(T));
    out.J = dyadic_depth(T, q1q2);
    const double L = std::log(T);
    if (mode == TruncationMode::sign_lemma) {
        out.y = std::sqrt(T);
    } else {
        if (!h || !(*h > 0.0)) {
            throw DomainError("derive_truncation: msq_lemma mode needs h > 0");
        }
        out.y = std::min(T / (2.0 * *h), T * std::pow(L, -6));
    }
    check_truncation_window(out, q1q2);
    return out;
}

double voronoi_amplitude(double x, std::int64_t q1q2) {
    return static_cast<double>(q1q2) * std::pow(x, 0.25) /
           (4.0 * std::numbers::sqrt2 * std::numbers::pi);
}

double voronoi_phase_cos(double n, double x) {
    const double s = 2.0 * std::sqrt(n * x);
    const double frac = s - std::floor(s);
    return std::cos(2.0 * std::numbers::pi * frac - 0.75 * std::numbers::pi);
}

VoronoiSeries::VoronoiSeries(const Params& params, const TruncationParams& trunc)
    : params_(params), trunc_(trunc) {
    validate(params);
    if (trunc.H < 2) throw DomainError("VoronoiSeries: H must be >= 2");
    if (trunc.cap > max_tail_terms) {
        throw ResourceError("VoronoiSeries: exploration cap " + std::to_string(trunc.cap) +
                            " exceeds the " + std::to_string(max_tail_terms) +
                            "-term limit; choose a smaller cap");
    }

    const auto y_floor = static_cast<std::uint64_t>(std::max(0.0, std::floor(trunc.y)));
    if (y_floor >= 1) {
        const auto d2 = delta_d2_table(y_floor, params);
        for (std::uint64_t n = 1; n <= y_floor; ++n) {
            if (d2[n] == 0) continue;
            const double w = static_cast<double>(d2[n]) * std::pow(static_cast<double>(n), -0.75);
            r0_terms_.push_back({static_cast<double>(n), w});
            r0_abs_weight_ += std::abs(w);
        }
    }

    const long double limit = trunc.tail_limit();
    const std::uint64_t n_lo = y_floor + 1;
    const std::uint64_t capped_hi = y_floor + trunc.cap;
    if (limit < static_cast<long double>(capped_hi)) {
        tail_hi_ = static_cast<std::uint64_t>(std::floor(limit));
    } else {
        tail_hi_ = capped_hi;
        capped_ = limit > static_cast<long double>(capped_hi);
    }
    if (tail_hi_ >= n_lo) {
        const auto d21 = delta_d21_table(n_lo, tail_hi_, trunc.H, trunc.J, params);
        const auto d22 = delta_d22_table(n_lo, tail_hi_, trunc.H, trunc.J, params);
        for (std::uint64_t i = 0; i < d21.size(); ++i) {
            const double n = static_cast<double>(n_lo + i);
            const double scale = 0.5 * std::pow(n, -0.75);
            if (d21[i] != 0) r12_terms_.push_back({n, static_cast<double>(d21[i]) * scale});
            if (d22[i] != 0) r21_terms_.push_back({n, static_cast<double>(d22[i]) * scale});
        }
    }
}

double VoronoiSeries::sum_terms(const std::vector<Term>& terms, double x) const {
    CompensatedSum<double> acc;
    for (const auto& t : terms) acc.add(t.weight * voronoi_phase_cos(t.n, x));
    return voronoi_amplitude(x, params_.modulus_product()) * acc.value();
}

double VoronoiSeries::r0(double x) const { return sum_terms(r0_terms_, x); }
double VoronoiSeries::r12(double x) const { return sum_terms(r12_terms_, x); }
double VoronoiSeries::r21(double x) const { return sum_terms(r21_terms_, x); }
double VoronoiSeries::approx(double x) const { return r0(x) + r12(x) + r21(x); }

double VoronoiSeries::r0_envelope(double x) const {
    return voronoi_amplitude(x, params_.modulus_product()) * r0_abs_weight_;
}

double r0_eval(double x, const TruncationParams& trunc, const Params& params) {
    TruncationParams t = trunc;
    t.cap = 0;
    return VoronoiSeries(params, t).r0(x);
}

double r12_eval(double x, const TruncationParams& trunc, const Params& params) {
    return VoronoiSeries(params, trunc).r12(x);
}

double r21_eval(double x, const TruncationParams& trunc, const Params& params) {
    return VoronoiSeries(params, trunc).r21(x);
}

double voronoi_approx(double x, const TruncationParams& trunc, const Params& params) {
    return VoronoiSeries(params, trunc).approx(x);
}

ResidualStats voronoi_residual(const JumpTable& table, const VoronoiSeries& series, double T,
                               std::uint64_t samples, VoronoiPart part) {
    if (samples == 0) throw DomainError("voronoi_residual: samples must be positive");
    if (!(table.params() == series.params())) {
        throw DomainError("voronoi_residual: table and series use different parameters");
    }
    const double q = table.params().q1q2();
    if (2.0 * T * q > static_cast<double>(table.max_index())) {
        throw RangeError("voronoi_residual: table too short for [T, 2T]");
    }
    CompensatedSum<double> res;
    CompensatedSum<double> sq;
    ResidualStats out;
    const double step = T / static_cast<double>(samples);
    for (std::uint64_t i = 0; i < samples; ++i) {
        const double x = T + (static_cast<double>(i) + 0.5) * step;
        const double s = s_eval(q * x, table);
        const double r = part == VoronoiPart::r0 ? series.r0(x) : series.approx(x);
        const double d = s - r;
        res.add(d * d);
        sq.add(s * s);
        out.max_abs_residual = std::max(out.max_abs_residual, std::abs(d));
    }
    out.samples = samples;
    out.mean_sq_residual = res.value() / static_cast<double>(samples);
    out.mean_sq_s = sq.value() / static_cast<double>(samples);
    out.ratio = out.mean_sq_s > 0.0 ? out.mean_sq_residual / out.mean_sq_s : 0.0;
    return out;
}

}  // namespace wdl
