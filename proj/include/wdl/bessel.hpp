#pragma once

#include <cstdint>
#include <vector>

#include "wdl/params.hpp"

namespace wdl {

/// Bessel function of the first kind, order one, for 0 <= z <= 1e7.
/// Absolute error below 1e-10 on that range.
double j1(double z);

struct BesselSeriesConfig {
    double theta1 = 0.0;
    double theta2 = 0.0;
    /// Terms with (m + theta)(n + theta') * x <= radius are included.
    double radius = 1e3;

    static BesselSeriesConfig from_params(const Params& params, double radius);
};

struct BesselResult {
    double value = 0.0;
    std::uint64_t terms = 0;
};

/// -cot(pi theta2) / 4.
double bessel_constant_term(double theta2);

/// Truncated four-branch J1 double series for S(x) at rational theta:
///   -cot(pi th2)/4 + sqrt(x)/4 sum_{m,n >= 0} {+-} J1(4 pi sqrt(P x)) / sqrt(P)
/// over P = (m + th1 or 1-th1)(n + th2 or 1-th2), summed in increasing P.
BesselResult bessel_identity_eval(double x, const BesselSeriesConfig& cfg);

struct BesselPartialSum {
    double radius = 0.0;
    double value = 0.0;
    std::uint64_t terms = 0;
    /// max - min of the partial sums whose cutoff lies in (radius/2, radius].
    double oscillation = 0.0;
};

/// Partial sums at each radius (sorted ascending) from one ordered pass.
std::vector<BesselPartialSum> bessel_partial_sums(double x, double theta1, double theta2,
                                                  std::vector<double> radii);

/// Term-count ceiling for one evaluation.
inline constexpr std::uint64_t bessel_max_terms = 40'000'000;

}  // namespace wdl
