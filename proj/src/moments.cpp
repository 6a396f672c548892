#include <cmath>
#include <numbers>

#include "wdl/analysis.hpp"
#include "wdl/arith.hpp"
#include "wdl/compensated.hpp"
#include "wdl/error.hpp"

namespace wdl {

double power_weight_integral(double T, int k) {
    const double p = 1.0 + k / 4.0;
    // (T^p - 1) / p without cancellation near T = 1.
    return std::expm1(p * std::log(T)) / p;
}

MomentReport moment(double T, int k, const JumpTable& table, std::optional<double> c_k_ref) {
    if (!(T >= 1.0)) throw DomainError("moment: T must be >= 1");
    if (k < 1) throw DomainError("moment: k must be >= 1");
    const double q = table.params().q1q2();
    MomentReport rep;
    rep.T = T;
    rep.k = k;
    rep.integral = integrate_power(table, 1.0, T, k, Domain::normalized);
    const double weight = power_weight_integral(T, k);
    rep.c_hat = weight > 0.0 ? std::pow(q, -k) * rep.integral / weight : 0.0;
    if (k == 1) rep.first_moment_ratio = std::abs(rep.integral) / (q * std::pow(T, 0.75));
    if (c_k_ref) rep.f_k = moment_error(T, k, *c_k_ref, table);
    return rep;
}

double moment_error(double x, int k, double c_k, const JumpTable& table) {
    if (!(x >= 1.0)) throw DomainError("moment_error: x must be >= 1");
    const double q = table.params().q1q2();
    return std::pow(q, -k) * integrate_power(table, 1.0, x, k, Domain::normalized) -
           c_k * std::pow(x, 1.0 + k / 4.0);
}

double second_moment_prediction(const Params& params, std::uint64_t y) {
    const auto d = delta_d2_table(y, params);
    CompensatedSum<long double> acc;
    for (std::uint64_t n = 1; n <= y; ++n) {
        if (d[n] == 0) continue;
        const long double v = static_cast<long double>(d[n]);
        acc.add(v * v * std::pow(static_cast<long double>(n), -1.5L));
    }
    return static_cast<double>(acc.value() /
                               (64.0L * std::numbers::pi_v<long double> *
                                std::numbers::pi_v<long double>));
}

}  // namespace wdl
