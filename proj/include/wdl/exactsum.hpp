#pragma once

#include <cstdint>
#include <string>
#include <utility>

#include "wdl/jump_table.hpp"

namespace wdl {

/// Argument convention for step-function queries: raw t, or normalized x
/// with t = q1*q2*x.
enum class Domain { raw, normalized };

/// S(x) = sum'_{mn <= x} w1(m) w2(n); a term with mn = x counts 1/2.
double s_eval(double x, const JumpTable& table);

/// 4 sqrt(2) pi (q1 q2)^{-1} t^{-1/2} (S(q1 q2 t^2) + f(q1 q2 t^2)) with the
/// perturbation f(u) = f_coeff * u^{1/4}.
double s_star(double t, const JumpTable& table, double f_coeff = 0.0);

struct PlusMinus {
    double plus = 0.0;
    double minus = 0.0;
};

/// Positive and negative parts: S = plus - minus, |S| = plus + minus.
PlusMinus plus_minus(double s);
PlusMinus s_plus_minus(double t, const JumpTable& table);

struct IntegrateOptions {
    int max_power = 9;
};

/// Exact integral of S^k over [a, b] as a sum over constant segments.
/// Normalized domain: integral of S^k(q1 q2 x) dx.
double integrate_power(const JumpTable& table, double a, double b, int k, Domain domain,
                       const IntegrateOptions& options = {});

/// Exact integral of S_+^k (sign = +1) or S_-^k (sign = -1).
double integrate_part_power(const JumpTable& table, double a, double b, int k, int sign,
                            Domain domain, const IntegrateOptions& options = {});

/// Read-only view binding a table to one argument domain.
class StepFunctionView {
public:
    StepFunctionView(const JumpTable& table, Domain domain);

    Domain domain() const { return domain_; }
    const JumpTable& table() const { return *table_; }

    /// Largest admissible argument in this view's domain.
    double max_argument() const;

    double operator()(double arg) const;
    double integrate_power(double a, double b, int k) const;

private:
    double to_raw(double arg) const;

    const JumpTable* table_;
    Domain domain_;
};

struct SpotCheckResult {
    int samples = 0;
    double max_relative_error = 0.0;
    std::uint64_t worst_index = 0;
};

/// Recomputes randomly chosen prefixes in extended precision and reports the
/// largest relative deviation from the stored double prefixes.
SpotCheckResult spot_check_prefixes(const JumpTable& table, int samples = 100,
                                    std::uint64_t seed = 1);

}  // namespace wdl
