#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace conflab {

enum class Verdict { convergent, divergent, inconclusive };

std::string_view to_string(Verdict v);

/// Thresholds of the truncation-sequence classifier.
///
/// Increments over the trailing window are fitted as geometric in the shell
/// index (ratio q per shell). q <= r_max is convergent, q >= 1 divergent. In
/// between, the apparent power-law exponent s of the increments in k decides:
/// s >= s_conv is convergent, s <= s_div is divergent (log-type growth, e.g.
/// a harmonic tail), and so is a last increment that is still >= eps of the
/// value. Anything else is inconclusive.
struct LimitPolicy {
    double r_max = 0.92;
    double eps = 0.05;
    int window = 4;
    double s_conv = 2.0;
    double s_div = 1.1;
    double monotone_tol = 1e-4;  ///< allowed relative decrease between terms
    double flat_tol = 1e-12;     ///< increments below this (relative) count as zero
};

struct TruncationValue {
    int k = 0;
    double value = 0.0;
};

struct LimitResult {
    Verdict verdict = Verdict::inconclusive;
    std::optional<double> extrapolated;  ///< present iff convergent
    double ratio = 0.0;                  ///< fitted increment ratio per shell
    double slope = 0.0;                  ///< log2(ratio): growth exponent in log(1/(1-R))
    double residual = 0.0;               ///< RMS residual of the log-increment fit
    double power_exponent = 0.0;         ///< s in increments ~ k^(-s)
};

/// Classifies a nondecreasing truncation sequence as convergent (with a
/// geometric-tail extrapolation), divergent, or inconclusive.
/// Throws DataError for fewer than 4 values or a decrease beyond tolerance.
LimitResult classify_limit(std::span<const TruncationValue> values, const LimitPolicy& policy = {});

}  // namespace conflab
