#include "conflab/limit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "conflab/errors.hpp"

namespace conflab {

std::string_view to_string(Verdict v) {
    switch (v) {
        case Verdict::convergent: return "convergent";
        case Verdict::divergent: return "divergent";
        case Verdict::inconclusive: return "inconclusive";
    }
    return "inconclusive";
}

namespace {

struct LineFit {
    double intercept = 0.0;
    double slope = 0.0;
    double rms = 0.0;
};

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
    const double n = static_cast<double>(x.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    LineFit f;
    f.slope = sxx > 0.0 ? sxy / sxx : 0.0;
    f.intercept = my - f.slope * mx;
    double ss = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double r = y[i] - (f.intercept + f.slope * x[i]);
        ss += r * r;
    }
    f.rms = std::sqrt(ss / n);
    return f;
}

}  // namespace

LimitResult classify_limit(std::span<const TruncationValue> values, const LimitPolicy& policy) {
    if (values.size() < 4)
        throw DataError("classify_limit needs at least 4 truncation values, got " + std::to_string(values.size()));

    LimitResult out;
    for (const auto& tv : values) {
        if (std::isnan(tv.value)) throw DataError("truncation value at k = " + std::to_string(tv.k) + " is NaN");
        if (std::isinf(tv.value)) {
            out.verdict = Verdict::divergent;
            out.ratio = std::numeric_limits<double>::infinity();
            out.slope = out.ratio;
            return out;
        }
    }

    double scale = 0.0;
    for (const auto& tv : values) scale = std::max(scale, std::abs(tv.value));
    for (std::size_t i = 1; i < values.size(); ++i) {
        if (values[i].k <= values[i - 1].k) throw DataError("truncation indices must increase");
        if (values[i].value < values[i - 1].value - policy.monotone_tol * scale)
            throw DataError("truncation sequence decreases at k = " + std::to_string(values[i].k) + " (" +
                            std::to_string(values[i - 1].value) + " -> " + std::to_string(values[i].value) + ")");
    }

    const double last = values.back().value;
    const double floor = policy.flat_tol * std::max(std::abs(last), std::numeric_limits<double>::min());
    const std::size_t w = std::min<std::size_t>(static_cast<std::size_t>(std::max(policy.window, 2)), values.size() - 1);

    std::vector<double> ks, logk, logd;
    bool flat = true;
    for (std::size_t i = values.size() - w; i < values.size(); ++i) {
        const double d = values[i].value - values[i - 1].value;
        if (d > floor) flat = false;
        ks.push_back(values[i].k);
        logk.push_back(std::log(static_cast<double>(std::max(values[i].k, 1))));
        logd.push_back(std::log(std::max(d, floor)));
    }
    if (flat) {
        out.verdict = Verdict::convergent;
        out.extrapolated = last;
        return out;
    }

    const LineFit geo = fit_line(ks, logd);
    const LineFit pw = fit_line(logk, logd);
    out.ratio = std::exp(geo.slope);
    out.slope = geo.slope / std::log(2.0);
    out.residual = geo.rms;
    out.power_exponent = -pw.slope;

    const double q = out.ratio;
    const double last_increment = std::exp(geo.intercept + geo.slope * ks.back());
    const double d_last = values.back().value - values[values.size() - 2].value;

    if (q >= 1.0) {
        out.verdict = Verdict::divergent;
    } else if (q <= policy.r_max || out.power_exponent >= policy.s_conv) {
        out.verdict = Verdict::convergent;
        out.extrapolated = last + last_increment * q / (1.0 - q);
    } else if (out.power_exponent <= policy.s_div || d_last >= policy.eps * std::abs(last)) {
        out.verdict = Verdict::divergent;
    } else {
        out.verdict = Verdict::inconclusive;
    }
    return out;
}

}  // namespace conflab
