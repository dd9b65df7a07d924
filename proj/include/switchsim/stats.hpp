#pragma once

#include <cmath>
#include <cstddef>
#include <span>

namespace switchsim {

/// Neumaier compensated accumulator. Summation order is fixed by the caller,
/// so ensemble reductions are bit-identical regardless of worker count.
class CompensatedSum {
public:
    void add(double v) {
        const double t = sum_ + v;
        if (std::abs(sum_) >= std::abs(v)) {
            comp_ += (sum_ - t) + v;
        } else {
            comp_ += (v - t) + sum_;
        }
        sum_ = t;
    }

    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

struct MeanStderr {
    double mean = 0.0;
    double stderr_ = 0.0;
};

/// Two-pass compensated mean and standard error of the mean.
inline MeanStderr mean_stderr(std::span<const double> values) {
    MeanStderr out;
    const std::size_t n = values.size();
    if (n == 0) return out;
    CompensatedSum s;
    for (double v : values) s.add(v);
    out.mean = s.value() / static_cast<double>(n);
    if (n < 2) return out;
    CompensatedSum sq;
    for (double v : values) {
        const double d = v - out.mean;
        sq.add(d * d);
    }
    const double var = sq.value() / static_cast<double>(n - 1);
    out.stderr_ = std::sqrt(var / static_cast<double>(n));
    return out;
}

/// Standard error of a binomial proportion estimate.
inline double binomial_stderr(double p_hat, std::size_t n) {
    if (n == 0) return 0.0;
    const double v = p_hat * (1.0 - p_hat) / static_cast<double>(n);
    return v > 0.0 ? std::sqrt(v) : 0.0;
}

}  // namespace switchsim
