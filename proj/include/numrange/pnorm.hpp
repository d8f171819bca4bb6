#pragma once

#include <cmath>
#include <stdexcept>

namespace numrange {

/// Validated conjugate exponent pair (p, q) with 1/p + 1/q = 1 and 1 < p < inf.
class PNorm {
public:
    explicit PNorm(double p) : p_(p), q_(p / (p - 1.0)) {
        if (!std::isfinite(p) || p <= 1.0)
            throw std::invalid_argument("PNorm: exponent must satisfy 1 < p < inf");
    }

    double p() const { return p_; }
    double q() const { return q_; }

    /// The space with the roles of p and q exchanged.
    PNorm conjugate() const { return PNorm(q_); }

private:
    double p_;
    double q_;
};

} // namespace numrange
