#pragma once

#include <complex>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

#include "numrange/pnorm.hpp"

namespace numrange {

using Complex = std::complex<double>;
using CVec = std::vector<Complex>;

/// l_p norm (sum |x_k|^p)^(1/p).
inline double norm_lp(const CVec& x, const PNorm& pn) {
    double acc = 0.0;
    for (const Complex& xk : x) acc += std::pow(std::abs(xk), pn.p());
    return std::pow(acc, 1.0 / pn.p());
}

/// The unique semi-inner-product compatible with the l_p norm:
///
///   [x, y] = sum_k x_k conj(y_k) |y_k|^(p-2) / ||y||^(p-2),   [x, 0] = 0.
///
/// Zero components of y contribute nothing to the sum, also for p < 2 where
/// |y_k|^(p-2) alone would blow up.
inline Complex sip_lp(const CVec& x, const CVec& y, const PNorm& pn) {
    if (x.size() != y.size())
        throw std::invalid_argument("sip_lp: vectors must have equal length");
    const double ny = norm_lp(y, pn);
    if (ny == 0.0) return {0.0, 0.0};
    Complex acc{0.0, 0.0};
    for (std::size_t k = 0; k < x.size(); ++k) {
        const double ay = std::abs(y[k]);
        if (ay == 0.0) continue;
        // conj(y_k) |y_k|^(p-2) = |y_k|^(p-1) * unit-phase, which never overflows
        acc += x[k] * std::conj(y[k] / ay) * std::pow(ay, pn.p() - 1.0);
    }
    return acc / std::pow(ny, pn.p() - 2.0);
}

/// Point of the unit sphere of l_p^2: magnitudes |cos t|^(2/p), |sin t|^(2/p)
/// with independent phases. Magnitudes take |.| before the fractional power so
/// every t in [0, 2pi] is valid; the phases absorb signs.
struct SphereParam2 {
    double theta = 0.0;
    double phi1 = 0.0;
    double phi2 = 0.0;
};

inline CVec sphere_point(const SphereParam2& sp, const PNorm& pn) {
    const double c = std::cos(sp.theta);
    const double s = std::sin(sp.theta);
    const double m1 = std::pow(c * c, 1.0 / pn.p());
    const double m2 = std::pow(s * s, 1.0 / pn.p());
    return {std::polar(m1, sp.phi1), std::polar(m2, sp.phi2)};
}

/// Deterministic enumeration of unit vectors of l_p^n.
///
/// n = 2: theta sweeps [0, pi/2] (magnitude_resolution values, endpoints
/// included) and one phase difference sweeps [0, 2pi) (phase_resolution
/// values); the first coordinate is kept real since [Tx, x] only sees phase
/// differences.
///
/// n >= 3: magnitudes come from the discrete simplex
/// {u >= 0, sum u = 1, u_k multiple of 1/(magnitude_resolution-1)} via
/// m_k = u_k^(1/p), and the n-1 phases after the first sweep [0, 2pi)
/// independently. Corners of the simplex give the unit coordinate vectors.
class SphereGrid {
public:
    SphereGrid(int n, const PNorm& pn, int magnitude_resolution, int phase_resolution)
        : n_(n), pn_(pn), kmag_(magnitude_resolution), kphase_(phase_resolution) {
        if (n < 2 || n > 8)
            throw std::invalid_argument("SphereGrid: dimension must be in [2, 8]");
        if (magnitude_resolution < 2)
            throw std::invalid_argument("SphereGrid: magnitude resolution must be >= 2");
        if (phase_resolution < 1)
            throw std::invalid_argument("SphereGrid: phase resolution must be >= 1");
        if (n_ == 2) {
            mag_count_ = static_cast<std::uint64_t>(kmag_);
        } else {
            mag_count_ = compositions(static_cast<std::uint64_t>(kmag_ - 1), n_);
        }
        phase_count_ = 1;
        for (int i = 1; i < n_; ++i) phase_count_ *= static_cast<std::uint64_t>(kphase_);
    }

    int dimension() const { return n_; }
    const PNorm& pnorm() const { return pn_; }
    int magnitude_resolution() const { return kmag_; }
    int phase_resolution() const { return kphase_; }

    std::uint64_t size() const { return mag_count_ * phase_count_; }

    /// Generating parameters of grid point i: for n = 2, (theta, phi); for
    /// n >= 3, the n simplex weights u_k followed by the n-1 swept phases.
    std::vector<double> params_at(std::uint64_t i) const {
        const std::uint64_t mi = i / phase_count_;
        std::uint64_t pi = i % phase_count_;
        std::vector<double> out;
        if (n_ == 2) {
            out.push_back(theta_at(mi));
        } else {
            for (int part : simplex_at(mi))
                out.push_back(static_cast<double>(part) / static_cast<double>(kmag_ - 1));
        }
        std::vector<double> phases(static_cast<std::size_t>(n_ - 1));
        for (int t = n_ - 2; t >= 0; --t) {
            phases[static_cast<std::size_t>(t)] = phase_at(pi % kphase_);
            pi /= kphase_;
        }
        out.insert(out.end(), phases.begin(), phases.end());
        return out;
    }

    CVec vector_at(std::uint64_t i) const {
        const std::vector<double> par = params_at(i);
        CVec x(static_cast<std::size_t>(n_));
        if (n_ == 2) {
            x = sphere_point({par[0], 0.0, par[1]}, pn_);
        } else {
            x[0] = Complex{std::pow(par[0], 1.0 / pn_.p()), 0.0};
            for (int k = 1; k < n_; ++k)
                x[static_cast<std::size_t>(k)] =
                    std::polar(std::pow(par[static_cast<std::size_t>(k)], 1.0 / pn_.p()),
                               par[static_cast<std::size_t>(n_ - 1 + k)]);
        }
        return x;
    }

private:
    double theta_at(std::uint64_t i) const {
        const double half_pi = 1.5707963267948966;
        return half_pi * static_cast<double>(i) / static_cast<double>(kmag_ - 1);
    }
    double phase_at(std::uint64_t j) const {
        return 2.0 * 3.141592653589793 * static_cast<double>(j) / static_cast<double>(kphase_);
    }

    // number of compositions of s into n nonnegative parts = C(s+n-1, n-1)
    static std::uint64_t compositions(std::uint64_t s, int n) {
        std::uint64_t num = 1;
        for (int j = 1; j <= n - 1; ++j) {
            num = num * (s + static_cast<std::uint64_t>(j)) / static_cast<std::uint64_t>(j);
        }
        return num;
    }

    // lexicographically ascending unranking of the composition grid
    std::vector<int> simplex_at(std::uint64_t rank) const {
        std::vector<int> parts(static_cast<std::size_t>(n_));
        std::uint64_t rest = static_cast<std::uint64_t>(kmag_ - 1);
        for (int k = 0; k < n_ - 1; ++k) {
            std::uint64_t v = 0;
            for (;; ++v) {
                const std::uint64_t block = compositions(rest - v, n_ - 1 - k);
                if (rank < block) break;
                rank -= block;
            }
            parts[static_cast<std::size_t>(k)] = static_cast<int>(v);
            rest -= v;
        }
        parts[static_cast<std::size_t>(n_ - 1)] = static_cast<int>(rest);
        return parts;
    }

    int n_;
    PNorm pn_;
    int kmag_;
    int kphase_;
    std::uint64_t mag_count_ = 0;
    std::uint64_t phase_count_ = 0;
};

/// Maximum relative violations of the semi-inner-product axioms observed on
/// seeded random samples. The first four fields are the axioms; the s.i.p. is
/// *not* additive in the second slot, so that violation is reported as a
/// diagnostic and never counted as a failure.
struct SipAxiomReport {
    double additivity_first = 0.0;
    double homogeneity_first = 0.0;
    double conj_homogeneity_second = 0.0;
    double positivity = 0.0;
    double cauchy_schwarz = 0.0;
    double second_slot_additivity = 0.0; // diagnostic only
    std::uint64_t seed = 0;
    int samples = 0;

    bool axioms_ok(double tol) const {
        return additivity_first <= tol && homogeneity_first <= tol &&
               conj_homogeneity_second <= tol && positivity <= tol && cauchy_schwarz <= tol;
    }
};

namespace detail {

// Uniform double in [-1, 1) from the top 53 bits; keeps reports identical
// across standard library implementations.
inline double rand_unit(std::mt19937_64& rng) {
    return 2.0 * (static_cast<double>(rng() >> 11) * 0x1.0p-53) - 1.0;
}

inline Complex rand_complex(std::mt19937_64& rng) {
    const double re = rand_unit(rng);
    const double im = rand_unit(rng);
    return {re, im};
}

inline CVec rand_cvec(std::mt19937_64& rng, int n) {
    CVec v(static_cast<std::size_t>(n));
    for (auto& c : v) c = rand_complex(rng);
    return v;
}

} // namespace detail

inline SipAxiomReport sip_axiom_report(const PNorm& pn, int n, int sample_count,
                                       std::uint64_t seed) {
    if (sample_count < 1)
        throw std::invalid_argument("sip_axiom_report: sample_count must be >= 1");
    std::mt19937_64 rng(seed);
    SipAxiomReport rep;
    rep.seed = seed;
    rep.samples = sample_count;

    const auto track = [](double& slot, double violation) {
        if (violation > slot) slot = violation;
    };

    for (int it = 0; it < sample_count; ++it) {
        const CVec x = detail::rand_cvec(rng, n);
        const CVec y = detail::rand_cvec(rng, n);
        const CVec z = detail::rand_cvec(rng, n);
        const Complex lambda = detail::rand_complex(rng);

        CVec xpy(x.size());
        for (std::size_t k = 0; k < x.size(); ++k) xpy[k] = x[k] + y[k];
        CVec lx(x.size()), ly(y.size()), ypz(y.size());
        for (std::size_t k = 0; k < x.size(); ++k) {
            lx[k] = lambda * x[k];
            ly[k] = lambda * y[k];
            ypz[k] = y[k] + z[k];
        }

        const Complex xz = sip_lp(x, z, pn);
        const Complex yz = sip_lp(y, z, pn);
        const Complex xy = sip_lp(x, y, pn);
        const Complex xx = sip_lp(x, x, pn);
        const Complex yy = sip_lp(y, y, pn);

        // (i) additivity in the first slot
        track(rep.additivity_first, std::abs(sip_lp(xpy, z, pn) - xz - yz) /
                                        std::fmax(1.0, std::abs(xz) + std::abs(yz)));
        // (ii) homogeneity in the first slot, conjugate homogeneity in the second
        track(rep.homogeneity_first,
              std::abs(sip_lp(lx, y, pn) - lambda * xy) / std::fmax(1.0, std::abs(lambda * xy)));
        track(rep.conj_homogeneity_second,
              std::abs(sip_lp(x, ly, pn) - std::conj(lambda) * xy) /
                  std::fmax(1.0, std::abs(lambda * xy)));
        // (iii) positivity: [x, x] real and > 0 for x != 0
        track(rep.positivity, (std::fmax(0.0, -xx.real()) + std::abs(xx.imag())) /
                                  std::fmax(1.0, std::abs(xx)));
        // (iv) Cauchy-Schwarz
        const double lhs = std::norm(xy);
        const double rhs = xx.real() * yy.real();
        track(rep.cauchy_schwarz, std::fmax(0.0, lhs - rhs) / std::fmax(1.0, rhs));
        // diagnostic: additivity in the second slot fails for p != 2
        track(rep.second_slot_additivity,
              std::abs(sip_lp(x, ypz, pn) - xy - sip_lp(x, z, pn)) /
                  std::fmax(1.0, std::abs(xy) + std::abs(sip_lp(x, z, pn))));
    }
    return rep;
}

} // namespace numrange
