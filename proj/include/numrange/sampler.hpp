#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "numrange/matrix.hpp"
#include "numrange/planar.hpp"
#include "numrange/sip.hpp"

namespace numrange {

/// Sphere-grid resolution: magnitude samples x phase samples per swept phase.
struct GridSpec {
    int magnitude_resolution = 1024;
    int phase_resolution = 512;
};

inline GridSpec default_grid(int n) {
    // combinatorial blowup guard for n >= 3
    return n == 2 ? GridSpec{1024, 512} : GridSpec{64, 64};
}

/// Everything needed to regenerate any cloud point from its index.
struct CloudProvenance {
    ComplexMatrix matrix;
    PNorm pn;
    GridSpec grid;

    SphereGrid sphere() const {
        return SphereGrid(matrix.order(), pn, grid.magnitude_resolution, grid.phase_resolution);
    }
};

/// Finite sample of V(T) = {[Tx, x] : ||x||_p = 1}. Points are stored in grid
/// order; the generating parameters of points[i] are recoverable through the
/// provenance, so every point is reproducible without storing parameters
/// per point.
struct PointCloud {
    std::vector<Vec2> points;
    std::optional<CloudProvenance> provenance;

    std::vector<double> params_of(std::uint64_t i) const {
        return require_provenance().sphere().params_at(i);
    }

    /// Recompute [Tx_i, x_i] from the stored generating parameters.
    Vec2 regenerate(std::uint64_t i) const {
        const CloudProvenance& prov = require_provenance();
        const CVec x = prov.sphere().vector_at(i);
        return to_vec2(sip_lp(prov.matrix.apply(x), x, prov.pn));
    }

    const CloudProvenance& require_provenance() const {
        if (!provenance)
            throw std::logic_error("PointCloud: no provenance (transformed cloud)");
        return *provenance;
    }
};

inline PointCloud sample_range(const ComplexMatrix& T, const PNorm& pn, const GridSpec& grid) {
    const SphereGrid sg(T.order(), pn, grid.magnitude_resolution, grid.phase_resolution);
    PointCloud cloud;
    cloud.points.reserve(static_cast<std::size_t>(sg.size()));
    for (std::uint64_t i = 0; i < sg.size(); ++i) {
        const CVec x = sg.vector_at(i);
        cloud.points.push_back(to_vec2(sip_lp(T.apply(x), x, pn)));
    }
    cloud.provenance = CloudProvenance{T, pn, grid};
    return cloud;
}

namespace detail {

// Continuous re-parametrization of the sphere used by the local refiner.
// n = 2: (theta, phi); n >= 3: (u_1 .. u_{n-1}, phi_2 .. phi_n) where the
// magnitude weights are clamped to >= 0 and renormalized to sum 1.
inline CVec refine_vector(const std::vector<double>& t, int n, const PNorm& pn) {
    CVec x(static_cast<std::size_t>(n));
    if (n == 2) {
        x = sphere_point({t[0], 0.0, t[1]}, pn);
    } else {
        std::vector<double> u(static_cast<std::size_t>(n));
        double sum = 0.0;
        for (int k = 0; k < n - 1; ++k) {
            u[static_cast<std::size_t>(k)] = std::fmax(0.0, t[static_cast<std::size_t>(k)]);
            sum += u[static_cast<std::size_t>(k)];
        }
        u[static_cast<std::size_t>(n - 1)] = std::fmax(0.0, 1.0 - sum);
        sum += u[static_cast<std::size_t>(n - 1)];
        if (sum == 0.0) { u[0] = 1.0; sum = 1.0; }
        x[0] = Complex{std::pow(u[0] / sum, 1.0 / pn.p()), 0.0};
        for (int k = 1; k < n; ++k)
            x[static_cast<std::size_t>(k)] =
                std::polar(std::pow(u[static_cast<std::size_t>(k)] / sum, 1.0 / pn.p()),
                           t[static_cast<std::size_t>(n - 2 + k)]);
    }
    return x;
}

inline std::vector<double> refine_params_from_grid(const std::vector<double>& grid_params, int n) {
    if (n == 2) return grid_params; // already (theta, phi)
    // grid params carry all n simplex weights; drop the dependent last one
    std::vector<double> t(grid_params.begin(), grid_params.begin() + (n - 1));
    t.insert(t.end(), grid_params.begin() + n, grid_params.end());
    return t;
}

} // namespace detail

/// Numerical radius estimate with the parameters attaining it.
struct RadiusResult {
    double value = 0.0;
    std::vector<double> argmax;
    double refinement_residual = 0.0;
};

/// Coarse grid maximum of |[Tx, x]| followed by rounds of coordinate-wise
/// interval shrinking around the incumbent. Always a lower bound on v(T).
inline RadiusResult numerical_radius(const ComplexMatrix& T, const PNorm& pn,
                                     const GridSpec& grid, double refine_tol = 1e-9) {
    if (!(refine_tol > 0.0))
        throw std::invalid_argument("numerical_radius: refine_tol must be > 0");
    const int n = T.order();
    const SphereGrid sg(n, pn, grid.magnitude_resolution, grid.phase_resolution);

    const auto objective = [&](const CVec& x) { return std::abs(sip_lp(T.apply(x), x, pn)); };

    double best = -1.0;
    std::uint64_t best_index = 0;
    for (std::uint64_t i = 0; i < sg.size(); ++i) {
        const double v = objective(sg.vector_at(i));
        if (v > best) {
            best = v;
            best_index = i;
        }
    }

    std::vector<double> t = detail::refine_params_from_grid(sg.params_at(best_index), n);
    const std::size_t n_mag = static_cast<std::size_t>(n == 2 ? 1 : n - 1);
    const std::size_t n_par = t.size();

    std::vector<double> window(n_par);
    const double mag_step = (n == 2 ? 1.5707963267948966 : 1.0) /
                            static_cast<double>(grid.magnitude_resolution - 1);
    const double phase_step = 2.0 * 3.141592653589793 / static_cast<double>(grid.phase_resolution);
    for (std::size_t i = 0; i < n_par; ++i) window[i] = i < n_mag ? mag_step : phase_step;

    const auto eval_at = [&](const std::vector<double>& par) {
        return objective(detail::refine_vector(par, n, pn));
    };

    double width = mag_step;
    for (int round = 0; round < 40 && width > refine_tol; ++round) {
        for (std::size_t ip = 0; ip < n_par; ++ip) {
            std::vector<double> cand = t;
            double local_best = best;
            double local_arg = t[ip];
            for (int k = -4; k <= 4; ++k) {
                double v = t[ip] + window[ip] * static_cast<double>(k) / 4.0;
                if (n == 2 && ip == 0) v = std::fmin(1.5707963267948966, std::fmax(0.0, v));
                if (n > 2 && ip < n_mag) v = std::fmin(1.0, std::fmax(0.0, v));
                cand[ip] = v;
                const double obj = eval_at(cand);
                if (obj > local_best) {
                    local_best = obj;
                    local_arg = v;
                }
            }
            t[ip] = local_arg;
            best = local_best;
        }
        width = 0.0;
        for (std::size_t i = 0; i < n_par; ++i) {
            window[i] *= 0.5;
            width = std::fmax(width, window[i]);
        }
    }

    RadiusResult res;
    res.argmax = t;
    res.value = eval_at(t);
    res.refinement_residual = width;
    return res;
}

/// max over the sphere grid of ||Tx||_p; a lower bound on the operator norm.
inline double operator_norm_estimate(const ComplexMatrix& T, const PNorm& pn,
                                     const GridSpec& grid) {
    const SphereGrid sg(T.order(), pn, grid.magnitude_resolution, grid.phase_resolution);
    double best = 0.0;
    for (std::uint64_t i = 0; i < sg.size(); ++i)
        best = std::fmax(best, norm_lp(T.apply(sg.vector_at(i)), pn));
    return best;
}

} // namespace numrange
