#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "numrange/matrix.hpp"
#include "numrange/planar.hpp"
#include "numrange/pnorm.hpp"

namespace numrange {

/// Theorem hypothesis does not hold for the given operator/exponent.
struct hypothesis_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// The (r, s) parameter hit a vanishing denominator; callers scanning a
/// family should skip the parameter.
struct degenerate_parameter_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// c_p = (1/p)^(1/p) (1/q)^(1/q): the numerical radius of the 2x2 nilpotent
/// shift on l_p^2. Symmetric in p and q.
inline double critical_constant(const PNorm& pn) {
    return std::pow(1.0 / pn.p(), 1.0 / pn.p()) * std::pow(1.0 / pn.q(), 1.0 / pn.q());
}

struct Disc {
    Complex center{0.0, 0.0};
    double radius = 0.0;
};

/// V(alpha*I + beta*N) for the nilpotent shift N: disc about alpha of radius
/// |beta| c_p. With alpha = 0, beta = 1 this also covers the n x n operator
/// with a single off-diagonal unit entry.
inline Disc disc_form(Complex alpha, Complex beta, const PNorm& pn) {
    return {alpha, std::abs(beta) * critical_constant(pn)};
}

/// One-parameter circle family whose union is V([[1, b], [0, -1]]) on l_p^2:
/// center (cos 2t, 0), radius R(t) = |b| (sin^2 t)^(1/p) (cos^2 t)^(1/q).
struct CircleFamily {
    Complex b{0.0, 0.0};
    PNorm pn;
};

struct CircleAt {
    double center = 0.0; // on the real axis
    double radius = 0.0;
};

inline CircleAt circle_at(const CircleFamily& cf, double theta) {
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    const double radius =
        std::abs(cf.b) * std::pow(s * s, 1.0 / cf.pn.p()) * std::pow(c * c, 1.0 / cf.pn.q());
    return {std::cos(2.0 * theta), radius};
}

/// g(z) = (|b|/2) (1-z)^(1/p) (1+z)^(1/q); concave on [-1, 1] and satisfying
/// g(cos 2t) = R(t). Concavity of this profile is what makes the union of the
/// circle family convex.
inline double radial_profile_g(double z, Complex b, const PNorm& pn) {
    if (!(z >= -1.0 && z <= 1.0))
        throw std::domain_error("radial_profile_g: z must lie in [-1, 1]");
    return 0.5 * std::abs(b) * std::pow(1.0 - z, 1.0 / pn.p()) * std::pow(1.0 + z, 1.0 / pn.q());
}

/// Point of the envelope of the circle family, i.e. the parametric boundary
/// of V([[1, b], [0, -1]]):
///
///   x   = cos 2t + f(t)
///   y^2 = R(t)^2 - f(t)^2
///   f(t) = (|b|^2 / 2) (tan^2 t)^((2-p)/p) [ cos^2(t)/p - sin^2(t)/q ]
///
/// The point belongs to the boundary iff tan^(4/q) t >= (|b|^2/4)(1/p -
/// tan^2(t)/q)^2; y^2 is reported even when negative, with admissible=false.
struct BoundaryPoint {
    double theta = 0.0;
    double x = 0.0;
    double y_squared = 0.0;
    double f_value = 0.0;
    bool admissible = false;
    /// f'(t) - 2 sin 2t (central difference); nonzero on the boundary per the
    /// paper's remark. Diagnostic only, never a pass/fail criterion.
    double envelope_denominator = 0.0;
};

namespace detail {

inline double envelope_f(Complex b, const PNorm& pn, double theta) {
    const double c2 = std::cos(theta) * std::cos(theta);
    const double s2 = std::sin(theta) * std::sin(theta);
    const double tan2 = std::fmax(s2 / c2, 1e-300);
    const double bb = std::norm(b);
    const double power = std::exp(((2.0 - pn.p()) / pn.p()) * std::log(tan2));
    return 0.5 * bb * power * (c2 / pn.p() - s2 / pn.q());
}

} // namespace detail

inline BoundaryPoint envelope_point(Complex b, const PNorm& pn, double theta) {
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    const double c2 = c * c;
    const double s2 = s * s;
    if (std::fmin(c2, s2) <= 1e-30)
        throw std::domain_error(
            "envelope_point: theta in the excluded set {0, pi/2, pi, 3pi/2, 2pi}");

    BoundaryPoint bp;
    bp.theta = theta;
    bp.f_value = detail::envelope_f(b, pn, theta);
    const double radius =
        std::abs(b) * std::pow(s2, 1.0 / pn.p()) * std::pow(c2, 1.0 / pn.q());
    bp.x = std::cos(2.0 * theta) + bp.f_value;
    bp.y_squared = radius * radius - bp.f_value * bp.f_value;

    const double tan2 = s2 / c2;
    const double bb = std::norm(b);
    const double lhs = std::pow(tan2, 2.0 / pn.q());
    const double rhs_root = 1.0 / pn.p() - tan2 / pn.q();
    bp.admissible = lhs >= 0.25 * bb * rhs_root * rhs_root;
    // the two admissibility routes agree up to roundoff; keep y^2 >= 0 exact
    if (bp.admissible && bp.y_squared < 0.0 &&
        bp.y_squared > -1e-14 * (radius * radius + bp.f_value * bp.f_value))
        bp.y_squared = 0.0;

    const double h = 1e-6;
    bp.envelope_denominator =
        (detail::envelope_f(b, pn, theta + h) - detail::envelope_f(b, pn, theta - h)) / (2.0 * h) -
        2.0 * std::sin(2.0 * theta);
    return bp;
}

/// Axis-aligned ellipse centered on the real axis. Semi-axes store the
/// magnitudes |F|, |G|; the paper's F and G can be negative depending on
/// parameter ordering but trace the same curve.
struct Ellipse {
    double center_x = 0.0;
    double semi_axis_x = 0.0;
    double semi_axis_y = 0.0;
};

/// Cross-section of V(T) for real 2x2 T at fixed magnitude parameter t:
/// sweeping the phase difference traces the ellipse with center
/// h = a cos^2 t + d sin^2 t and semi-axes |F|, |G| where
/// F/G = b (cos^2 t)^(1/q) (sin^2 t)^(1/p) +/- c (cos^2 t)^(1/p) (sin^2 t)^(1/q).
inline Ellipse real_ellipse_at(const ComplexMatrix& T, const PNorm& pn, double theta) {
    if (T.order() != 2)
        throw std::invalid_argument("real_ellipse_at: matrix must be 2x2");
    if (!T.is_real())
        throw std::invalid_argument("real_ellipse_at: matrix entries must be real");
    const double a = T.at(0, 0).real();
    const double b = T.at(0, 1).real();
    const double c = T.at(1, 0).real();
    const double d = T.at(1, 1).real();
    const double c2 = std::cos(theta) * std::cos(theta);
    const double s2 = std::sin(theta) * std::sin(theta);
    const double bq = std::pow(c2, 1.0 / pn.q()) * std::pow(s2, 1.0 / pn.p());
    const double cq = std::pow(c2, 1.0 / pn.p()) * std::pow(s2, 1.0 / pn.q());
    const double f = b * bq + c * cq;
    const double g = b * bq - c * cq;
    return {a * c2 + d * s2, std::fabs(f), std::fabs(g)};
}

/// Hypotheses of the non-convexity theorem: a, d real and nonzero with
/// a + d = 0; b, c nonzero with |b| = |c|; b1 c2 + b2 c1 = 0 (the proof's form
/// of Re(b)Im(c) + Re(c)Im(b) = 0); p distinct from 1, 2 and infinity.
inline void check_nonconvex_hypotheses(const ComplexMatrix& T, const PNorm& pn) {
    if (T.order() != 2) throw hypothesis_error("nonconvex family: matrix must be 2x2");
    const Complex a = T.at(0, 0), b = T.at(0, 1), c = T.at(1, 0), d = T.at(1, 1);
    if (std::fabs(a.imag()) > 1e-12 || std::fabs(d.imag()) > 1e-12)
        throw hypothesis_error("nonconvex family: a, d must be real");
    if (a == Complex{} || d == Complex{})
        throw hypothesis_error("nonconvex family: a, d must be nonzero");
    if (std::abs(a + d) > 1e-12)
        throw hypothesis_error("nonconvex family: a + d = 0 required");
    if (b == Complex{} || c == Complex{})
        throw hypothesis_error("nonconvex family: b, c must be nonzero");
    if (std::fabs(std::abs(b) - std::abs(c)) > 1e-12)
        throw hypothesis_error("nonconvex family: |b| = |c| required");
    if (std::fabs(b.real() * c.imag() + b.imag() * c.real()) > 1e-12)
        throw hypothesis_error("nonconvex family: b1*c2 + b2*c1 = 0 required");
    if (std::fabs(pn.p() - 2.0) < 1e-9)
        throw hypothesis_error("nonconvex family: p not in {1, 2, inf} required");
}

/// Ellipse E(r, s) of the non-convexity theorem at magnitudes r, s >= 0 with
/// r^p + s^p = 1: center H = a (r^p - s^p), semi-axes |F|, |G| with
///
///   F, G = lambda^2 r s (r^(2(p-2)) - s^(2(p-2))) / D-+,
///   D-+  = [(b1 r^(p-2) -+ c1 s^(p-2))^2 + (b2 r^(p-2) +- c2 s^(p-2))^2]^(1/2).
inline Ellipse nonconvex_ellipse_at(const ComplexMatrix& T, const PNorm& pn, double r, double s) {
    check_nonconvex_hypotheses(T, pn);
    if (r < 0.0 || s < 0.0)
        throw std::invalid_argument("nonconvex_ellipse_at: r, s must be >= 0");
    const double p = pn.p();
    if (std::fabs(std::pow(r, p) + std::pow(s, p) - 1.0) > 1e-12)
        throw std::invalid_argument("nonconvex_ellipse_at: r^p + s^p = 1 required");

    const double a = T.at(0, 0).real();
    const double b1 = T.at(0, 1).real(), b2 = T.at(0, 1).imag();
    const double c1 = T.at(1, 0).real(), c2 = T.at(1, 0).imag();
    const double lambda2 = std::norm(T.at(0, 1));

    const double center = a * (std::pow(r, p) - std::pow(s, p));
    if (r == 0.0 || s == 0.0) return {center, 0.0, 0.0};

    const double rp = std::pow(r, p - 2.0);
    const double sp = std::pow(s, p - 2.0);
    const double numer = lambda2 * r * s * (rp * rp - sp * sp);
    const double df = std::hypot(b1 * rp - c1 * sp, b2 * rp + c2 * sp);
    const double dg = std::hypot(b1 * rp + c1 * sp, -b2 * rp + c2 * sp);
    if (df < 1e-12 || dg < 1e-12)
        throw degenerate_parameter_error("nonconvex_ellipse_at: vanishing denominator");
    return {center, std::fabs(numer / df), std::fabs(numer / dg)};
}

/// v([[1, b], [0, -1]]) <= 1 + |b| c_p.
inline double radius_upper_bound(Complex b, const PNorm& pn) {
    return 1.0 + std::abs(b) * critical_constant(pn);
}

/// One-parameter family of circles or ellipses whose union is V(T). All of
/// the paper's families have centers on the real axis and are fully swept by
/// t in [0, pi/2].
class ParametricRegion {
public:
    enum class Kind { Circles, Ellipses };

    static ParametricRegion circles(const CircleFamily& cf) {
        ParametricRegion f;
        f.kind_ = Kind::Circles;
        f.at_ = [cf](double t) {
            const CircleAt c = circle_at(cf, t);
            return Ellipse{c.center, c.radius, c.radius};
        };
        return f;
    }

    static ParametricRegion real_ellipses(const ComplexMatrix& T, const PNorm& pn) {
        if (T.order() != 2 || !T.is_real())
            throw std::invalid_argument("ParametricRegion: real 2x2 matrix required");
        ParametricRegion f;
        f.kind_ = Kind::Ellipses;
        f.at_ = [T, pn](double t) { return real_ellipse_at(T, pn, t); };
        return f;
    }

    /// The non-convexity family over the constraint r^p + s^p = 1, staying on
    /// the constraint exactly through r = (cos^2 t)^(1/p), s = (sin^2 t)^(1/p).
    static ParametricRegion nonconvex_ellipses(const ComplexMatrix& T, const PNorm& pn) {
        check_nonconvex_hypotheses(T, pn);
        ParametricRegion f;
        f.kind_ = Kind::Ellipses;
        f.at_ = [T, pn](double t) {
            const double c = std::cos(t), s = std::sin(t);
            return nonconvex_ellipse_at(T, pn, std::pow(c * c, 1.0 / pn.p()),
                                        std::pow(s * s, 1.0 / pn.p()));
        };
        return f;
    }

    Kind kind() const { return kind_; }
    double t_min() const { return 0.0; }
    double t_max() const { return 1.5707963267948966; }

    Ellipse at(double t) const { return at_(t); }

    /// Membership functional m(t): zero exactly when the point lies on the
    /// curve at parameter t. Circles use dist^2 - R^2 (defined also for
    /// R = 0); ellipses use the quadratic form minus 1 and are undefined
    /// (NaN) at degenerate parameters.
    double membership_functional(Vec2 point, double t) const {
        Ellipse e;
        try {
            e = at_(t);
        } catch (const degenerate_parameter_error&) {
            return std::numeric_limits<double>::quiet_NaN();
        }
        const double dx = point.x - e.center_x;
        if (kind_ == Kind::Circles) {
            const double r = e.semi_axis_x;
            return dx * dx + point.y * point.y - r * r;
        }
        if (e.semi_axis_x < 1e-12 || e.semi_axis_y < 1e-12)
            return std::numeric_limits<double>::quiet_NaN();
        const double u = dx / e.semi_axis_x;
        const double v = point.y / e.semi_axis_y;
        return u * u + v * v - 1.0;
    }

private:
    Kind kind_ = Kind::Circles;
    std::function<Ellipse(double)> at_;
};

struct MembershipResult {
    bool member = false;
    double parameter = 0.0;    // located zero of the membership functional
    double min_residual = 0.0; // min of m over valid scan nodes (signed)
};

/// Scans the family parameter for zeros of the membership functional; sign
/// changes are refined by bisection to parameter accuracy 1e-10.
inline MembershipResult region_membership(const ParametricRegion& family, Vec2 point,
                                          int scan_resolution = 512, double tol = -1.0) {
    if (scan_resolution < 16)
        throw std::invalid_argument("region_membership: scan_resolution must be >= 16");
    if (tol < 0.0) tol = 1e-9 * (1.0 + point.x * point.x + point.y * point.y);

    const double t0 = family.t_min(), t1 = family.t_max();
    const double step = (t1 - t0) / static_cast<double>(scan_resolution);

    MembershipResult res;
    res.min_residual = std::numeric_limits<double>::infinity();
    double prev_t = 0.0, prev_m = 0.0;
    bool have_prev = false;

    for (int i = 0; i <= scan_resolution; ++i) {
        const double t = t0 + step * static_cast<double>(i);
        const double m = family.membership_functional(point, t);
        if (std::isnan(m)) {
            have_prev = false;
            continue;
        }
        if (m < res.min_residual) res.min_residual = m;
        if (std::fabs(m) <= tol) {
            res.member = true;
            res.parameter = t;
            return res;
        }
        if (have_prev && ((prev_m < 0.0) != (m < 0.0))) {
            double lo = prev_t, hi = t, flo = prev_m;
            for (int it = 0; it < 64 && hi - lo > 1e-10; ++it) {
                const double mid = 0.5 * (lo + hi);
                const double fm = family.membership_functional(point, mid);
                if (std::isnan(fm)) break;
                if ((fm < 0.0) == (flo < 0.0)) {
                    lo = mid;
                    flo = fm;
                } else {
                    hi = mid;
                }
            }
            res.member = true;
            res.parameter = 0.5 * (lo + hi);
            return res;
        }
        prev_t = t;
        prev_m = m;
        have_prev = true;
    }
    return res;
}

} // namespace numrange
