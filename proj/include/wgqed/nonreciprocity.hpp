#ifndef WGQED_NONRECIPROCITY_HPP
#define WGQED_NONRECIPROCITY_HPP

// Direction-dependent reflection from two differentially detuned atoms.
//
// With mean photon detuning D = v_g k - (omega_1 + omega_2)/2, splitting
// s = omega_1 - omega_2 and alpha = 2 k l, the reflection for incidence on
// the omega_1 side is
//
//       G^2 (e^{ia}-1) + i G [ (e^{ia}+1)(D + i G0) - (e^{ia}-1) s/2 ]
//   r = - -----------------------------------------------------------
//            (D + i (G + G0))^2 + G^2 e^{ia} - (s/2)^2
//
// Swapping the atoms flips the sign of s, and the non-reciprocity measure is
// eta = |r(s)/r(-s)|^2, with the tan-form closed expression
//
//   eta = [ (D + G tan kl)^2 + (s/2 tan kl - G0)^2 ]
//         / [ (D + G tan kl)^2 + (s/2 tan kl + G0)^2 ].
//
// eta = 1 exactly when kl is a multiple of pi (commuting sites) or when
// gamma0 = 0 (no dissipative channel), and eta(-s) = 1/eta(s) always.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "wgqed/core.hpp"
#include "wgqed/errors.hpp"
#include "wgqed/transfer.hpp"

namespace wgqed {

struct TwoAtomConfig {
    double mean_detuning = 0.0;  // photon minus pair average, Gamma-units
    double splitting = 0.0;      // s = omega_1 - omega_2
    double gamma = 1.0;
    double gamma0 = 0.0;
    double theta = 0.0;          // kl in radians; alpha = 2 theta is derived

    void validate() const {
        detail::require_finite(mean_detuning, "mean_detuning");
        detail::require_finite(splitting, "splitting");
        detail::require_finite(theta, "theta");
        if (gamma <= 0.0)
            throw validation_error("gamma must be positive, got " + std::to_string(gamma));
        if (gamma0 < 0.0)
            throw validation_error("gamma0 must be non-negative, got " + std::to_string(gamma0));
    }
};

// The equivalent two-atom chain: d = [+s/2, -s/2] around the pair average,
// uniform gap phase theta, probed at the mean detuning.
inline EmitterChain two_atom_chain(const TwoAtomConfig& cfg) {
    cfg.validate();
    return build_uniform_chain(cfg.gamma, cfg.gamma0,
                               {+0.5 * cfg.splitting, -0.5 * cfg.splitting}, cfg.theta);
}

// Closed-form two-atom reflection (incidence on the omega_1 side). Agrees
// with chain_scatter on two_atom_chain(cfg) to rounding.
inline cplx two_atom_reflection(const TwoAtomConfig& cfg) {
    cfg.validate();
    const double g = cfg.gamma, g0 = cfg.gamma0;
    const cplx ea(std::cos(2.0 * cfg.theta), std::sin(2.0 * cfg.theta));
    const cplx dbar(cfg.mean_detuning, g0);
    const cplx num = g * g * (ea - 1.0) +
                     cplx(0, 1) * g * ((ea + 1.0) * dbar - (ea - 1.0) * 0.5 * cfg.splitting);
    const cplx dfull(cfg.mean_detuning, g + g0);
    const cplx den = dfull * dfull + g * g * ea - 0.25 * cfg.splitting * cfg.splitting;
    if (std::abs(den) < detail::kPivotFloor)
        throw degeneracy_error("two-atom reflection denominator is degenerate");
    return -num / den;
}

namespace detail {

// eta from the reflection ratio of the two atom orderings; valid everywhere,
// including the tan singularities of the closed form.
inline double eta_from_reflections(const TwoAtomConfig& cfg) {
    TwoAtomConfig swapped = cfg;
    swapped.splitting = -cfg.splitting;
    const cplx r12 = two_atom_reflection(cfg);
    const cplx r21 = two_atom_reflection(swapped);
    if (std::abs(r21) == 0.0) {
        std::ostringstream msg;
        msg << "undefined non-reciprocity ratio: r21 = 0 (r12 = " << r12 << ", r21 = " << r21 << ")";
        throw degeneracy_error(msg.str());
    }
    return std::norm(r12) / std::norm(r21);
}

} // namespace detail

// Closed-form eta. Near kl = pi/2 (mod pi) the tan expression loses meaning
// and the value is computed from the reflection ratio instead.
inline double eta_closed_form(const TwoAtomConfig& cfg) {
    cfg.validate();
    if (std::abs(std::cos(cfg.theta)) < 1e-12)
        return detail::eta_from_reflections(cfg);
    const double tn = std::tan(cfg.theta);
    const double a = cfg.mean_detuning + cfg.gamma * tn;
    const double x = 0.5 * cfg.splitting * tn;
    const double num = a * a + (x - cfg.gamma0) * (x - cfg.gamma0);
    const double den = a * a + (x + cfg.gamma0) * (x + cfg.gamma0);
    if (den == 0.0)
        return detail::eta_from_reflections(cfg);
    return num / den;
}

// eta from full transfer-matrix transport: both atom orderings are built as
// chains and the squared reflection moduli are compared. Throws if the
// reversed ordering does not reflect at all.
inline double eta_numeric(const TwoAtomConfig& cfg) {
    TwoAtomConfig swapped = cfg;
    swapped.splitting = -cfg.splitting;
    const ScatteringResult fwd = chain_scatter(two_atom_chain(cfg), ProbeDetuning{cfg.mean_detuning});
    const ScatteringResult rev = chain_scatter(two_atom_chain(swapped), ProbeDetuning{cfg.mean_detuning});
    if (std::abs(rev.r) == 0.0) {
        std::ostringstream msg;
        msg << "undefined non-reciprocity ratio: r21 = 0 (r12 = " << fwd.r << ", r21 = " << rev.r << ")";
        throw degeneracy_error(msg.str());
    }
    return std::norm(fwd.r) / std::norm(rev.r);
}

// eta tabulated over a (theta, s) rectangle, row-major with theta as the
// slow axis. All values are positive; the field is identically 1 when
// gamma0 = 0.
struct EtaField {
    std::vector<double> theta_grid;
    std::vector<double> s_grid;
    std::vector<double> values;  // values[i_theta * s_grid.size() + i_s]

    double at(std::size_t i_theta, std::size_t i_s) const {
        return values[i_theta * s_grid.size() + i_s];
    }
};

inline EtaField eta_map(const SweepGrid& theta_grid, const SweepGrid& s_grid,
                        double gamma, double gamma0, double mean_detuning) {
    EtaField field;
    field.theta_grid = theta_grid.values();
    field.s_grid = s_grid.values();
    field.values.resize(field.theta_grid.size() * field.s_grid.size());
    TwoAtomConfig cfg;
    cfg.gamma = gamma;
    cfg.gamma0 = gamma0;
    cfg.mean_detuning = mean_detuning;
    cfg.validate();
    std::size_t k = 0;
    for (double th : field.theta_grid) {
        cfg.theta = th;
        for (double s : field.s_grid) {
            cfg.splitting = s;
            field.values[k++] = eta_closed_form(cfg);
        }
    }
    return field;
}

namespace detail {

// Golden-section maximization on [lo, hi]; f must be unimodal on the
// bracket. Returns the abscissa of the maximum to tolerance tol.
template <typename F>
double golden_section_max(F&& f, double lo, double hi, double tol) {
    constexpr double invphi = 0.6180339887498949;
    double a = lo, b = hi;
    double c = b - invphi * (b - a);
    double d = a + invphi * (b - a);
    double fc = f(c), fd = f(d);
    while (b - a > tol) {
        if (fc > fd) {
            b = d; d = c; fd = fc;
            c = b - invphi * (b - a);
            fc = f(c);
        } else {
            a = c; c = d; fc = fd;
            d = a + invphi * (b - a);
            fd = f(d);
        }
    }
    return 0.5 * (a + b);
}

// One parabolic-vertex step at spacing h. Value-only searches cannot place
// an interior optimum better than ~sqrt(eps) because the objective is flat
// there; fitting the local parabola recovers the next ~1e-10. Falls back to
// x when the curvature is not resolvable or the stencil leaves the bounds.
template <typename F>
double parabolic_polish(F&& f, double x, double lo, double hi, double h) {
    if (x - h < lo || x + h > hi) return x;
    const double f0 = f(x - h), f1 = f(x), f2 = f(x + h);
    const double curvature = f0 - 2.0 * f1 + f2;
    if (!(curvature < 0.0)) return x;
    const double vertex = x + 0.5 * h * (f0 - f2) / curvature;
    return std::clamp(vertex, x - h, x + h);
}

} // namespace detail

struct EtaRegion {
    double theta_lo, theta_hi;
    double s_lo, s_hi;
};

struct EtaArgmax {
    double theta;
    double s;
    double eta;
};

// Locates the maximum of eta over the rectangle: a coarse row-major grid
// scan (first maximizer wins ties) followed by coordinate-wise
// golden-section refinement to 1e-8 parameter resolution. Either axis may be
// degenerate (lo == hi) to pin that coordinate.
inline EtaArgmax eta_argmax(const EtaRegion& region, double gamma, double gamma0,
                            double mean_detuning) {
    if (!(region.theta_lo <= region.theta_hi) || !(region.s_lo <= region.s_hi))
        throw validation_error("degenerate region: lower bounds must not exceed upper bounds");

    TwoAtomConfig cfg;
    cfg.gamma = gamma;
    cfg.gamma0 = gamma0;
    cfg.mean_detuning = mean_detuning;
    cfg.validate();
    auto eval = [&cfg](double th, double s) {
        TwoAtomConfig c = cfg;
        c.theta = th;
        c.splitting = s;
        return eta_closed_form(c);
    };

    constexpr std::size_t kCoarse = 201;
    const bool theta_free = region.theta_hi > region.theta_lo;
    const bool s_free = region.s_hi > region.s_lo;
    const std::size_t nth = theta_free ? kCoarse : 1;
    const std::size_t ns = s_free ? kCoarse : 1;
    auto coord = [](double lo, double hi, std::size_t i, std::size_t n) {
        if (n == 1) return lo;
        return lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    };

    double best_th = region.theta_lo, best_s = region.s_lo;
    double best = -1.0;
    for (std::size_t i = 0; i < nth; ++i) {
        const double th = coord(region.theta_lo, region.theta_hi, i, nth);
        for (std::size_t j = 0; j < ns; ++j) {
            const double s = coord(region.s_lo, region.s_hi, j, ns);
            const double e = eval(th, s);
            if (e > best) { best = e; best_th = th; best_s = s; }
        }
    }

    const double th_step = theta_free
        ? (region.theta_hi - region.theta_lo) / static_cast<double>(kCoarse - 1) : 0.0;
    const double s_step = s_free
        ? (region.s_hi - region.s_lo) / static_cast<double>(kCoarse - 1) : 0.0;
    constexpr double kTol = 1e-9;
    for (int round = 0; round < 24; ++round) {
        const double prev_th = best_th, prev_s = best_s;
        if (theta_free) {
            const double lo = std::max(region.theta_lo, best_th - th_step);
            const double hi = std::min(region.theta_hi, best_th + th_step);
            best_th = detail::golden_section_max(
                [&](double th) { return eval(th, best_s); }, lo, hi, kTol);
        }
        if (s_free) {
            const double lo = std::max(region.s_lo, best_s - s_step);
            const double hi = std::min(region.s_hi, best_s + s_step);
            best_s = detail::golden_section_max(
                [&](double s) { return eval(best_th, s); }, lo, hi, kTol);
        }
        if (std::abs(best_th - prev_th) < kTol && std::abs(best_s - prev_s) < kTol) break;
    }
    constexpr double kPolishStep = 1e-5;
    if (theta_free)
        best_th = detail::parabolic_polish([&](double th) { return eval(th, best_s); },
                                           best_th, region.theta_lo, region.theta_hi,
                                           kPolishStep);
    if (s_free)
        best_s = detail::parabolic_polish([&](double s) { return eval(best_th, s); },
                                          best_s, region.s_lo, region.s_hi, kPolishStep);
    return {best_th, best_s, eval(best_th, best_s)};
}

} // namespace wgqed

#endif // WGQED_NONRECIPROCITY_HPP
