#ifndef WGQED_TRANSFER_HPP
#define WGQED_TRANSFER_HPP

// Transfer-matrix transport of a single photon through an emitter chain.
//
// Conventions:
//   Atoms are numbered 1..N from the incidence side; theta_j is the gap
//   phase following atom j. The chain matrix is P = L_1 L_2 ... L_N with
//
//       L_j = [ e^{i th_j} (1 - i/delta_j)    -i e^{-i th_j} / delta_j   ]
//             [ i e^{i th_j} / delta_j         e^{-i th_j} (1 + i/delta_j)]
//
//   and delta_j = (Delta_probe - d_j + i*gamma0)/gamma. The amplitudes are
//
//       r = P_12 / P_22,      t = e^{-i sum theta_j} / P_22,
//
//   normalized so an empty waveguide gives r = 0, t = 1 and a single
//   resonant lossless atom gives r = -1, t = 0. det L_j = 1 analytically,
//   so the product stays well conditioned for any chain length used here.
//
//   When every theta_j is a multiple of pi, L_j = (-1)^{n_j} [ 1 +
//   rho_-/delta_j ] with the nilpotent rho_- = sigma_y - i sigma_z; all
//   sites commute and the product collapses to the closed form
//
//       r = -i G S / (1 + i G S),   t = 1 / (1 + i G S),
//       S = sum_j (Delta_j + i gamma0)^{-1},
//
//   with the free-propagation prefactors cancelling exactly.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <string>
#include <vector>

#include "wgqed/core.hpp"
#include "wgqed/errors.hpp"

namespace wgqed {

// Nilpotent step operator rho_- = sigma_y - i sigma_z; rho_- rho_- = 0 exactly.
inline Transfer2x2 rho_minus() {
    return {cplx(0, -1), cplx(0, -1), cplx(0, 1), cplx(0, 1)};
}

// Single-site transfer matrix. Throws on delta_scaled == 0 (resonant
// lossless atom): the matrix diverges there and callers must take the
// closed-form limit r = -1, t = 0 instead.
inline Transfer2x2 single_site_matrix(cplx delta_scaled, double theta) {
    if (delta_scaled == cplx(0.0, 0.0))
        throw validation_error("singular site: scaled detuning is exactly zero "
                               "(resonant lossless atom); use the limit r = -1, t = 0");
    const cplx inv = 1.0 / delta_scaled;
    const cplx ep(std::cos(theta), std::sin(theta));
    const cplx em = std::conj(ep);
    return {ep * (1.0 - cplx(0, 1) * inv), cplx(0, -1) * em * inv,
            cplx(0, 1) * ep * inv, em * (1.0 + cplx(0, 1) * inv)};
}

// Single-atom amplitudes at raw detuning Delta = Delta_probe - d:
//   r = -i G / (Delta + i (G + G0)),  t = (Delta + i G0) / (Delta + i (G + G0)).
// The identity t = 1 + r holds for all inputs. Finite at Delta = 0.
inline ScatteringResult single_atom_amplitudes(double delta, double gamma, double gamma0) {
    detail::require_finite(delta, "detuning");
    if (gamma <= 0.0)
        throw validation_error("gamma must be positive, got " + std::to_string(gamma));
    if (gamma0 < 0.0)
        throw validation_error("gamma0 must be non-negative, got " + std::to_string(gamma0));
    const cplx den(delta, gamma + gamma0);
    return {cplx(0, -gamma) / den, cplx(delta, gamma0) / den, false};
}

namespace detail {

inline bool any_singular_site(const std::vector<cplx>& deltas) {
    return std::any_of(deltas.begin(), deltas.end(),
                       [](cplx d) { return d == cplx(0.0, 0.0); });
}

constexpr double kPivotFloor = 1e-300;

} // namespace detail

// Full transfer-matrix product. Exactly resonant lossless sites are handled
// by the documented limit: a single-site chain returns r = -1, t = 0; longer
// chains re-evaluate at a probe nudged by ~1e-12*gamma. Either path sets
// limit_applied on the result.
inline ScatteringResult chain_scatter(const EmitterChain& chain, ProbeDetuning probe) {
    std::vector<cplx> deltas = scaled_detunings(chain, probe);
    bool limit = false;
    if (detail::any_singular_site(deltas)) {
        if (chain.size() == 1)
            return {cplx(-1, 0), cplx(0, 0), true};
        double eps = 1e-12 * chain.gamma();
        for (int attempt = 0; attempt < 8 && detail::any_singular_site(deltas); ++attempt) {
            probe.value += eps;
            eps *= 2.0;
            deltas = scaled_detunings(chain, probe);
        }
        if (detail::any_singular_site(deltas))
            throw degeneracy_error("could not nudge probe off an exactly resonant site");
        limit = true;
    }

    Transfer2x2 p = Transfer2x2::identity();
    double phase_sum = 0.0;
    for (std::size_t j = 0; j < chain.size(); ++j) {
        p = p * single_site_matrix(deltas[j], chain.phases()[j]);
        phase_sum += chain.phases()[j];
    }
    if (std::abs(p.m22) < detail::kPivotFloor)
        throw degeneracy_error("transfer product is numerically degenerate (|P22| underflow)");
    const cplx strip(std::cos(phase_sum), -std::sin(phase_sum));
    return {p.m12 / p.m22, strip / p.m22, limit};
}

// Closed form for commensurate lattices (every theta_j = n_j * pi within
// 1e-9). An exactly resonant lossless atom makes S diverge; the result is
// the limit r = -1, t = 0, flagged.
inline ScatteringResult commensurate_scatter(const EmitterChain& chain, ProbeDetuning probe) {
    detail::require_finite(probe.value, "probe detuning");
    for (std::size_t j = 0; j < chain.size(); ++j) {
        const double th = chain.phases()[j];
        const double frac = th - std::round(th / std::numbers::pi) * std::numbers::pi;
        if (std::abs(frac) > 1e-9)
            throw validation_error("phase theta_" + std::to_string(j + 1) + " = " +
                                   std::to_string(th) + " is not a multiple of pi");
    }
    cplx sum(0, 0);
    for (double d : chain.detunings()) {
        const cplx term(probe.value - d, chain.gamma0());
        if (term == cplx(0.0, 0.0))
            return {cplx(-1, 0), cplx(0, 0), true};
        sum += 1.0 / term;
    }
    const cplx igs = cplx(0, 1) * chain.gamma() * sum;
    return {-igs / (1.0 + igs), 1.0 / (1.0 + igs), false};
}

// Two-atom multiple-scattering (Fabry-Perot) oracle: composes the chain
// response from single-atom amplitudes and the interatomic gap phi = theta_1
// via the geometric series of bounces. Independent of the matrix product;
// must agree with chain_scatter to 1e-10.
inline ScatteringResult fabry_perot_two_atom(const EmitterChain& chain, ProbeDetuning probe) {
    if (chain.size() != 2)
        throw validation_error("fabry_perot_two_atom requires exactly 2 atoms, got " +
                               std::to_string(chain.size()));
    const ScatteringResult a1 = single_atom_amplitudes(
        probe.value - chain.detunings()[0], chain.gamma(), chain.gamma0());
    const ScatteringResult a2 = single_atom_amplitudes(
        probe.value - chain.detunings()[1], chain.gamma(), chain.gamma0());
    const double phi = chain.phases()[0];
    const cplx ph2(std::cos(2.0 * phi), std::sin(2.0 * phi));
    const cplx den = 1.0 - a1.r * a2.r * ph2;
    if (std::abs(den) < detail::kPivotFloor)
        throw degeneracy_error("Fabry-Perot round-trip denominator is degenerate");
    return {a1.r + a1.t * a1.t * a2.r * ph2 / den, a1.t * a2.t / den, false};
}

namespace detail {

// Dense complex Gaussian elimination with partial pivoting; a is row-major
// n x n, rhs length n. Solves in place, returns the solution in rhs.
inline void solve_dense(std::vector<cplx>& a, std::vector<cplx>& rhs, std::size_t n) {
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        double best = std::abs(a[col * n + col]);
        for (std::size_t row = col + 1; row < n; ++row) {
            const double mag = std::abs(a[row * n + col]);
            if (mag > best) { best = mag; piv = row; }
        }
        if (best < kPivotFloor)
            throw degeneracy_error("segment linear system is singular");
        if (piv != col) {
            for (std::size_t k = col; k < n; ++k) std::swap(a[piv * n + k], a[col * n + k]);
            std::swap(rhs[piv], rhs[col]);
        }
        const cplx inv = 1.0 / a[col * n + col];
        for (std::size_t row = col + 1; row < n; ++row) {
            const cplx f = a[row * n + col] * inv;
            if (f == cplx(0.0, 0.0)) continue;
            for (std::size_t k = col + 1; k < n; ++k) a[row * n + k] -= f * a[col * n + k];
            a[row * n + col] = 0.0;
            rhs[row] -= f * rhs[col];
        }
    }
    for (std::size_t row = n; row-- > 0;) {
        cplx acc = rhs[row];
        for (std::size_t k = row + 1; k < n; ++k) acc -= a[row * n + k] * rhs[k];
        rhs[row] = acc / a[row * n + row];
    }
}

} // namespace detail

// Global oracle: solves all 2(N+1) plane-wave segment amplitudes as one
// linear system built from single-atom scattering relations (not from the
// transfer matrices), with boundary conditions A_0 = 1, B_N = 0. Atom j sits
// at accumulated phase position p_j = theta_1 + ... + theta_{j-1}; fields in
// segment m are A_m e^{ikx} + B_m e^{-ikx} in the global frame, so r = B_0
// and t = A_N directly.
inline ScatteringResult segment_solve(const EmitterChain& chain, ProbeDetuning probe) {
    const std::size_t natoms = chain.size();
    const std::size_t n = 2 * (natoms + 1);
    std::vector<cplx> a(n * n, cplx(0, 0));
    std::vector<cplx> rhs(n, cplx(0, 0));

    a[0 * n + 0] = 1.0;            // A_0 = 1
    rhs[0] = 1.0;
    a[1 * n + (n - 1)] = 1.0;      // B_N = 0

    double pos = 0.0;
    std::size_t row = 2;
    for (std::size_t j = 0; j < natoms; ++j) {
        const ScatteringResult amp = single_atom_amplitudes(
            probe.value - chain.detunings()[j], chain.gamma(), chain.gamma0());
        const cplx ep(std::cos(pos), std::sin(pos));
        const cplx em = std::conj(ep);
        const std::size_t al = 2 * j, bl = 2 * j + 1, ar = 2 * j + 2, br = 2 * j + 3;
        // outgoing right: A_{j+1} e^{ip} = t A_j e^{ip} + r B_{j+1} e^{-ip}
        a[row * n + ar] = ep;
        a[row * n + al] = -amp.t * ep;
        a[row * n + br] = -amp.r * em;
        ++row;
        // outgoing left: B_j e^{-ip} = r A_j e^{ip} + t B_{j+1} e^{-ip}
        a[row * n + bl] = em;
        a[row * n + al] = -amp.r * ep;
        a[row * n + br] = -amp.t * em;
        ++row;
        pos += chain.phases()[j];
    }

    detail::solve_dense(a, rhs, n);
    return {rhs[1], rhs[n - 2], false};
}

// One tabulated spectrum point.
struct SpectrumRow {
    double probe;
    ScatteringResult result;
};

// Evaluates chain_scatter over a probe grid; rows are in grid order
// (strictly increasing probe).
inline std::vector<SpectrumRow> spectrum(const EmitterChain& chain, const SweepGrid& grid) {
    std::vector<SpectrumRow> rows;
    rows.reserve(grid.count());
    for (std::size_t i = 0; i < grid.count(); ++i) {
        const double x = grid.value(i);
        rows.push_back({x, chain_scatter(chain, ProbeDetuning{x})});
    }
    return rows;
}

} // namespace wgqed

#endif // WGQED_TRANSFER_HPP
