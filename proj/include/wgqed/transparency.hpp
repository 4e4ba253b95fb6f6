#ifndef WGQED_TRANSPARENCY_HPP
#define WGQED_TRANSPARENCY_HPP

// Parity-dependent detuning assignment protocols.
//
// At commensurate phase (theta_j = n pi) all site matrices commute and the
// response depends only on S = sum_j (Delta_j + i gamma0)^{-1}. A pair of
// atoms whose photon-relative detunings are +D and -D contributes
// -2i gamma0 / (D^2 + gamma0^2) to S, which vanishes without extraneous
// loss. Hence an even chain of such pairs is transparent at the common pair
// midpoint, and an odd chain reduces to the single leftover atom.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "wgqed/core.hpp"
#include "wgqed/errors.hpp"
#include "wgqed/transfer.hpp"

namespace wgqed {

enum class SchemeKind { identical, even_pairwise, odd_pairwise_plus_one };

namespace detail {

inline void check_magnitudes(const std::vector<double>& mags) {
    for (std::size_t i = 0; i < mags.size(); ++i) {
        require_finite(mags[i], "magnitudes");
        if (mags[i] <= 0.0)
            throw validation_error("pair magnitude #" + std::to_string(i + 1) +
                                   " must be positive, got " + std::to_string(mags[i]));
        for (std::size_t k = 0; k < i; ++k)
            if (mags[k] == mags[i])
                throw validation_error("duplicate pair magnitude " + std::to_string(mags[i]));
    }
}

inline void check_permutation(const std::vector<std::size_t>& perm, std::size_t n) {
    if (perm.size() != n)
        throw validation_error("permutation length " + std::to_string(perm.size()) +
                               " does not match list length " + std::to_string(n));
    std::vector<bool> seen(n, false);
    for (std::size_t p : perm) {
        if (p >= n || seen[p])
            throw validation_error("invalid permutation: index " + std::to_string(p) +
                                   (p >= n ? " out of range" : " repeated"));
        seen[p] = true;
    }
}

// out[i] = base[perm[i]]; an empty permutation is the identity.
inline std::vector<double> apply_permutation(const std::vector<double>& base,
                                             const std::vector<std::size_t>& perm) {
    if (perm.empty()) return base;
    check_permutation(perm, base.size());
    std::vector<double> out(base.size());
    for (std::size_t i = 0; i < base.size(); ++i) out[i] = base[perm[i]];
    return out;
}

} // namespace detail

// Detunings [+m1, -m1, +m2, -m2, ...] reordered by the permutation
// (out[i] = base[perm[i]]; empty permutation keeps the base order).
inline std::vector<double> make_even_pairwise(const std::vector<double>& magnitudes,
                                              const std::vector<std::size_t>& permutation = {}) {
    if (magnitudes.empty())
        throw validation_error("even pairwise scheme needs at least one pair magnitude");
    detail::check_magnitudes(magnitudes);
    std::vector<double> base;
    base.reserve(2 * magnitudes.size());
    for (double m : magnitudes) {
        base.push_back(+m);
        base.push_back(-m);
    }
    return detail::apply_permutation(base, permutation);
}

// Odd chain: the pair list with one leftover atom at detuning delta0
// appended before permuting, so the permutation places the odd one out.
inline std::vector<double> make_odd_chain(const std::vector<double>& magnitudes, double delta0,
                                          const std::vector<std::size_t>& permutation = {}) {
    detail::check_magnitudes(magnitudes);
    detail::require_finite(delta0, "delta0");
    std::vector<double> base;
    base.reserve(2 * magnitudes.size() + 1);
    for (double m : magnitudes) {
        base.push_back(+m);
        base.push_back(-m);
    }
    base.push_back(delta0);
    return detail::apply_permutation(base, permutation);
}

// Detuning-assignment protocol descriptor. For identical chains, magnitudes
// holds the (equal) detunings verbatim.
struct DetuningScheme {
    SchemeKind kind = SchemeKind::even_pairwise;
    std::vector<double> magnitudes;
    std::optional<double> leftover;              // odd scheme only
    std::vector<std::size_t> permutation;        // empty = identity

    std::vector<double> detunings() const {
        switch (kind) {
        case SchemeKind::identical:
            if (magnitudes.empty())
                throw validation_error("identical scheme needs at least one detuning");
            for (double d : magnitudes)
                if (d != magnitudes.front())
                    throw validation_error("identical scheme requires equal detunings");
            return magnitudes;
        case SchemeKind::even_pairwise:
            return make_even_pairwise(magnitudes, permutation);
        case SchemeKind::odd_pairwise_plus_one:
            if (!leftover)
                throw validation_error("odd scheme requires a leftover detuning");
            return make_odd_chain(magnitudes, *leftover, permutation);
        }
        throw validation_error("unknown scheme kind");
    }
};

// |1 - t| at the given probe; zero (to rounding) for an even pairwise chain
// probed at the common pair midpoint with gamma0 = 0.
inline double transparency_deviation(const EmitterChain& chain, ProbeDetuning probe) {
    return std::abs(1.0 - chain_scatter(chain, probe).t);
}

namespace detail {

// Index of the leftover atom: the unique detuning value whose removal
// leaves a multiset symmetric under negation. Pairs must match bit-exactly,
// as make_odd_chain produces them.
inline std::size_t find_odd_leftover(std::span<const double> detunings) {
    if (detunings.size() % 2 == 0)
        throw validation_error("odd-parity chain must have an odd number of atoms");
    for (std::size_t cand = 0; cand < detunings.size(); ++cand) {
        std::vector<double> rest;
        rest.reserve(detunings.size() - 1);
        for (std::size_t j = 0; j < detunings.size(); ++j)
            if (j != cand) rest.push_back(detunings[j]);
        std::sort(rest.begin(), rest.end());
        bool symmetric = true;
        for (std::size_t j = 0; j < rest.size() / 2; ++j)
            if (rest[j] != -rest[rest.size() - 1 - j]) { symmetric = false; break; }
        if (symmetric) return cand;
    }
    throw validation_error("chain detunings are not a pairwise-opposite multiset plus one leftover");
}

} // namespace detail

// Maximum over the grid of |t_chain(Delta) - t_single(Delta; Delta0)|.
//
// The protocol keeps the pair detunings photon-relative: as the probe scans,
// each pair stays equal-and-opposite about the probe frequency while the
// leftover atom is fixed, so the pairs cancel in the transfer product at
// every grid point and the chain reproduces the leftover atom's line. Exact
// (to rounding) for gamma0 = 0 at commensurate phase; the residual is merely
// reported otherwise.
inline double odd_chain_residual(const EmitterChain& chain, const SweepGrid& probe_grid) {
    const std::size_t leftover_idx = detail::find_odd_leftover(chain.detunings());
    const double delta0 = chain.detunings()[leftover_idx];
    double worst = 0.0;
    for (std::size_t i = 0; i < probe_grid.count(); ++i) {
        const double x = probe_grid.value(i);
        std::vector<double> dets(chain.detunings().begin(), chain.detunings().end());
        for (std::size_t j = 0; j < dets.size(); ++j)
            if (j != leftover_idx) dets[j] += x;
        const EmitterChain shifted(chain.gamma(), chain.gamma0(), std::move(dets),
                                   {chain.phases().begin(), chain.phases().end()});
        const cplx t_chain = chain_scatter(shifted, ProbeDetuning{x}).t;
        const cplx t_single =
            single_atom_amplitudes(x - delta0, chain.gamma(), chain.gamma0()).t;
        worst = std::max(worst, std::abs(t_chain - t_single));
    }
    return worst;
}

// Resonant transmission floor t = gamma0 / (gamma0 + N gamma) for N
// identical atoms resonant with the probe at theta = pi.
inline double resonant_floor(std::size_t n_atoms, double gamma, double gamma0) {
    if (n_atoms < 1) throw validation_error("n_atoms must be at least 1");
    if (gamma <= 0.0) throw validation_error("gamma must be positive");
    if (gamma0 < 0.0) throw validation_error("gamma0 must be non-negative");
    return gamma0 / (gamma0 + static_cast<double>(n_atoms) * gamma);
}

// Half-width at half-depth of the dip profile F = 1 - |t|^2, extracted by a
// bisection search for the half-depth crossings on either side of the dip
// plus linear interpolation inside the bracketing cells. The profile must be
// Lorentzian (the commensurate identical-atom case is, exactly); anything
// else fails the shape check.
inline double collective_linewidth_fit(const std::vector<SpectrumRow>& rows) {
    if (rows.size() < 16)
        throw validation_error("spectrum too short for a linewidth fit");
    const std::size_t n = rows.size();
    std::vector<double> dip(n);
    std::size_t center = 0;
    for (std::size_t i = 0; i < n; ++i) {
        dip[i] = 1.0 - rows[i].result.transmittance();
        if (dip[i] > dip[center]) center = i;
    }
    const double peak = dip[center];
    if (peak < 1e-6)
        throw validation_error("spectrum has no dip to fit");
    const double level = 0.5 * peak;
    if (center == 0 || center + 1 == n || dip.front() > level || dip.back() > level)
        throw validation_error("dip is not resolved inside the grid");

    // bisection for the last index with dip >= level, on each flank
    auto cross = [&](bool right) {
        std::size_t lo = center;
        std::size_t hi = right ? n - 1 : 0;
        while ((right ? hi - lo : lo - hi) > 1) {
            const std::size_t mid = right ? lo + (hi - lo) / 2 : hi + (lo - hi) / 2;
            (dip[mid] >= level ? lo : hi) = mid;
        }
        const double x0 = rows[lo].probe, x1 = rows[hi].probe;
        const double f0 = dip[lo], f1 = dip[hi];
        return x0 + (level - f0) * (x1 - x0) / (f1 - f0);
    };
    const double xr = cross(true);
    const double xl = cross(false);
    const double width = 0.5 * (xr - xl);
    const double mid = 0.5 * (xr + xl);

    double residual = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double u = (rows[i].probe - mid) / width;
        residual = std::max(residual, std::abs(dip[i] - peak / (1.0 + u * u)));
    }
    if (residual > 1e-3 * peak)
        throw validation_error("spectrum is not Lorentzian (fit residual " +
                               std::to_string(residual) + " exceeds threshold)");
    return width;
}

} // namespace wgqed

#endif // WGQED_TRANSPARENCY_HPP
