#ifndef WGQED_CAVITY_HPP
#define WGQED_CAVITY_HPP

// N atoms at the antinodes of a driven two-mirror cavity:
//
//   t = 2 kappa / (2 kappa + i (delta - g^2 sum_j 1/Delta_j)),
//
// with delta = omega_cavity - omega_laser and Delta_j = omega_j - omega_laser
// (atom minus laser - note the sign is opposite to the waveguide convention,
// where detunings are photon minus atom). Internal cavity losses and atomic
// damping are taken as zero, which is the regime where the formula holds.
//
// At delta = 0 the system maps onto a commensurate lossless waveguide chain
// with Gamma_eff = g^2/(2 kappa) and waveguide detunings equal to minus the
// cavity ones; both routes then give identical transmission.

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <string>
#include <vector>

#include "wgqed/core.hpp"
#include "wgqed/errors.hpp"
#include "wgqed/transfer.hpp"

namespace wgqed {

struct CavitySystem {
    double kappa = 1.0;                  // leakage rate per mirror, > 0
    double g = 0.0;                      // atom-cavity coupling, >= 0
    double cavity_detuning = 0.0;        // delta = omega_cavity - omega_laser
    std::vector<double> atom_detunings;  // Delta_j = omega_j - omega_laser

    void validate() const {
        detail::require_finite(kappa, "kappa");
        detail::require_finite(g, "g");
        detail::require_finite(cavity_detuning, "cavity_detuning");
        if (kappa <= 0.0)
            throw validation_error("kappa must be positive, got " + std::to_string(kappa));
        if (g < 0.0)
            throw validation_error("g must be non-negative, got " + std::to_string(g));
        if (atom_detunings.empty())
            throw validation_error("atom_detunings must contain at least one atom");
        for (double d : atom_detunings) detail::require_finite(d, "atom_detunings");
    }
};

// True when the atomic sum diverges (some Delta_j = 0 with g > 0); the
// transmission limit there is t -> 0.
inline bool at_atomic_pole(const CavitySystem& sys) {
    if (sys.g == 0.0) return false;
    for (double d : sys.atom_detunings)
        if (d == 0.0) return true;
    return false;
}

inline cplx cavity_transmission(const CavitySystem& sys) {
    sys.validate();
    if (at_atomic_pole(sys))
        throw validation_error("atomic pole: an atom is exactly resonant with the laser; "
                               "the transmission limit is t = 0");
    double inv_sum = 0.0;
    if (sys.g > 0.0)
        for (double d : sys.atom_detunings) inv_sum += 1.0 / d;
    const cplx den(2.0 * sys.kappa, sys.cavity_detuning - sys.g * sys.g * inv_sum);
    return 2.0 * sys.kappa / den;
}

// Waveguide image of a resonantly driven cavity (delta = 0): commensurate
// chain with Gamma_eff = g^2/(2 kappa) and gamma0 = 0. The photon-atom
// detuning flips sign between conventions (waveguide Delta_j = -cavity
// Delta_j), which with the probe at the reference means the stored offsets
// carry over verbatim. The image's t equals cavity_transmission to rounding.
inline ScatteringResult waveguide_correspondence(const CavitySystem& sys) {
    sys.validate();
    if (sys.cavity_detuning != 0.0)
        throw validation_error("waveguide correspondence requires cavity_detuning = 0, got " +
                               std::to_string(sys.cavity_detuning));
    if (at_atomic_pole(sys))
        throw validation_error("atomic pole: an atom is exactly resonant with the laser; "
                               "the transmission limit is t = 0");
    if (sys.g == 0.0)
        return {cplx(0, 0), cplx(1, 0), false};  // empty cavity, unit transmission
    const double gamma_eff = sys.g * sys.g / (2.0 * sys.kappa);
    const EmitterChain image = build_uniform_chain(
        gamma_eff, 0.0, {sys.atom_detunings.begin(), sys.atom_detunings.end()},
        std::numbers::pi);
    return commensurate_scatter(image, ProbeDetuning{0.0});
}

} // namespace wgqed

#endif // WGQED_CAVITY_HPP
