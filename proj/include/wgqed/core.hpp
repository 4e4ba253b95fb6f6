#ifndef WGQED_CORE_HPP
#define WGQED_CORE_HPP

// Dimensionless data model for single-photon transport through a chain of
// two-level emitters coupled to a 1D waveguide.
//
// Every rate and detuning is expressed in one common unit system; the
// waveguide decay rate gamma sets the scale, and the physics is invariant
// under rescaling (gamma, gamma0, detunings, probe) by any positive factor.
// Atomic frequencies are stored as offsets d_j from a reference frequency,
// the probe photon as an offset Delta_probe from the same reference; only
// the differences Delta_j = Delta_probe - d_j ever enter a formula.

#include <complex>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "wgqed/errors.hpp"

namespace wgqed {

using cplx = std::complex<double>;

namespace detail {

inline void require_finite(double v, const char* field) {
    if (!std::isfinite(v))
        throw validation_error(std::string(field) + " must be finite");
}

} // namespace detail

// Photon detuning from the reference frequency, Delta_probe = v_g k - omega_ref.
struct ProbeDetuning {
    double value = 0.0;
};

// A periodic (or deliberately non-periodic) chain of N two-level emitters.
//
//   gamma     waveguide decay rate, > 0; the unit of all rates
//   gamma0    dissipation into non-guided channels, >= 0
//   detunings d_j = omega_j - omega_ref per atom
//   phases    theta_j = k l_j, the propagation phase of the gap that follows
//             atom j; interpreted mod 2*pi. The trailing theta_N only moves
//             the exit reference plane and drops out of r and t.
//
// Immutable after construction; safe to share across threads.
class EmitterChain {
public:
    EmitterChain(double gamma, double gamma0,
                 std::vector<double> detunings, std::vector<double> phases)
        : gamma_(gamma), gamma0_(gamma0),
          detunings_(std::move(detunings)), phases_(std::move(phases)) {
        detail::require_finite(gamma_, "gamma");
        detail::require_finite(gamma0_, "gamma0");
        if (gamma_ <= 0.0)
            throw validation_error("gamma must be positive, got " + std::to_string(gamma_));
        if (gamma0_ < 0.0)
            throw validation_error("gamma0 must be non-negative, got " + std::to_string(gamma0_));
        if (detunings_.empty())
            throw validation_error("detunings must contain at least one atom");
        if (detunings_.size() != phases_.size())
            throw validation_error("detunings and phases must have the same length (got " +
                                   std::to_string(detunings_.size()) + " detunings, " +
                                   std::to_string(phases_.size()) + " phases)");
        for (double d : detunings_) detail::require_finite(d, "detunings");
        for (double p : phases_) detail::require_finite(p, "phases");
    }

    double gamma() const { return gamma_; }
    double gamma0() const { return gamma0_; }
    std::span<const double> detunings() const { return detunings_; }
    std::span<const double> phases() const { return phases_; }
    std::size_t size() const { return detunings_.size(); }

private:
    double gamma_;
    double gamma0_;
    std::vector<double> detunings_;
    std::vector<double> phases_;
};

inline EmitterChain build_chain(double gamma, double gamma0,
                                std::vector<double> detunings,
                                std::vector<double> phases) {
    return EmitterChain(gamma, gamma0, std::move(detunings), std::move(phases));
}

// Uniform lattice: every gap carries the same phase theta.
inline EmitterChain build_uniform_chain(double gamma, double gamma0,
                                        std::vector<double> detunings, double theta) {
    std::vector<double> phases(detunings.size(), theta);
    return EmitterChain(gamma, gamma0, std::move(detunings), std::move(phases));
}

// Scaled per-atom detunings delta_j = (Delta_probe - d_j + i*gamma0)/gamma.
inline std::vector<cplx> scaled_detunings(const EmitterChain& chain, ProbeDetuning probe) {
    detail::require_finite(probe.value, "probe detuning");
    std::vector<cplx> out;
    out.reserve(chain.size());
    for (double d : chain.detunings())
        out.push_back(cplx(probe.value - d, chain.gamma0()) / chain.gamma());
    return out;
}

// Reflection/transmission amplitudes of one scattering computation.
// limit_applied marks results where an exactly resonant lossless site forced
// the closed-form limit (or a probe nudge of ~1e-12*gamma) instead of the
// raw matrix product.
struct ScatteringResult {
    cplx r;
    cplx t;
    bool limit_applied = false;

    double reflectance() const { return std::norm(r); }
    double transmittance() const { return std::norm(t); }
    double loss() const { return 1.0 - std::norm(r) - std::norm(t); }
};

// 2x2 complex matrix; the per-site scattering building block. Single-site
// matrices have unit determinant analytically.
struct Transfer2x2 {
    cplx m11, m12, m21, m22;

    static Transfer2x2 identity() { return {1.0, 0.0, 0.0, 1.0}; }

    cplx det() const { return m11 * m22 - m12 * m21; }

    friend Transfer2x2 operator*(const Transfer2x2& a, const Transfer2x2& b) {
        return {a.m11 * b.m11 + a.m12 * b.m21, a.m11 * b.m12 + a.m12 * b.m22,
                a.m21 * b.m11 + a.m22 * b.m21, a.m21 * b.m12 + a.m22 * b.m22};
    }
};

// Uniform 1D scan grid with count points from start to stop inclusive.
class SweepGrid {
public:
    SweepGrid(double start, double stop, std::size_t count)
        : start_(start), stop_(stop), count_(count) {
        detail::require_finite(start, "grid start");
        detail::require_finite(stop, "grid stop");
        if (count < 2)
            throw validation_error("grid count must be at least 2, got " + std::to_string(count));
        if (!(start < stop))
            throw validation_error("grid start must be below stop (got start=" +
                                   std::to_string(start) + ", stop=" + std::to_string(stop) + ")");
    }

    double start() const { return start_; }
    double stop() const { return stop_; }
    std::size_t count() const { return count_; }

    double value(std::size_t i) const {
        if (i + 1 == count_) return stop_; // avoid rounding drift at the endpoint
        return start_ + (stop_ - start_) * static_cast<double>(i) / static_cast<double>(count_ - 1);
    }

    std::vector<double> values() const {
        std::vector<double> v(count_);
        for (std::size_t i = 0; i < count_; ++i) v[i] = value(i);
        return v;
    }

private:
    double start_;
    double stop_;
    std::size_t count_;
};

} // namespace wgqed

#endif // WGQED_CORE_HPP
