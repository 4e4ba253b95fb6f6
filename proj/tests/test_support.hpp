#ifndef WGQED_TEST_SUPPORT_HPP
#define WGQED_TEST_SUPPORT_HPP

#include <cstddef>
#include <numbers>
#include <vector>

#include "wgqed/core.hpp"
#include "wgqed/rng.hpp"

namespace wgqed_test {

// Random chain with generic (incommensurate) phases.
inline wgqed::EmitterChain random_chain(wgqed::DrawStream& draws, std::size_t max_atoms,
                                        bool lossless) {
    const std::size_t n = 1 + static_cast<std::size_t>(draws.index(max_atoms));
    const double gamma = draws.uniform(0.5, 2.0);
    const double gamma0 = lossless ? 0.0 : draws.uniform(0.0, 1.5) * gamma;
    std::vector<double> dets(n), phases(n);
    for (double& d : dets) d = draws.uniform(-5.0, 5.0);
    for (double& p : phases) p = draws.uniform(0.0, 2.0 * std::numbers::pi);
    return {gamma, gamma0, std::move(dets), std::move(phases)};
}

// Random chain whose phases are all integer multiples of pi.
inline wgqed::EmitterChain random_commensurate_chain(wgqed::DrawStream& draws,
                                                     std::size_t max_atoms, bool lossless) {
    const std::size_t n = 1 + static_cast<std::size_t>(draws.index(max_atoms));
    const double gamma = draws.uniform(0.5, 2.0);
    const double gamma0 = lossless ? 0.0 : draws.uniform(0.0, 1.5) * gamma;
    std::vector<double> dets(n), phases(n);
    for (double& d : dets) d = draws.uniform(-5.0, 5.0);
    for (double& p : phases) p = static_cast<double>(draws.index(4)) * std::numbers::pi;
    return {gamma, gamma0, std::move(dets), std::move(phases)};
}

} // namespace wgqed_test

#endif // WGQED_TEST_SUPPORT_HPP
