#ifndef WGQED_ERRORS_HPP
#define WGQED_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace wgqed {

// Invalid parameters, malformed configuration, or a call outside an
// operation's domain. Maps to CLI exit code 1.
class validation_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Numerically degenerate linear algebra: a vanishing pivot, denominator or
// reflection ratio. Maps to CLI exit code 2.
class degeneracy_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace wgqed

#endif // WGQED_ERRORS_HPP
