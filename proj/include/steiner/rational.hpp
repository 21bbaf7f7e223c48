#pragma once

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/gmp.hpp>

#include <stdexcept>
#include <string>

namespace steiner {

/// Exact rational scalar used for every cost, dual value and bound in the
/// library. All duality identities checked here are equalities and must hold
/// bit-exactly, so floating point never enters the core computations.
using Rat = boost::multiprecision::mpq_rational;
using BigInt = boost::multiprecision::mpz_int;

/// High-precision float, used only to evaluate the transcendental bounds of
/// the performance theorems (logarithms); results are rounded outward into
/// exact rationals before any comparison.
using HighFloat = boost::multiprecision::cpp_bin_float_50;

// Error taxonomy. The CLI maps GuardError to exit code 2 and the rest of the
// input-side errors to exit code 1.
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct GuardError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DisconnectedError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct InfeasibleSpecError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct MissingOracleError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Internal invariant failure; raised when an exact identity the paper
// guarantees does not hold (i.e. a bug, never a data error).
struct InternalError : std::logic_error {
    using std::logic_error::logic_error;
};

#define STEINER_CHECK(cond, msg)                                             \
    do {                                                                     \
        if (!(cond))                                                         \
            throw ::steiner::InternalError(std::string(__FILE__ ":") +      \
                                           std::to_string(__LINE__) + ": " + \
                                           (msg));                           \
    } while (0)

/// Canonical "p/q" rendering (q always printed, canonical sign on p).
std::string rat_str(const Rat& q);

/// Decimal rendering with the given number of fraction digits (round to
/// nearest, used only for human-readable summaries).
std::string rat_decimal(const Rat& q, int digits = 6);

/// Parses "p/q", integer, or decimal literals ("5", "-3/2", "1.25") into an
/// exact rational. Throws ParseError on malformed input.
Rat rat_parse(const std::string& text);

/// Smallest multiple of 10^-digits that is >= x. Used to pin transcendental
/// bounds as exact rationals, rounded up so verdicts stay conservative.
Rat round_up_at_digits(const HighFloat& x, int digits);

}  // namespace steiner
