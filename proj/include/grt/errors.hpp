#pragma once

#include <stdexcept>
#include <string>

namespace grt {

// Precondition violations on mathematical domains (zero divisor, wrong
// constant term, mismatched primes, ...).
struct domain_error : std::domain_error {
    explicit domain_error(const std::string& msg) : std::domain_error(msg) {}
};

// Two series/elements with incompatible alphabet, cap or ring were combined.
struct cap_mismatch_error : domain_error {
    explicit cap_mismatch_error(const std::string& msg) : domain_error(msg) {}
};

// A coefficient beyond the truncation cap was requested; the information was
// truncated away and is not recoverable.
struct out_of_cap_error : domain_error {
    explicit out_of_cap_error(const std::string& msg) : domain_error(msg) {}
};

// A computation cannot certify the requested number of p-adic digits.
struct precision_error : std::runtime_error {
    int achievable;
    precision_error(const std::string& msg, int achievable_)
        : std::runtime_error(msg), achievable(achievable_) {}
};

// An explicit resource ceiling (matrix size, work budget) was exceeded.
struct resource_error : std::runtime_error {
    explicit resource_error(const std::string& msg) : std::runtime_error(msg) {}
};

// A residue matrix whose spectrum does not split over the rationals.
struct spectrum_error : domain_error {
    explicit spectrum_error(const std::string& msg) : domain_error(msg) {}
};

// Malformed input file / JSON.
struct parse_error : std::runtime_error {
    explicit parse_error(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace grt
