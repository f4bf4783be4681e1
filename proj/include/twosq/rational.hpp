#pragma once

#include <cstdint>
#include <numeric>
#include <string>

namespace twosq {

// Exact reduced fraction in 64 bits. Densities of subsets of Z_n always fit
// here because both parts are bounded by n.
struct Rational {
    std::uint64_t num = 0;
    std::uint64_t den = 1;

    bool operator==(const Rational&) const = default;
};

Rational make_rational(std::uint64_t num, std::uint64_t den);

// a/b < c/d via 128-bit cross multiplication.
bool rational_less(const Rational& a, const Rational& b);

std::string to_string(const Rational& r);

// Fixed six decimal places, half-up, computed in integers (no floating point).
std::string to_decimal6(const Rational& r);

}  // namespace twosq
