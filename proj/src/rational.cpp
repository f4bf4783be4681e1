#include "twosq/rational.hpp"

#include <stdexcept>

namespace twosq {

Rational make_rational(std::uint64_t num, std::uint64_t den) {
    if (den == 0) throw std::invalid_argument("make_rational: zero denominator");
    std::uint64_t g = std::gcd(num, den);
    return {num / g, den / g};
}

bool rational_less(const Rational& a, const Rational& b) {
    using u128 = unsigned __int128;
    return static_cast<u128>(a.num) * b.den < static_cast<u128>(b.num) * a.den;
}

std::string to_string(const Rational& r) {
    return std::to_string(r.num) + "/" + std::to_string(r.den);
}

std::string to_decimal6(const Rational& r) {
    using u128 = unsigned __int128;
    u128 scaled = (static_cast<u128>(r.num) * 1'000'000 + r.den / 2) / r.den;
    std::uint64_t whole = static_cast<std::uint64_t>(scaled / 1'000'000);
    std::uint64_t frac = static_cast<std::uint64_t>(scaled % 1'000'000);
    std::string frac_str = std::to_string(frac);
    return std::to_string(whole) + "." + std::string(6 - frac_str.size(), '0') + frac_str;
}

}  // namespace twosq
