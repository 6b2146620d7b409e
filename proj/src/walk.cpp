#include "lcslab/walk.hpp"

#include <sstream>
#include <stdexcept>

namespace lcslab {

BigInt binomial(std::int64_t n, std::int64_t r) {
    if (r < 0 || r > n) return 0;
    r = std::min(r, n - r);
    BigInt result = 1;
    for (std::int64_t i = 1; i <= r; ++i) {
        result *= (n - r + i);
        result /= i;
    }
    return result;
}

Rational random_walk_abs_expectation(std::int64_t T) {
    if (T < 0) throw std::invalid_argument("random_walk_abs_expectation: T must be >= 0");
    BigInt pow2 = BigInt(1) << static_cast<unsigned>(T);
    if (T % 2 == 0) {
        // (T + 1/2) C(T, T/2) / 2^T
        return Rational(BigInt(2 * T + 1) * binomial(T, T / 2), 2 * pow2);
    }
    return Rational(BigInt(2 * T) * binomial(T - 1, (T - 1) / 2), pow2);
}

Rational good_turn_walk_value(std::int64_t T) {
    return Rational(1, 2) + random_walk_abs_expectation(T);
}

std::string rational_to_string(const Rational& r) {
    std::ostringstream out;
    out << boost::multiprecision::numerator(r);
    if (boost::multiprecision::denominator(r) != 1)
        out << '/' << boost::multiprecision::denominator(r);
    return out.str();
}

double rational_to_double(const Rational& r) { return r.convert_to<double>(); }

}  // namespace lcslab
