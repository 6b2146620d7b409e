#pragma once

#include <cstdint>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace lcslab {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

BigInt binomial(std::int64_t n, std::int64_t r);

// E|final position| of a simple random walk on Z+1/2 started at 1/2, after T
// steps. Closed form, exact:
//   T even: 2^-T (T + 1/2) C(T, T/2)
//   T odd:  2^-T 2T C(T-1, (T-1)/2)
Rational random_walk_abs_expectation(std::int64_t T);

// E[final gap] of the good-turn game under optimal play with T good turns:
// 1/2 + E|walk| via the closed form above.
Rational good_turn_walk_value(std::int64_t T);

std::string rational_to_string(const Rational& r);
double rational_to_double(const Rational& r);

}  // namespace lcslab
