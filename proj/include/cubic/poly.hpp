#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "cubic/field.hpp"

namespace cubic {

// Univariate polynomial, low-to-high, no trailing zeros (zero polynomial is empty).
using Poly = std::vector<Elem>;

namespace poly {

void trim(Poly& a);
int degree(const Poly& a);  // -1 for zero
Poly add(const Field& F, const Poly& a, const Poly& b);
Poly sub(const Field& F, const Poly& a, const Poly& b);
Poly mul(const Field& F, const Poly& a, const Poly& b);
Poly scale(const Field& F, const Poly& a, Elem c);
// b != 0
std::pair<Poly, Poly> divmod(const Field& F, const Poly& a, const Poly& b);
Poly mod(const Field& F, const Poly& a, const Poly& b);
Poly monic(const Field& F, const Poly& a);
Poly gcd(const Field& F, Poly a, Poly b);  // monic, gcd(0,0) = 0
Poly derivative(const Field& F, const Poly& a);
Elem eval(const Field& F, const Poly& a, Elem x);
Poly powmod(const Field& F, const Poly& base, std::uint64_t e, const Poly& m);
Poly x_power(int n);  // t^n

}  // namespace poly

}  // namespace cubic
