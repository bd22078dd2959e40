#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "cubic/rational.hpp"

namespace cubic {

// Polynomial in T over Q, low-to-high, trimmed.
using PolyQ = std::vector<Rational>;

namespace polyq {

void trim(PolyQ& a);
int degree(const PolyQ& a);
PolyQ add(const PolyQ& a, const PolyQ& b);
PolyQ sub(const PolyQ& a, const PolyQ& b);
PolyQ mul(const PolyQ& a, const PolyQ& b);
PolyQ scale(const PolyQ& a, const Rational& c);
std::pair<PolyQ, PolyQ> divmod(const PolyQ& a, const PolyQ& b);
PolyQ gcd(PolyQ a, PolyQ b);  // monic
Rational eval(const PolyQ& a, const Rational& t);
// 1 - c T^e
PolyQ one_minus(const Rational& c, int e);

}  // namespace polyq

// Truncated power series; coefficient i of T^i for i < size().
using SeriesQ = std::vector<Rational>;

namespace series {

SeriesQ mul(const SeriesQ& a, const SeriesQ& b, int order);
SeriesQ inverse(const SeriesQ& a, int order);  // a[0] != 0
SeriesQ from_poly(const PolyQ& p, int order);

}  // namespace series

// num/den with den(0) = 1 when den(0) != 0 (otherwise den monic), and gcd(num, den) = 1.
class RationalFn {
public:
    RationalFn(PolyQ num, PolyQ den);
    static RationalFn polynomial(PolyQ p);

    const PolyQ& num() const { return num_; }
    const PolyQ& den() const { return den_; }
    SeriesQ expand(int order) const;
    Rational eval(const Rational& t) const;

    friend RationalFn operator+(const RationalFn& a, const RationalFn& b);
    friend RationalFn operator-(const RationalFn& a, const RationalFn& b);
    friend RationalFn operator*(const RationalFn& a, const RationalFn& b);
    friend RationalFn operator/(const RationalFn& a, const RationalFn& b);
    bool operator==(const RationalFn& o) const { return num_ == o.num_ && den_ == o.den_; }

private:
    PolyQ num_, den_;
};

Rational qpow(std::uint64_t q, int e);  // e may be negative
std::uint64_t gamma_order_q(std::uint64_t q, int k);

RationalFn zeta_p1(std::uint64_t q);
// Number of monic irreducibles of degree d over F_q (Gauss), plus 1 at d = 1 for infinity.
BigInt closed_point_count(std::uint64_t q, int d);
// sum_{deg D = d} mu(D) over reduced divisors, from prod_P (1 - T^deg P).
std::vector<BigInt> mobius_degree_sums(std::uint64_t q, int max_degree);

// q^(4l-6k+4-d) - q^(3l-3k+3) if l - 3k >= d, else 0.
Rational phi_hat(std::uint64_t q, int l, int k, int d);
// Direct triple sum over divisor degree, Par(N') and the model Phi.
Rational psi_hat(std::uint64_t q, int N);
// q^2/(q^2-1) (1-q^3T^3)(1-q^4T^3)(1+q^6T^3) / ((1-q^5T^3)(1-q^4T^2)(1-q^3T^2)).
RationalFn fhat_closed_form(std::uint64_t q);
RationalFn ghat(std::uint64_t q);
// Coefficient of T^N in Ghat via Psi_hat(N) - (q+1) Psi_hat(N-1) + q Psi_hat(N-2).
Rational theta_hat(std::uint64_t q, int N);

// sum_{k <= K} T^k / |Gamma_k| and the closed form (1/|Gamma_0|)(1+T)/(1-T/q).
SeriesQ aut_series_direct(std::uint64_t q, int K);
RationalFn aut_series_closed(std::uint64_t q);

struct GhatConstants {
    PolyQ polynomial_part;
    Rational pole_q2;              // A / (1 - q^2 T)
    PolyQ cubic_block;             // B(T) / (1 - q^5 T^3), deg B <= 2
    PolyQ quadratic_block;         // P(T) / (1 - q^3 T^2), deg P <= 1
    Rational c1;
    std::array<Rational, 3> c2;    // c2[i] = -B_i
    double remainder_constant = 0; // max |coefficient| / q^(3N/2) of the polynomial and P(T) parts, N <= 60
};

// Partial fractions of Ghat over (1 - q^2 T)(1 - q^5 T^3)(1 - q^3 T^2); throws on any other pole structure.
GhatConstants extract_constants(std::uint64_t q);
RationalFn reconstruct(std::uint64_t q, const GhatConstants& c);

Rational c1_expected(std::uint64_t q);
std::array<Rational, 3> c2_expected(std::uint64_t q);
Rational c1_from_zeta(std::uint64_t q);

struct MainTermSplit {
    Rational theta_hat, main, secondary, remainder;
};

// main = c1 q^(2N), secondary = c2[N mod 3] q^(5 floor(N/3)), remainder = theta_hat - main + secondary.
MainTermSplit main_theorem_decomposition(std::uint64_t q, int N, const GhatConstants& c);

}  // namespace cubic
