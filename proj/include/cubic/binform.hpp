#pragma once

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

#include "cubic/field.hpp"
#include "cubic/poly.hpp"

namespace cubic {

// Homogeneous form in t0, t1. coeffs[i] is the coefficient of t0^i t1^(degree-i).
// A negative degree stands for a slot that is forced to be zero; coeffs is then empty.
struct BinForm {
    int degree = 0;
    std::vector<Elem> coeffs{0};

    static BinForm zero(int degree);
    static BinForm constant(Elem c);
    bool is_zero() const;
    bool operator==(const BinForm&) const = default;
};

namespace form {

BinForm mul(const Field& F, const BinForm& a, const BinForm& b);
BinForm add(const Field& F, const BinForm& a, const BinForm& b);  // same degree
BinForm sub(const Field& F, const BinForm& a, const BinForm& b);
BinForm scale(const Field& F, const BinForm& a, Elem c);
BinForm power(const Field& F, const BinForm& a, int n);
// Evaluation at (a, b) in a field K containing the coefficients.
Elem eval(const Field& K, const BinForm& f, Elem a, Elem b);
// f(t, 1) as a polynomial in t.
Poly affine(const BinForm& f);
// f(1, u) as a polynomial in u (local picture at infinity).
Poly at_infinity(const BinForm& f);
BinForm homogenize(const Poly& p, int degree);
// Exact division; returns false when the divisor does not divide.
bool divide(const Field& F, const BinForm& a, const BinForm& b, BinForm& quotient);

}  // namespace form

// A closed point of P^1: a monic irreducible polynomial in t = t0/t1, or infinity (t1 = 0).
struct ClosedPoint {
    bool infinite = false;
    Poly poly;  // monic irreducible, empty for infinity

    int degree() const { return infinite ? 1 : poly::degree(poly); }
    // The irreducible homogeneous form cutting out the point.
    BinForm form() const;
    bool operator==(const ClosedPoint&) const = default;
};

// Canonical order: degree, then coefficients lexicographically (low to high), infinity last.
bool point_less(const ClosedPoint& a, const ClosedPoint& b);

// Monic irreducible polynomials over F grouped by degree 1..max_degree, canonical order.
class IrreducibleTable {
public:
    IrreducibleTable(const Field& F, int max_degree);
    int max_degree() const { return max_degree_; }
    const std::vector<Poly>& of_degree(int d) const { return by_degree_.at(d); }

private:
    int max_degree_;
    std::vector<std::vector<Poly>> by_degree_;
};

struct FormFactorization {
    Elem unit = 1;
    std::vector<std::pair<ClosedPoint, int>> factors;  // canonical order
};

// Factors a nonzero form into closed points by trial division.
// The table must reach at least half the degree of f.
FormFactorization binform_factor(const Field& F, const IrreducibleTable& table, const BinForm& f);

// A point of P^1 over a field, normalized as (a : 1) or (1 : 0).
struct ProjPoint {
    Elem x = 0;
    Elem y = 1;
    bool operator==(const ProjPoint&) const = default;
};

// Cubic c[0] x^3 + c[1] x^2 y + c[2] x y^2 + c[3] y^3.
using Cubic = std::array<Elem, 4>;

Elem cubic_eval(const Field& K, const Cubic& c, const ProjPoint& pt);
// Distinct zeros in P^1(K), listed as (0:1), (a:1) in code order, then (1:0).
std::vector<ProjPoint> cubic_roots_in_P1(const Field& K, const Cubic& c);
// Number of distinct zeros in P^1(K) through gcd with x^|K| - x.
std::uint64_t count_cubic_roots(const Field& K, const Cubic& c);

}  // namespace cubic
