#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace cubic {

using Elem = std::uint32_t;

// F_q = F_p[z]/(modulus). modulus is monic of degree e, low-to-high over F_p.
struct FieldSpec {
    int p = 2;
    int e = 1;
    std::vector<int> modulus;
};

bool is_prime(int n);
// Splits q = p^e; returns false when q is not a prime power.
bool prime_power(int q, int& p, int& e);
// Standard spec for the supported orders (prime powers up to 9, plus any prime).
FieldSpec field_spec(int q);

// Finite field with elements coded as integers 0..order-1. An element of an
// extension of degree n over a base of order b is the digit string
// c_0 + c_1 b + ... + c_{n-1} b^{n-1}, meaning c_0 + c_1 z + ... in the power basis.
// Base elements keep their codes inside an extension.
class Field {
public:
    static Field prime(int p);
    static Field from_spec(const FieldSpec& spec);
    static Field of_order(int q);
    // modulus: monic irreducible over base, low-to-high, degree >= 1.
    static Field extension(const Field& base, const std::vector<Elem>& modulus);

    std::uint32_t order() const { return order_; }
    int characteristic() const { return p_; }
    std::uint32_t base_order() const { return base_order_; }
    int digits() const { return digits_; }
    const std::vector<Elem>& modulus() const { return modulus_; }

    Elem add(Elem a, Elem b) const
    {
        if (!add_.empty()) return add_[a * order_ + b];
        return add_digits(a, b);
    }
    Elem neg(Elem a) const;
    Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }
    Elem mul(Elem a, Elem b) const
    {
        if (a == 0 || b == 0) return 0;
        return exp_[log_[a] + log_[b]];
    }
    Elem inv(Elem a) const;
    Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
    Elem pow(Elem a, std::uint64_t n) const;
    Elem from_int(long long n) const;
    Elem generator() const { return exp_[1]; }
    Elem digit(Elem a, int i) const;

private:
    Field() = default;
    void build_tables();
    Elem add_digits(Elem a, Elem b) const;
    Elem mul_slow(Elem a, Elem b) const;

    std::uint32_t order_ = 0;
    int p_ = 0;
    std::uint32_t base_order_ = 0;
    int digits_ = 1;
    std::vector<Elem> modulus_;

    // Base-field tables, base_order_ x base_order_.
    std::vector<Elem> base_add_, base_mul_, base_neg_;
    std::vector<Elem> add_;  // full table when small
    std::vector<Elem> neg_;
    std::vector<Elem> exp_;  // length 2(order-1)
    std::vector<std::uint32_t> log_;
};

}  // namespace cubic
