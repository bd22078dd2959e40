#include "cubic/field.hpp"

#include <string>

namespace cubic {

bool is_prime(int n)
{
    if (n < 2) return false;
    for (int d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

bool prime_power(int q, int& p, int& e)
{
    if (q < 2) return false;
    int d = 2;
    while (q % d != 0) ++d;
    p = d;
    e = 0;
    while (q % d == 0) {
        q /= d;
        ++e;
    }
    return q == 1;
}

FieldSpec field_spec(int q)
{
    int p = 0, e = 0;
    if (!prime_power(q, p, e)) throw std::invalid_argument("not a prime power: " + std::to_string(q));
    FieldSpec s;
    s.p = p;
    s.e = e;
    if (e == 1) {
        s.modulus = {0, 1};
        return s;
    }
    switch (q) {
    case 4: s.modulus = {1, 1, 1}; break;
    case 8: s.modulus = {1, 1, 0, 1}; break;
    case 9: s.modulus = {1, 0, 1}; break;
    default: throw std::invalid_argument("unsupported field order " + std::to_string(q));
    }
    return s;
}

namespace {

// Remainder of a mod b over F_p, b monic; vectors low-to-high.
std::vector<int> rem_mod_p(std::vector<int> a, const std::vector<int>& b, int p)
{
    int db = static_cast<int>(b.size()) - 1;
    for (int i = static_cast<int>(a.size()) - 1; i >= db; --i) {
        int c = a[i] % p;
        if (c == 0) continue;
        for (int j = 0; j <= db; ++j) a[i - db + j] = ((a[i - db + j] - c * b[j]) % p + p) % p;
    }
    a.resize(db);
    return a;
}

bool irreducible_mod_p(const std::vector<int>& f, int p)
{
    int e = static_cast<int>(f.size()) - 1;
    for (int d = 1; d <= e / 2; ++d) {
        int total = 1;
        for (int i = 0; i < d; ++i) total *= p;
        for (int code = 0; code < total; ++code) {
            std::vector<int> g(d + 1);
            int c = code;
            for (int i = 0; i < d; ++i) {
                g[i] = c % p;
                c /= p;
            }
            g[d] = 1;
            auto r = rem_mod_p(f, g, p);
            bool zero = true;
            for (int x : r)
                if (x != 0) zero = false;
            if (zero) return false;
        }
    }
    return true;
}

}  // namespace

Field Field::prime(int p)
{
    if (!is_prime(p)) throw std::invalid_argument("not prime: " + std::to_string(p));
    Field f;
    f.order_ = static_cast<std::uint32_t>(p);
    f.p_ = p;
    f.base_order_ = f.order_;
    f.digits_ = 1;
    f.modulus_ = {0, 1};
    f.base_add_.resize(p * p);
    f.base_mul_.resize(p * p);
    f.base_neg_.resize(p);
    for (int a = 0; a < p; ++a) {
        f.base_neg_[a] = static_cast<Elem>((p - a) % p);
        for (int b = 0; b < p; ++b) {
            f.base_add_[a * p + b] = static_cast<Elem>((a + b) % p);
            f.base_mul_[a * p + b] = static_cast<Elem>((a * b) % p);
        }
    }
    f.build_tables();
    return f;
}

Field Field::from_spec(const FieldSpec& spec)
{
    if (!is_prime(spec.p) || spec.e < 1) throw std::invalid_argument("bad field spec");
    Field base = prime(spec.p);
    if (spec.e == 1) return base;
    if (static_cast<int>(spec.modulus.size()) != spec.e + 1 || spec.modulus.back() != 1)
        throw std::invalid_argument("modulus must be monic of degree e");
    if (!irreducible_mod_p(spec.modulus, spec.p)) throw std::invalid_argument("modulus is reducible");
    std::vector<Elem> m(spec.modulus.begin(), spec.modulus.end());
    return extension(base, m);
}

Field Field::of_order(int q) { return from_spec(field_spec(q)); }

Field Field::extension(const Field& base, const std::vector<Elem>& modulus)
{
    if (modulus.size() < 2 || modulus.back() != 1) throw std::invalid_argument("modulus must be monic, degree >= 1");
    Field f;
    f.p_ = base.p_;
    f.base_order_ = base.order_;
    f.digits_ = static_cast<int>(modulus.size()) - 1;
    f.modulus_ = modulus;
    std::uint64_t order = 1;
    for (int i = 0; i < f.digits_; ++i) order *= base.order_;
    if (order > (1u << 24)) throw std::invalid_argument("extension too large");
    f.order_ = static_cast<std::uint32_t>(order);
    std::uint32_t b = base.order_;
    f.base_add_.resize(b * b);
    f.base_mul_.resize(b * b);
    f.base_neg_.resize(b);
    for (Elem x = 0; x < b; ++x) {
        f.base_neg_[x] = base.neg(x);
        for (Elem y = 0; y < b; ++y) {
            f.base_add_[x * b + y] = base.add(x, y);
            f.base_mul_[x * b + y] = base.mul(x, y);
        }
    }
    f.build_tables();
    return f;
}

Elem Field::digit(Elem a, int i) const
{
    for (int j = 0; j < i; ++j) a /= base_order_;
    return a % base_order_;
}

Elem Field::add_digits(Elem a, Elem b) const
{
    Elem out = 0, scale = 1;
    for (int i = 0; i < digits_; ++i) {
        Elem x = a % base_order_, y = b % base_order_;
        a /= base_order_;
        b /= base_order_;
        out += base_add_[x * base_order_ + y] * scale;
        scale *= base_order_;
    }
    return out;
}

Elem Field::mul_slow(Elem a, Elem b) const
{
    const int n = digits_;
    const Elem B = base_order_;
    if (n == 1) return base_mul_[a * B + b];
    std::vector<Elem> x(n), y(n), prod(2 * n - 1, 0);
    for (int i = 0; i < n; ++i) {
        x[i] = a % B;
        a /= B;
        y[i] = b % B;
        b /= B;
    }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            prod[i + j] = base_add_[prod[i + j] * B + base_mul_[x[i] * B + y[j]]];
    for (int i = 2 * n - 2; i >= n; --i) {
        Elem c = prod[i];
        if (c == 0) continue;
        Elem nc = base_neg_[c];
        for (int j = 0; j <= n; ++j)
            prod[i - n + j] = base_add_[prod[i - n + j] * B + base_mul_[nc * B + modulus_[j]]];
    }
    Elem out = 0, scale = 1;
    for (int i = 0; i < n; ++i) {
        out += prod[i] * scale;
        scale *= B;
    }
    return out;
}

void Field::build_tables()
{
    const std::uint32_t q = order_;
    if (q <= 256) {
        add_.resize(static_cast<std::size_t>(q) * q);
        for (Elem a = 0; a < q; ++a)
            for (Elem b = 0; b < q; ++b) add_[a * q + b] = add_digits(a, b);
    }
    neg_.resize(q);
    for (Elem a = 0; a < q; ++a) {
        Elem out = 0, scale = 1, x = a;
        for (int i = 0; i < digits_; ++i) {
            out += base_neg_[x % base_order_] * scale;
            x /= base_order_;
            scale *= base_order_;
        }
        neg_[a] = out;
    }
    exp_.assign(2 * (q - 1), 0);
    log_.assign(q, 0);
    for (Elem g = 1; g < q; ++g) {
        Elem x = 1;
        bool ok = true;
        for (std::uint32_t i = 0; i < q - 1; ++i) {
            exp_[i] = x;
            x = mul_slow(x, g);
            if (x == 1 && i + 2 < q) {
                ok = false;
                break;
            }
        }
        if (ok && x == 1) break;
        if (g + 1 == q) throw std::logic_error("no primitive element; modulus not irreducible?");
    }
    for (std::uint32_t i = 0; i < q - 1; ++i) {
        log_[exp_[i]] = i;
        exp_[i + q - 1] = exp_[i];
    }
}

Elem Field::neg(Elem a) const { return neg_[a]; }

Elem Field::inv(Elem a) const
{
    if (a == 0) throw std::domain_error("inverse of zero");
    std::uint32_t l = log_[a];
    return exp_[l == 0 ? 0 : (order_ - 1 - l)];
}

Elem Field::pow(Elem a, std::uint64_t n) const
{
    if (n == 0) return 1;
    if (a == 0) return 0;
    std::uint64_t e = (static_cast<std::uint64_t>(log_[a]) * (n % (order_ - 1))) % (order_ - 1);
    return exp_[e];
}

Elem Field::from_int(long long n) const
{
    long long r = n % p_;
    if (r < 0) r += p_;
    return static_cast<Elem>(r);
}

}  // namespace cubic
