#include "cubic/analytic.hpp"

#include <cmath>
#include <stdexcept>

namespace cubic {

std::string rational_string(const Rational& r)
{
    BigInt num = boost::multiprecision::numerator(r), den = boost::multiprecision::denominator(r);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

double rational_double(const Rational& r) { return r.convert_to<double>(); }

namespace polyq {

void trim(PolyQ& a)
{
    while (!a.empty() && a.back() == 0) a.pop_back();
}

int degree(const PolyQ& a) { return static_cast<int>(a.size()) - 1; }

PolyQ add(const PolyQ& a, const PolyQ& b)
{
    PolyQ r(std::max(a.size(), b.size()), Rational(0));
    for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
    trim(r);
    return r;
}

PolyQ sub(const PolyQ& a, const PolyQ& b) { return add(a, scale(b, -1)); }

PolyQ mul(const PolyQ& a, const PolyQ& b)
{
    if (a.empty() || b.empty()) return {};
    PolyQ r(a.size() + b.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    trim(r);
    return r;
}

PolyQ scale(const PolyQ& a, const Rational& c)
{
    PolyQ r = a;
    for (auto& x : r) x *= c;
    trim(r);
    return r;
}

std::pair<PolyQ, PolyQ> divmod(const PolyQ& a, const PolyQ& b)
{
    if (b.empty()) throw std::domain_error("polynomial division by zero");
    PolyQ rem = a, quo;
    trim(rem);
    const int db = degree(b);
    if (degree(rem) >= db) quo.assign(rem.size() - b.size() + 1, Rational(0));
    while (degree(rem) >= db) {
        int shift = degree(rem) - db;
        Rational c = rem.back() / b.back();
        quo[shift] = c;
        for (int i = 0; i <= db; ++i) rem[shift + i] -= c * b[i];
        trim(rem);
    }
    trim(quo);
    return {quo, rem};
}

PolyQ gcd(PolyQ a, PolyQ b)
{
    trim(a);
    trim(b);
    while (!b.empty()) {
        PolyQ r = divmod(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    if (a.empty()) return a;
    return scale(a, 1 / a.back());
}

Rational eval(const PolyQ& a, const Rational& t)
{
    Rational r = 0;
    for (std::size_t i = a.size(); i-- > 0;) r = r * t + a[i];
    return r;
}

PolyQ one_minus(const Rational& c, int e)
{
    PolyQ r(e + 1, Rational(0));
    r[0] += 1;
    r[e] -= c;
    trim(r);
    return r;
}

}  // namespace polyq

namespace series {

SeriesQ mul(const SeriesQ& a, const SeriesQ& b, int order)
{
    SeriesQ r(order, Rational(0));
    for (int i = 0; i < order && i < static_cast<int>(a.size()); ++i) {
        if (a[i] == 0) continue;
        for (int j = 0; i + j < order && j < static_cast<int>(b.size()); ++j) r[i + j] += a[i] * b[j];
    }
    return r;
}

SeriesQ inverse(const SeriesQ& a, int order)
{
    if (a.empty() || a[0] == 0) throw std::domain_error("series not invertible");
    SeriesQ r(order, Rational(0));
    if (order == 0) return r;
    r[0] = 1 / a[0];
    for (int n = 1; n < order; ++n) {
        Rational s = 0;
        for (int i = 1; i <= n && i < static_cast<int>(a.size()); ++i) s += a[i] * r[n - i];
        r[n] = -s / a[0];
    }
    return r;
}

SeriesQ from_poly(const PolyQ& p, int order)
{
    SeriesQ r(order, Rational(0));
    for (int i = 0; i < order && i < static_cast<int>(p.size()); ++i) r[i] = p[i];
    return r;
}

}  // namespace series

RationalFn::RationalFn(PolyQ num, PolyQ den)
{
    polyq::trim(num);
    polyq::trim(den);
    if (den.empty()) throw std::domain_error("zero denominator");
    PolyQ g = polyq::gcd(num, den);
    if (num.empty()) {
        num_ = {};
        den_ = {Rational(1)};
        return;
    }
    num = polyq::divmod(num, g).first;
    den = polyq::divmod(den, g).first;
    Rational lead = den[0] != 0 ? den[0] : den.back();
    num_ = polyq::scale(num, 1 / lead);
    den_ = polyq::scale(den, 1 / lead);
}

RationalFn RationalFn::polynomial(PolyQ p) { return RationalFn(std::move(p), {Rational(1)}); }

SeriesQ RationalFn::expand(int order) const
{
    return series::mul(series::from_poly(num_, order), series::inverse(series::from_poly(den_, order), order), order);
}

Rational RationalFn::eval(const Rational& t) const
{
    Rational d = polyq::eval(den_, t);
    if (d == 0) throw std::domain_error("evaluation at a pole");
    return polyq::eval(num_, t) / d;
}

RationalFn operator+(const RationalFn& a, const RationalFn& b)
{
    return RationalFn(polyq::add(polyq::mul(a.num_, b.den_), polyq::mul(b.num_, a.den_)), polyq::mul(a.den_, b.den_));
}

RationalFn operator-(const RationalFn& a, const RationalFn& b)
{
    return RationalFn(polyq::sub(polyq::mul(a.num_, b.den_), polyq::mul(b.num_, a.den_)), polyq::mul(a.den_, b.den_));
}

RationalFn operator*(const RationalFn& a, const RationalFn& b)
{
    return RationalFn(polyq::mul(a.num_, b.num_), polyq::mul(a.den_, b.den_));
}

RationalFn operator/(const RationalFn& a, const RationalFn& b)
{
    if (b.num_.empty()) throw std::domain_error("division by the zero function");
    return RationalFn(polyq::mul(a.num_, b.den_), polyq::mul(a.den_, b.num_));
}

Rational qpow(std::uint64_t q, int e)
{
    BigInt p = 1;
    for (int i = 0; i < std::abs(e); ++i) p *= q;
    return e >= 0 ? Rational(p) : Rational(BigInt(1), p);
}

std::uint64_t gamma_order_q(std::uint64_t q, int k)
{
    if (k == 0) return (q * q - q) * (q * q - 1);
    std::uint64_t n = (q - 1) * (q - 1);
    for (int i = 0; i <= k; ++i) n *= q;
    return n;
}

RationalFn zeta_p1(std::uint64_t q)
{
    return RationalFn({Rational(1)}, polyq::mul(polyq::one_minus(1, 1), polyq::one_minus(q, 1)));
}

namespace {

int classical_mobius(int n)
{
    int m = 1;
    for (int p = 2; p * p <= n; ++p)
        if (n % p == 0) {
            n /= p;
            if (n % p == 0) return 0;
            m = -m;
        }
    if (n > 1) m = -m;
    return m;
}

}  // namespace

BigInt closed_point_count(std::uint64_t q, int d)
{
    if (d < 1) return 0;
    BigInt s = 0;
    for (int e = 1; e <= d; ++e)
        if (d % e == 0) s += classical_mobius(e) * pow(BigInt(q), d / e);
    return s / d + (d == 1 ? 1 : 0);
}

std::vector<BigInt> mobius_degree_sums(std::uint64_t q, int max_degree)
{
    std::vector<BigInt> c(max_degree + 1, 0);
    c[0] = 1;
    for (int d = 1; d <= max_degree; ++d) {
        // multiply by (1 - u^d)^n via the binomial expansion
        const BigInt n = closed_point_count(q, d);
        std::vector<BigInt> factor(max_degree / d + 1, 0);
        BigInt binom = 1;
        for (int j = 0; j < static_cast<int>(factor.size()); ++j) {
            factor[j] = j % 2 ? BigInt(-binom) : binom;
            binom = binom * (n - j) / (j + 1);
        }
        std::vector<BigInt> next(max_degree + 1, 0);
        for (int i = 0; i <= max_degree; ++i) {
            if (c[i] == 0) continue;
            for (int j = 0; i + j * d <= max_degree; ++j) next[i + j * d] += c[i] * factor[j];
        }
        c = std::move(next);
    }
    return c;
}

Rational phi_hat(std::uint64_t q, int l, int k, int d)
{
    if (l - 3 * k < d) return 0;
    return qpow(q, 4 * l - 6 * k + 4 - d) - qpow(q, 3 * l - 3 * k + 3);
}

Rational psi_hat(std::uint64_t q, int N)
{
    if (N < 0) return 0;
    auto m = mobius_degree_sums(q, N);
    Rational r = 0;
    for (int d = 0; d <= N; ++d) {
        if (m[d] == 0) continue;
        const int Np = N - d;
        // Par(N'): 2l - 3k = N', l >= 3k
        for (int k = 0; 3 * k <= Np; ++k) {
            if ((Np + 3 * k) % 2) continue;
            int l = (Np + 3 * k) / 2;
            if (l < 3 * k) continue;
            r += Rational(m[d]) * phi_hat(q, l, k, d) / Rational(BigInt(gamma_order_q(q, k)));
        }
    }
    return r;
}

RationalFn fhat_closed_form(std::uint64_t q)
{
    using polyq::mul;
    using polyq::one_minus;
    PolyQ num = mul(mul(one_minus(qpow(q, 3), 3), one_minus(qpow(q, 4), 3)), one_minus(-qpow(q, 6), 3));
    PolyQ den = mul(mul(one_minus(qpow(q, 5), 3), one_minus(qpow(q, 4), 2)), one_minus(qpow(q, 3), 2));
    Rational pre = qpow(q, 2) / (qpow(q, 2) - 1);
    return RationalFn(polyq::scale(num, pre), den);
}

RationalFn ghat(std::uint64_t q)
{
    return RationalFn::polynomial(polyq::mul(polyq::one_minus(1, 1), polyq::one_minus(q, 1))) * fhat_closed_form(q);
}

Rational theta_hat(std::uint64_t q, int N)
{
    return psi_hat(q, N) - Rational(q + 1) * psi_hat(q, N - 1) + Rational(q) * psi_hat(q, N - 2);
}

SeriesQ aut_series_direct(std::uint64_t q, int K)
{
    SeriesQ r(K + 1);
    for (int k = 0; k <= K; ++k) r[k] = Rational(BigInt(1), BigInt(gamma_order_q(q, k)));
    return r;
}

RationalFn aut_series_closed(std::uint64_t q)
{
    Rational g0 = Rational(BigInt(gamma_order_q(q, 0)));
    return RationalFn({1 / g0, 1 / g0}, polyq::one_minus(Rational(BigInt(1), BigInt(q)), 1));
}

namespace {

// Solves the square system M x = b over Q.
std::vector<Rational> solve(std::vector<std::vector<Rational>> M, std::vector<Rational> b)
{
    const std::size_t n = b.size();
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && M[p][c] == 0) ++p;
        if (p == n) throw std::runtime_error("singular partial fraction system");
        std::swap(M[p], M[c]);
        std::swap(b[p], b[c]);
        for (std::size_t r = 0; r < n; ++r) {
            if (r == c || M[r][c] == 0) continue;
            Rational f = M[r][c] / M[c][c];
            for (std::size_t j = c; j < n; ++j) M[r][j] -= f * M[c][j];
            b[r] -= f * b[c];
        }
    }
    std::vector<Rational> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = b[i] / M[i][i];
    return x;
}

PolyQ shifted(const PolyQ& p, int s)
{
    PolyQ r(s, Rational(0));
    r.insert(r.end(), p.begin(), p.end());
    polyq::trim(r);
    return r;
}

}  // namespace

GhatConstants extract_constants(std::uint64_t q)
{
    using polyq::mul;
    using polyq::one_minus;
    RationalFn G = ghat(q);
    PolyQ f1 = one_minus(qpow(q, 2), 1), f3 = one_minus(qpow(q, 5), 3), f2 = one_minus(qpow(q, 3), 2);
    PolyQ den = mul(mul(f1, f3), f2);
    if (G.den() != den) throw std::runtime_error("unexpected pole structure in Ghat");

    GhatConstants c;
    auto [quo, rem] = polyq::divmod(G.num(), den);
    c.polynomial_part = quo;
    // rem = A f3 f2 + (b0 + b1 T + b2 T^2) f1 f2 + (p0 + p1 T) f1 f3
    std::vector<PolyQ> basis{mul(f3, f2)};
    PolyQ f12 = mul(f1, f2), f13 = mul(f1, f3);
    for (int i = 0; i < 3; ++i) basis.push_back(shifted(f12, i));
    for (int i = 0; i < 2; ++i) basis.push_back(shifted(f13, i));
    const int n = 6;
    std::vector<std::vector<Rational>> M(n, std::vector<Rational>(n, Rational(0)));
    std::vector<Rational> b(n, Rational(0));
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n && i < static_cast<int>(basis[j].size()); ++i) M[i][j] = basis[j][i];
    for (int i = 0; i < n && i < static_cast<int>(rem.size()); ++i) b[i] = rem[i];
    if (polyq::degree(rem) >= n) throw std::logic_error("remainder degree");
    auto x = solve(M, b);
    c.pole_q2 = x[0];
    c.cubic_block = {x[1], x[2], x[3]};
    c.quadratic_block = {x[4], x[5]};
    polyq::trim(c.cubic_block);
    polyq::trim(c.quadratic_block);
    c.c1 = x[0];
    for (int i = 0; i < 3; ++i) c.c2[i] = -x[1 + i];

    // Growth of the polynomial and P(T)/(1 - q^3 T^2) parts.
    const int order = 61;
    SeriesQ tail = RationalFn(c.quadratic_block, f2).expand(order);
    for (std::size_t i = 0; i < quo.size() && i < tail.size(); ++i) tail[i] += quo[i];
    double worst = 0;
    for (int N = 0; N < order; ++N) {
        double v = std::abs(rational_double(tail[N])) / std::pow(static_cast<double>(q), 1.5 * N);
        worst = std::max(worst, v);
    }
    c.remainder_constant = worst;
    return c;
}

RationalFn reconstruct(std::uint64_t q, const GhatConstants& c)
{
    using polyq::one_minus;
    return RationalFn::polynomial(c.polynomial_part) + RationalFn({c.pole_q2}, one_minus(qpow(q, 2), 1)) +
           RationalFn(c.cubic_block, one_minus(qpow(q, 5), 3)) + RationalFn(c.quadratic_block, one_minus(qpow(q, 3), 2));
}

Rational c1_expected(std::uint64_t q) { return (1 - qpow(q, -3)) * (1 + qpow(q, -1)); }

std::array<Rational, 3> c2_expected(std::uint64_t q)
{
    Rational pre = (1 - qpow(q, -2)) * qpow(q, -1);
    return {pre * (1 + qpow(q, 1)), pre * (qpow(q, 2) + qpow(q, 3)), pre * qpow(q, 4)};
}

Rational c1_from_zeta(std::uint64_t q)
{
    Rational z3 = zeta_p1(q).eval(qpow(q, -3));
    return 1 / (qpow(q, -1) * Rational(q - 1) * z3);
}

MainTermSplit main_theorem_decomposition(std::uint64_t q, int N, const GhatConstants& c)
{
    MainTermSplit s;
    s.theta_hat = theta_hat(q, N);
    s.main = c.c1 * qpow(q, 2 * N);
    s.secondary = c.c2[N % 3] * qpow(q, 5 * (N / 3));
    s.remainder = s.theta_hat - s.main + s.secondary;
    return s;
}

}  // namespace cubic
