#include "cubic/poly.hpp"

#include <algorithm>
#include <stdexcept>

namespace cubic::poly {

void trim(Poly& a)
{
    while (!a.empty() && a.back() == 0) a.pop_back();
}

int degree(const Poly& a) { return static_cast<int>(a.size()) - 1; }

Poly add(const Field& F, const Poly& a, const Poly& b)
{
    Poly r(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < r.size(); ++i) {
        Elem x = i < a.size() ? a[i] : 0;
        Elem y = i < b.size() ? b[i] : 0;
        r[i] = F.add(x, y);
    }
    trim(r);
    return r;
}

Poly sub(const Field& F, const Poly& a, const Poly& b)
{
    Poly r(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < r.size(); ++i) {
        Elem x = i < a.size() ? a[i] : 0;
        Elem y = i < b.size() ? b[i] : 0;
        r[i] = F.sub(x, y);
    }
    trim(r);
    return r;
}

Poly mul(const Field& F, const Poly& a, const Poly& b)
{
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = F.add(r[i + j], F.mul(a[i], b[j]));
    }
    trim(r);
    return r;
}

Poly scale(const Field& F, const Poly& a, Elem c)
{
    Poly r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = F.mul(a[i], c);
    trim(r);
    return r;
}

std::pair<Poly, Poly> divmod(const Field& F, const Poly& a, const Poly& b)
{
    if (b.empty()) throw std::domain_error("polynomial division by zero");
    Poly r = a;
    trim(r);
    int db = degree(b);
    if (degree(r) < db) return {Poly{}, r};
    Poly quo(r.size() - b.size() + 1, 0);
    Elem lead_inv = F.inv(b.back());
    for (int i = degree(r); i >= db; --i) {
        Elem c = r[i];
        if (c == 0) continue;
        c = F.mul(c, lead_inv);
        quo[i - db] = c;
        for (int j = 0; j <= db; ++j) r[i - db + j] = F.sub(r[i - db + j], F.mul(c, b[j]));
    }
    r.resize(db);
    trim(r);
    trim(quo);
    return {quo, r};
}

Poly mod(const Field& F, const Poly& a, const Poly& b)
{
    if (degree(a) < degree(b)) {
        Poly r = a;
        trim(r);
        return r;
    }
    return divmod(F, a, b).second;
}

Poly monic(const Field& F, const Poly& a)
{
    if (a.empty()) return a;
    return scale(F, a, F.inv(a.back()));
}

Poly gcd(const Field& F, Poly a, Poly b)
{
    trim(a);
    trim(b);
    while (!b.empty()) {
        Poly r = mod(F, a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return monic(F, a);
}

Poly derivative(const Field& F, const Poly& a)
{
    if (a.size() <= 1) return {};
    Poly r(a.size() - 1);
    for (std::size_t i = 1; i < a.size(); ++i) r[i - 1] = F.mul(F.from_int(static_cast<long long>(i)), a[i]);
    trim(r);
    return r;
}

Elem eval(const Field& F, const Poly& a, Elem x)
{
    Elem v = 0;
    for (std::size_t i = a.size(); i-- > 0;) v = F.add(F.mul(v, x), a[i]);
    return v;
}

Poly powmod(const Field& F, const Poly& base, std::uint64_t e, const Poly& m)
{
    Poly result{1};
    result = mod(F, result, m);
    Poly b = mod(F, base, m);
    while (e > 0) {
        if (e & 1) result = mod(F, mul(F, result, b), m);
        e >>= 1;
        if (e) b = mod(F, mul(F, b, b), m);
    }
    return result;
}

Poly x_power(int n)
{
    Poly r(n + 1, 0);
    r[n] = 1;
    return r;
}

}  // namespace cubic::poly
