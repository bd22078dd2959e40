#include "cubic/binform.hpp"

#include <algorithm>
#include <stdexcept>

namespace cubic {

BinForm BinForm::zero(int degree)
{
    BinForm f;
    f.degree = degree;
    f.coeffs.assign(degree >= 0 ? degree + 1 : 0, 0);
    return f;
}

BinForm BinForm::constant(Elem c)
{
    BinForm f;
    f.degree = 0;
    f.coeffs = {c};
    return f;
}

bool BinForm::is_zero() const
{
    for (Elem c : coeffs)
        if (c != 0) return false;
    return true;
}

namespace form {

BinForm mul(const Field& F, const BinForm& a, const BinForm& b)
{
    BinForm r = BinForm::zero(a.degree + b.degree);
    if (a.degree < 0 || b.degree < 0) return r;
    for (int i = 0; i <= a.degree; ++i) {
        if (a.coeffs[i] == 0) continue;
        for (int j = 0; j <= b.degree; ++j)
            r.coeffs[i + j] = F.add(r.coeffs[i + j], F.mul(a.coeffs[i], b.coeffs[j]));
    }
    return r;
}

BinForm add(const Field& F, const BinForm& a, const BinForm& b)
{
    if (a.degree != b.degree) throw std::invalid_argument("form degrees differ");
    BinForm r = a;
    for (std::size_t i = 0; i < r.coeffs.size(); ++i) r.coeffs[i] = F.add(a.coeffs[i], b.coeffs[i]);
    return r;
}

BinForm sub(const Field& F, const BinForm& a, const BinForm& b)
{
    if (a.degree != b.degree) throw std::invalid_argument("form degrees differ");
    BinForm r = a;
    for (std::size_t i = 0; i < r.coeffs.size(); ++i) r.coeffs[i] = F.sub(a.coeffs[i], b.coeffs[i]);
    return r;
}

BinForm scale(const Field& F, const BinForm& a, Elem c)
{
    BinForm r = a;
    for (auto& x : r.coeffs) x = F.mul(x, c);
    return r;
}

BinForm power(const Field& F, const BinForm& a, int n)
{
    BinForm r = BinForm::constant(1);
    for (int i = 0; i < n; ++i) r = mul(F, r, a);
    return r;
}

Elem eval(const Field& K, const BinForm& f, Elem a, Elem b)
{
    // sum c_i a^i b^(d-i), Horner in a with running powers of b
    if (f.degree < 0) return 0;
    Elem v = 0;
    Elem bp = 1;
    for (int i = f.degree; i >= 0; --i) {
        v = K.add(v, K.mul(f.coeffs[i], K.mul(K.pow(a, static_cast<std::uint64_t>(i)), bp)));
        bp = K.mul(bp, b);
    }
    return v;
}

Poly affine(const BinForm& f)
{
    Poly p(f.coeffs.begin(), f.coeffs.end());
    poly::trim(p);
    return p;
}

Poly at_infinity(const BinForm& f)
{
    Poly p(f.coeffs.rbegin(), f.coeffs.rend());
    poly::trim(p);
    return p;
}

BinForm homogenize(const Poly& p, int degree)
{
    if (poly::degree(p) > degree) throw std::invalid_argument("polynomial exceeds form degree");
    BinForm f = BinForm::zero(degree);
    for (std::size_t i = 0; i < p.size(); ++i) f.coeffs[i] = p[i];
    return f;
}

bool divide(const Field& F, const BinForm& a, const BinForm& b, BinForm& quotient)
{
    if (b.degree < 0 || b.is_zero()) throw std::domain_error("division by zero form");
    int qd = a.degree - b.degree;
    if (a.degree < 0 || a.is_zero()) {
        quotient = BinForm::zero(qd);
        return true;
    }
    if (qd < 0) return false;
    auto [quo, rem] = poly::divmod(F, affine(a), affine(b));
    if (!rem.empty() || poly::degree(quo) > qd) return false;
    quotient = homogenize(quo, qd);
    return true;
}

}  // namespace form

BinForm ClosedPoint::form() const
{
    if (infinite) {
        BinForm f = BinForm::zero(1);
        f.coeffs[0] = 1;  // t1
        return f;
    }
    return form::homogenize(poly, degree());
}

bool point_less(const ClosedPoint& a, const ClosedPoint& b)
{
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    if (a.infinite != b.infinite) return b.infinite;
    return std::lexicographical_compare(a.poly.begin(), a.poly.end(), b.poly.begin(), b.poly.end());
}

IrreducibleTable::IrreducibleTable(const Field& F, int max_degree)
    : max_degree_(max_degree), by_degree_(std::max(max_degree, 0) + 1)
{
    const std::uint64_t q = F.order();
    for (int d = 1; d <= max_degree; ++d) {
        std::uint64_t total = 1;
        for (int i = 0; i < d; ++i) total *= q;
        if (total > (1ull << 26)) throw std::invalid_argument("irreducible table too large");
        for (std::uint64_t code = 0; code < total; ++code) {
            Poly p(d + 1);
            std::uint64_t c = code;
            for (int i = 0; i < d; ++i) {
                p[i] = static_cast<Elem>(c % q);
                c /= q;
            }
            p[d] = 1;
            bool irreducible = true;
            for (int e = 1; irreducible && 2 * e <= d; ++e)
                for (const Poly& f : by_degree_[e])
                    if (poly::mod(F, p, f).empty()) {
                        irreducible = false;
                        break;
                    }
            if (irreducible) by_degree_[d].push_back(std::move(p));
        }
        std::sort(by_degree_[d].begin(), by_degree_[d].end(), [](const Poly& a, const Poly& b) {
            return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
        });
    }
}

FormFactorization binform_factor(const Field& F, const IrreducibleTable& table, const BinForm& f)
{
    if (f.degree < 0 || f.is_zero()) throw std::domain_error("factorization of the zero form");
    FormFactorization out;
    Poly g = form::affine(f);
    int inf_mult = f.degree - poly::degree(g);
    out.unit = g.back();
    g = poly::monic(F, g);
    for (int d = 1; 2 * d <= poly::degree(g); ++d) {
        if (d > table.max_degree()) throw std::invalid_argument("irreducible table too small for factorization");
        for (const Poly& p : table.of_degree(d)) {
            int m = 0;
            while (poly::degree(g) >= d) {
                auto [quo, rem] = poly::divmod(F, g, p);
                if (!rem.empty()) break;
                g = std::move(quo);
                ++m;
            }
            if (m > 0) out.factors.push_back({ClosedPoint{false, p}, m});
        }
    }
    if (poly::degree(g) > 0) {
        bool merged = false;
        for (auto& [pt, m] : out.factors)
            if (pt.poly == g) {
                ++m;
                merged = true;
            }
        if (!merged) out.factors.push_back({ClosedPoint{false, g}, 1});
    }
    if (inf_mult > 0) out.factors.push_back({ClosedPoint{true, {}}, inf_mult});
    std::sort(out.factors.begin(), out.factors.end(),
              [](const auto& a, const auto& b) { return point_less(a.first, b.first); });
    return out;
}

Elem cubic_eval(const Field& K, const Cubic& c, const ProjPoint& pt)
{
    if (pt.y == 0) return K.mul(c[0], K.pow(pt.x, 3));
    Elem a = pt.x;
    Elem v = c[0];
    v = K.add(K.mul(v, a), c[1]);
    v = K.add(K.mul(v, a), c[2]);
    v = K.add(K.mul(v, a), c[3]);
    return v;
}

std::vector<ProjPoint> cubic_roots_in_P1(const Field& K, const Cubic& c)
{
    std::vector<ProjPoint> out;
    for (Elem a = 0; a < K.order(); ++a)
        if (cubic_eval(K, c, ProjPoint{a, 1}) == 0) out.push_back(ProjPoint{a, 1});
    if (c[0] == 0) out.push_back(ProjPoint{1, 0});
    return out;
}

std::uint64_t count_cubic_roots(const Field& K, const Cubic& c)
{
    if (c[0] == 0 && c[1] == 0 && c[2] == 0 && c[3] == 0) return static_cast<std::uint64_t>(K.order()) + 1;
    std::uint64_t n = c[0] == 0 ? 1 : 0;
    Poly h{c[3], c[2], c[1], c[0]};
    poly::trim(h);
    if (poly::degree(h) <= 0) return n;
    h = poly::monic(K, h);
    Poly z{0, 1};
    Poly zq = poly::powmod(K, z, K.order(), h);
    Poly g = poly::gcd(K, h, poly::sub(K, zq, poly::mod(K, z, h)));
    return n + static_cast<std::uint64_t>(poly::degree(g));
}

}  // namespace cubic
