#include "cubic/sections.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace cubic {

bool Section::is_zero() const
{
    for (const auto& f : a)
        if (!f.is_zero()) return false;
    return true;
}

std::vector<std::pair<int, int>> par_set(int N)
{
    std::vector<std::pair<int, int>> out;
    if (N < 0) return out;
    for (int k = 0;; ++k) {
        int twice_l = N + 3 * k;
        if (twice_l % 2 != 0) continue;
        int l = twice_l / 2;
        if (l < 3 * k) break;
        out.emplace_back(l, k);
    }
    return out;
}

std::uint64_t section_count(const SectionSpace& V, std::uint32_t q, std::uint64_t cap)
{
    double need = std::pow(static_cast<double>(q), V.dimension());
    if (need > static_cast<double>(cap))
        throw CapExceeded("space (" + std::to_string(V.ell) + "," + std::to_string(V.k) + ") has " +
                              std::to_string(need) + " sections, above the cap " + std::to_string(cap),
                          need);
    std::uint64_t n = 1;
    for (int i = 0; i < V.dimension(); ++i) n *= q;
    return n;
}

Section zero_section(const SectionSpace& V)
{
    Section s;
    for (int i = 0; i < 4; ++i) s.a[i] = BinForm::zero(V.slot_degree(i));
    return s;
}

std::vector<Elem> coordinates(const SectionSpace& V, const Section& s)
{
    std::vector<Elem> c;
    c.reserve(V.dimension());
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < V.slot_size(i); ++j) c.push_back(s.a[i].coeffs[j]);
    return c;
}

Section from_coordinates(const SectionSpace& V, const std::vector<Elem>& c)
{
    Section s = zero_section(V);
    std::size_t pos = 0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < V.slot_size(i); ++j) s.a[i].coeffs[j] = c[pos++];
    return s;
}

std::uint64_t encode_coordinates(std::uint32_t q, const std::vector<Elem>& c)
{
    std::uint64_t idx = 0;
    for (std::size_t i = c.size(); i-- > 0;) idx = idx * q + c[i];
    return idx;
}

std::uint64_t encode(const SectionSpace& V, std::uint32_t q, const Section& s)
{
    return encode_coordinates(q, coordinates(V, s));
}

void decode_into(const SectionSpace& V, std::uint32_t q, std::uint64_t index, Section& s)
{
    for (int i = 0; i < 4; ++i) {
        int d = V.slot_degree(i);
        if (s.a[i].degree != d) s.a[i] = BinForm::zero(d);
        for (int j = 0; j < V.slot_size(i); ++j) {
            s.a[i].coeffs[j] = static_cast<Elem>(index % q);
            index /= q;
        }
    }
}

Section decode(const SectionSpace& V, std::uint32_t q, std::uint64_t index)
{
    Section s = zero_section(V);
    decode_into(V, q, index, s);
    return s;
}

void for_each_section(const SectionSpace& V, const Field& F, std::uint64_t cap,
                      const std::function<void(std::uint64_t, const Section&)>& f)
{
    std::uint64_t n = section_count(V, F.order(), cap);
    Section s = zero_section(V);
    for (std::uint64_t idx = 0; idx < n; ++idx) {
        decode_into(V, F.order(), idx, s);
        f(idx, s);
    }
}

BinForm discriminant(const Field& F, const SectionSpace& V, const Section& s)
{
    const auto& [A0, A1, A2, A3] = s.a;
    auto m = [&](const BinForm& x, const BinForm& y) { return form::mul(F, x, y); };
    int deg = 4 * V.ell - 6 * V.k;
    BinForm acc = BinForm::zero(deg);
    auto add_term = [&](long long c, const BinForm& t) {
        acc = form::add(F, acc, form::scale(F, t, F.from_int(c)));
    };
    add_term(-27, m(m(A0, A0), m(A3, A3)));
    add_term(18, m(m(A0, A1), m(A2, A3)));
    add_term(-4, m(A0, m(A2, m(A2, A2))));
    add_term(-4, m(m(A1, m(A1, A1)), A3));
    add_term(1, m(m(A1, A1), m(A2, A2)));
    return acc;
}

Cubic restrict_to_fiber(const PointCatalog& cat, std::size_t point, const Section& s)
{
    return Cubic{cat.reduce(point, s.a[0]), cat.reduce(point, s.a[1]), cat.reduce(point, s.a[2]),
                 cat.reduce(point, s.a[3])};
}

std::uint64_t r_P(const PointCatalog& cat, std::size_t point, const Section& s)
{
    return count_cubic_roots(cat.residue_field(point), restrict_to_fiber(cat, point, s));
}

long long a_P(const PointCatalog& cat, std::size_t point, const Section& s)
{
    return static_cast<long long>(r_P(cat, point, s)) - 1;
}

std::uint64_t r_D(const PointCatalog& cat, const Divisor& D, const Section& s)
{
    std::uint64_t r = 1;
    for (auto i : D.points) r *= r_P(cat, i, s);
    return r;
}

long long a_D(const PointCatalog& cat, const Divisor& D, const Section& s)
{
    long long a = 1;
    for (auto i : D.points) a *= a_P(cat, i, s);
    return a;
}

std::uint64_t gamma_order(std::uint64_t q, int k)
{
    if (k == 0) return (q * q - q) * (q * q - 1);
    std::uint64_t n = (q - 1) * (q - 1);
    for (int i = 0; i <= k; ++i) n *= q;
    return n;
}

GammaElem gamma_identity(int k)
{
    GammaElem g;
    g.k = k;
    g.n = BinForm::zero(k);
    return g;
}

GammaElem gamma_swap()
{
    GammaElem g;
    g.m = {0, 1, 1, 0};
    return g;
}

GammaElem gamma_compose(const Field& F, const GammaElem& a, const GammaElem& b)
{
    if (a.k != b.k) throw std::invalid_argument("gamma elements of different k");
    GammaElem r = gamma_identity(a.k);
    if (a.k == 0) {
        r.m[0] = F.add(F.mul(a.m[0], b.m[0]), F.mul(a.m[1], b.m[2]));
        r.m[1] = F.add(F.mul(a.m[0], b.m[1]), F.mul(a.m[1], b.m[3]));
        r.m[2] = F.add(F.mul(a.m[2], b.m[0]), F.mul(a.m[3], b.m[2]));
        r.m[3] = F.add(F.mul(a.m[2], b.m[1]), F.mul(a.m[3], b.m[3]));
        return r;
    }
    r.g1 = F.mul(a.g1, b.g1);
    r.g2 = F.mul(a.g2, b.g2);
    r.n = form::add(F, form::scale(F, a.n, b.g1), form::scale(F, b.n, a.g2));
    return r;
}

Elem gamma_det(const Field& F, const GammaElem& a)
{
    if (a.k == 0) return F.sub(F.mul(a.m[0], a.m[3]), F.mul(a.m[1], a.m[2]));
    return F.mul(a.g1, a.g2);
}

GammaElem gamma_inverse(const Field& F, const GammaElem& a)
{
    GammaElem r = gamma_identity(a.k);
    Elem dinv = F.inv(gamma_det(F, a));
    if (a.k == 0) {
        r.m = {F.mul(a.m[3], dinv), F.neg(F.mul(a.m[1], dinv)), F.neg(F.mul(a.m[2], dinv)), F.mul(a.m[0], dinv)};
        return r;
    }
    r.g1 = F.inv(a.g1);
    r.g2 = F.inv(a.g2);
    r.n = form::scale(F, a.n, F.neg(dinv));
    return r;
}

std::vector<GammaElem> enumerate_gamma(const Field& F, int k)
{
    std::vector<GammaElem> out;
    const Elem q = F.order();
    if (k == 0) {
        for (Elem a = 0; a < q; ++a)
            for (Elem b = 0; b < q; ++b)
                for (Elem c = 0; c < q; ++c)
                    for (Elem d = 0; d < q; ++d) {
                        GammaElem g = gamma_identity(0);
                        g.m = {a, b, c, d};
                        if (gamma_det(F, g) != 0) out.push_back(g);
                    }
        return out;
    }
    std::uint64_t nforms = 1;
    for (int i = 0; i <= k; ++i) nforms *= q;
    for (Elem g1 = 1; g1 < q; ++g1)
        for (Elem g2 = 1; g2 < q; ++g2)
            for (std::uint64_t code = 0; code < nforms; ++code) {
                GammaElem g = gamma_identity(k);
                g.g1 = g1;
                g.g2 = g2;
                std::uint64_t c = code;
                for (int i = 0; i <= k; ++i) {
                    g.n.coeffs[i] = static_cast<Elem>(c % q);
                    c /= q;
                }
                out.push_back(g);
            }
    return out;
}

namespace {

// Binary form in x, y whose coefficients are forms in t0, t1.
// terms[j] multiplies x^(m-j) y^j and has degree weight - j k.
struct WeightedForm {
    int weight = 0;
    std::vector<BinForm> terms;
};

WeightedForm wf_mul(const Field& F, int k, const WeightedForm& a, const WeightedForm& b)
{
    WeightedForm r;
    r.weight = a.weight + b.weight;
    std::size_t m = a.terms.size() + b.terms.size() - 2;
    r.terms.resize(m + 1);
    for (std::size_t j = 0; j <= m; ++j) r.terms[j] = BinForm::zero(r.weight - static_cast<int>(j) * k);
    for (std::size_t i = 0; i < a.terms.size(); ++i)
        for (std::size_t j = 0; j < b.terms.size(); ++j)
            r.terms[i + j] = form::add(F, r.terms[i + j], form::mul(F, a.terms[i], b.terms[j]));
    return r;
}

}  // namespace

Section gamma_act(const Field& F, const SectionSpace& V, const GammaElem& g, const Section& s)
{
    if (g.k != V.k) throw std::invalid_argument("gamma element does not match the space");
    const int k = V.k;
    GammaElem inv = gamma_inverse(F, g);
    // x -> X, y -> Y with (X, Y)^T = g^{-1} (x, y)^T
    WeightedForm X{0, {}}, Y{k, {}};
    if (k == 0) {
        X.terms = {BinForm::constant(inv.m[0]), BinForm::constant(inv.m[1])};
        Y.terms = {BinForm::constant(inv.m[2]), BinForm::constant(inv.m[3])};
    } else {
        X.terms = {BinForm::constant(inv.g1), BinForm::zero(-k)};
        Y.terms = {inv.n, BinForm::constant(inv.g2)};
    }
    Elem det = gamma_det(F, g);
    Section out = zero_section(V);
    for (int i = 0; i < 4; ++i) {
        if (V.slot_degree(i) < 0) continue;
        WeightedForm t{V.slot_degree(i), {s.a[i]}};
        for (int e = 0; e < 3 - i; ++e) t = wf_mul(F, k, t, X);
        for (int e = 0; e < i; ++e) t = wf_mul(F, k, t, Y);
        for (int j = 0; j < 4; ++j)
            if (V.slot_degree(j) >= 0) out.a[j] = form::add(F, out.a[j], t.terms[j]);
    }
    for (int j = 0; j < 4; ++j) out.a[j] = form::scale(F, out.a[j], det);
    return out;
}

std::vector<std::vector<Elem>> gamma_matrix(const Field& F, const SectionSpace& V, const GammaElem& g)
{
    int dim = V.dimension();
    std::vector<std::vector<Elem>> M(dim, std::vector<Elem>(dim, 0));
    for (int j = 0; j < dim; ++j) {
        std::vector<Elem> e(dim, 0);
        e[j] = 1;
        auto img = coordinates(V, gamma_act(F, V, g, from_coordinates(V, e)));
        for (int r = 0; r < dim; ++r) M[r][j] = img[r];
    }
    return M;
}

FiberIndex gamma_map_fiber(const PointCatalog& cat, std::size_t point, const GammaElem& g, FiberIndex j)
{
    const Field& K = cat.residue_field(point);
    ProjPoint p = fiber_point(K, j);
    Elem a, b, c, d;
    if (g.k == 0) {
        a = g.m[0], b = g.m[1], c = g.m[2], d = g.m[3];
    } else {
        a = g.g1, b = 0, c = cat.reduce(point, g.n), d = g.g2;
    }
    ProjPoint img{K.add(K.mul(a, p.x), K.mul(b, p.y)), K.add(K.mul(c, p.x), K.mul(d, p.y))};
    return fiber_index(K, img);
}

std::vector<OrbitInfo> orbit_stabilizer(const Field& F, const SectionSpace& V, const std::vector<std::uint8_t>& member)
{
    const std::uint32_t q = F.order();
    const int dim = V.dimension();
    auto group = enumerate_gamma(F, V.k);
    std::vector<std::vector<std::vector<Elem>>> mats;
    mats.reserve(group.size());
    for (const auto& g : group) mats.push_back(gamma_matrix(F, V, g));
    std::vector<std::uint8_t> seen(member.size(), 0);
    std::vector<OrbitInfo> out;
    std::vector<Elem> c(dim), img(dim);
    std::vector<std::uint64_t> images;
    for (std::uint64_t idx = 0; idx < member.size(); ++idx) {
        if (!member[idx] || seen[idx]) continue;
        std::uint64_t x = idx;
        for (int i = 0; i < dim; ++i) {
            c[i] = static_cast<Elem>(x % q);
            x /= q;
        }
        images.clear();
        std::uint64_t stab = 0;
        for (const auto& M : mats) {
            for (int r = 0; r < dim; ++r) {
                Elem v = 0;
                for (int j = 0; j < dim; ++j)
                    if (c[j]) v = F.add(v, F.mul(M[r][j], c[j]));
                img[r] = v;
            }
            std::uint64_t e = encode_coordinates(q, img);
            if (!member[e]) throw InvariantViolation("member set is not stable under the group");
            if (e == idx) ++stab;
            images.push_back(e);
        }
        std::sort(images.begin(), images.end());
        images.erase(std::unique(images.begin(), images.end()), images.end());
        for (auto e : images) seen[e] = 1;
        if (images.size() * stab != group.size()) throw std::logic_error("orbit-stabilizer mismatch");
        out.push_back(OrbitInfo{idx, images.size(), stab});
    }
    return out;
}

}  // namespace cubic
