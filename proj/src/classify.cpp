#include "cubic/classify.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cubic {

const char* reducibility_name(Reducibility r)
{
    switch (r) {
    case Reducibility::zero: return "zero";
    case Reducibility::x_reducible: return "x_reducible";
    case Reducibility::specially_reducible: return "specially_reducible";
    case Reducibility::irreducible: return "irreducible";
    }
    return "?";
}

ReducibleSet::ReducibleSet(const SectionSpace& V, std::uint32_t q, std::vector<std::uint8_t> bits)
    : V_(V), bits_(std::move(bits))
{
    x_bound_ = 1;
    for (int i = 0; i < V.offset(3); ++i) x_bound_ *= q;
}

Reducibility ReducibleSet::classify(std::uint64_t index) const
{
    if (index == 0) return Reducibility::zero;
    if (index < x_bound_) return Reducibility::x_reducible;
    return bits_[index] ? Reducibility::specially_reducible : Reducibility::irreducible;
}

namespace {

std::uint64_t ipow(std::uint64_t b, int e)
{
    std::uint64_t r = 1;
    for (int i = 0; i < e; ++i) r *= b;
    return r;
}

int size_of(int d) { return d >= 0 ? d + 1 : 0; }

BinForm form_from_code(int degree, std::uint32_t q, std::uint64_t code)
{
    BinForm f = BinForm::zero(degree);
    for (int i = 0; i <= degree; ++i) {
        f.coeffs[i] = static_cast<Elem>(code % q);
        code /= q;
    }
    return f;
}

// Last nonzero coefficient, 0 for the zero form.
Elem last_nonzero(const BinForm& f)
{
    for (std::size_t i = f.coeffs.size(); i-- > 0;)
        if (f.coeffs[i] != 0) return f.coeffs[i];
    return 0;
}

}  // namespace

double reducible_product_work(const SectionSpace& V, std::uint32_t q)
{
    const int l = V.ell, k = V.k;
    double work = 0;
    for (int c = k; c <= l - 2 * k; ++c) {
        int dl = size_of(c) + size_of(c - k);
        int dq = size_of(l - c) + size_of(l - c - k) + size_of(l - c - 2 * k);
        work += std::pow(static_cast<double>(q), dl + dq - 1);
    }
    return work;
}

ReducibleSet mark_reducibles(const Field& F, const SectionSpace& V, std::uint64_t cap)
{
    const std::uint32_t q = F.order();
    std::uint64_t total = section_count(V, q, cap);
    double work = reducible_product_work(V, q);
    if (work > static_cast<double>(cap))
        throw CapExceeded("reducible product enumeration needs " + std::to_string(work) + " products", work);
    std::vector<std::uint8_t> bits(total, 0);
    const int l = V.ell, k = V.k;
    Section s = zero_section(V);
    for (int c = k; c <= l - 2 * k; ++c) {
        std::uint64_t n_c0 = ipow(q, size_of(c)), n_c1 = ipow(q, size_of(c - k));
        std::uint64_t n_b0 = ipow(q, size_of(l - c)), n_b1 = ipow(q, size_of(l - c - k)),
                      n_b2 = ipow(q, size_of(l - c - 2 * k));
        for (std::uint64_t i1 = 1; i1 < n_c1; ++i1) {
            BinForm C1 = form_from_code(c - k, q, i1);
            if (last_nonzero(C1) != 1) continue;
            for (std::uint64_t i0 = 0; i0 < n_c0; ++i0) {
                BinForm C0 = form_from_code(c, q, i0);
                for (std::uint64_t j2 = 1; j2 < n_b2; ++j2) {
                    BinForm B2 = form_from_code(l - c - 2 * k, q, j2);
                    BinForm B2C0 = form::mul(F, B2, C0);
                    s.a[3] = form::mul(F, B2, C1);
                    for (std::uint64_t j1 = 0; j1 < n_b1; ++j1) {
                        BinForm B1 = form_from_code(l - c - k, q, j1);
                        s.a[2] = form::add(F, form::mul(F, B1, C1), B2C0);
                        BinForm B1C0 = form::mul(F, B1, C0);
                        for (std::uint64_t j0 = 0; j0 < n_b0; ++j0) {
                            BinForm B0 = form_from_code(l - c, q, j0);
                            s.a[0] = form::mul(F, B0, C0);
                            s.a[1] = form::add(F, form::mul(F, B0, C1), B1C0);
                            bits[encode(V, q, s)] = 1;
                        }
                    }
                }
            }
        }
    }
    return ReducibleSet(V, q, std::move(bits));
}

bool reducible_by_trial_division(const Field& F, const SectionSpace& V, const Section& s)
{
    if (s.a[3].is_zero()) return true;
    const std::uint32_t q = F.order();
    const int l = V.ell, k = V.k;
    for (int c = k; c <= l - 2 * k; ++c) {
        std::uint64_t n_c0 = ipow(q, size_of(c)), n_c1 = ipow(q, size_of(c - k));
        for (std::uint64_t i1 = 1; i1 < n_c1; ++i1) {
            BinForm C1 = form_from_code(c - k, q, i1);
            if (last_nonzero(C1) != 1) continue;
            for (std::uint64_t i0 = 0; i0 < n_c0; ++i0) {
                BinForm negC0 = form::scale(F, form_from_code(c, q, i0), F.neg(1));
                // s(C1, -C0) = sum A_i C1^(3-i) (-C0)^i
                BinForm total = BinForm::zero(l + 3 * c - 3 * k);
                for (int i = 0; i < 4; ++i) {
                    BinForm t = form::mul(F, s.a[i], form::mul(F, form::power(F, C1, 3 - i), form::power(F, negC0, i)));
                    total = form::add(F, total, t);
                }
                if (total.is_zero()) return true;
            }
        }
    }
    return false;
}

Reducibility reducibility_by_trial_division(const Field& F, const SectionSpace& V, const Section& s)
{
    if (s.is_zero()) return Reducibility::zero;
    if (s.a[3].is_zero()) return Reducibility::x_reducible;
    return reducible_by_trial_division(F, V, s) ? Reducibility::specially_reducible : Reducibility::irreducible;
}

bool fibral_at(const PointCatalog& cat, const Section& s, std::size_t point)
{
    for (const auto& f : s.a)
        if (cat.reduce(point, f) != 0) return false;
    return true;
}

namespace {

// Polynomial lift (degree < deg P) of a residue class given by its code.
Poly lift_class(const PointCatalog& cat, std::size_t point, Elem a)
{
    if (cat.degree(point) == 1) {
        Poly p{a};
        poly::trim(p);
        return p;
    }
    const Field& K = cat.residue_field(point);
    Poly p(K.digits());
    for (int i = 0; i < K.digits(); ++i) p[i] = K.digit(a, i);
    poly::trim(p);
    return p;
}

// Chart polynomial coefficients c_m (power m of the fiber variable) and lift of the fiber point.
struct LocalChart {
    std::array<Poly, 4> c;
    Poly beta;
};

LocalChart local_chart(const PointCatalog& cat, const Section& s, std::size_t point, FiberIndex j)
{
    const Field& K = cat.residue_field(point);
    LocalChart ch;
    if (j == K.order()) {
        for (int i = 0; i < 4; ++i) ch.c[i] = cat.local(point, s.a[i]);
    } else {
        for (int i = 0; i < 4; ++i) ch.c[3 - i] = cat.local(point, s.a[i]);
        ch.beta = lift_class(cat, point, j);
    }
    return ch;
}

}  // namespace

bool singular_at(const PointCatalog& cat, const Section& s, std::size_t point, FiberIndex j)
{
    const Field& F = cat.base();
    const Poly& pi = cat.uniformizer(point);
    Poly pi2 = poly::mul(F, pi, pi);
    LocalChart ch = local_chart(cat, s, point, j);
    // value = sum c_m beta^m mod pi^2, derivative = sum m c_m beta^(m-1) mod pi
    Poly value, deriv, bpow{1};
    Poly bprev;  // beta^(m-1)
    for (int m = 0; m < 4; ++m) {
        value = poly::add(F, value, poly::mul(F, ch.c[m], bpow));
        if (m >= 1) deriv = poly::add(F, deriv, poly::scale(F, poly::mul(F, ch.c[m], bprev), F.from_int(m)));
        bprev = bpow;
        bpow = poly::mod(F, poly::mul(F, bpow, ch.beta), pi2);
    }
    return poly::mod(F, value, pi2).empty() && poly::mod(F, deriv, pi).empty();
}

std::vector<FiberIndex> singular_fiber_points(const PointCatalog& cat, const Section& s, std::size_t point)
{
    std::vector<FiberIndex> out;
    const Field& K = cat.residue_field(point);
    for (const ProjPoint& p : cubic_roots_in_P1(K, restrict_to_fiber(cat, point, s))) {
        FiberIndex j = fiber_index(K, p);
        if (singular_at(cat, s, point, j)) out.push_back(j);
    }
    return out;
}

bool bad_above(const PointCatalog& cat, const Section& s, std::size_t point)
{
    if (s.is_zero() || fibral_at(cat, s, point)) return true;
    return !singular_fiber_points(cat, s, point).empty();
}

bool is_primitive(const Field& F, const Section& s)
{
    Poly g;
    int inf_ok = 0;
    for (const auto& f : s.a) {
        if (f.degree < 0) continue;
        g = poly::gcd(F, g, form::affine(f));
        if (!f.is_zero() && f.coeffs.back() != 0) inf_ok = 1;  // t0^d coefficient: nonzero at infinity
    }
    if (g.empty()) return false;
    return poly::degree(g) == 0 && inf_ok;
}

namespace {

void check_point(const PointCatalog& cat, const Section& s, std::size_t point, SmoothReport& rep)
{
    BadWitness w;
    w.point = point;
    w.fibral = fibral_at(cat, s, point);
    if (!w.fibral) w.singular = singular_fiber_points(cat, s, point);
    if (w.fibral || !w.singular.empty()) rep.bad.push_back(std::move(w));
}

std::size_t catalog_index(const PointCatalog& cat, const ClosedPoint& p)
{
    auto idx = cat.find(p);
    if (!idx) throw std::invalid_argument("point catalog does not reach degree " + std::to_string(p.degree()));
    return *idx;
}

}  // namespace

SmoothReport is_smooth(const PointCatalog& cat, const SectionSpace& V, const Section& s)
{
    if (s.is_zero()) throw std::domain_error("smoothness of the zero section");
    const Field& F = cat.base();
    SmoothReport rep;
    BinForm disc = discriminant(F, V, s);
    if (!disc.is_zero()) {
        auto fac = binform_factor(F, cat.irreducibles(), disc);
        for (const auto& [pt, mult] : fac.factors) check_point(cat, s, catalog_index(cat, pt), rep);
        rep.smooth = rep.bad.empty();
        return rep;
    }
    const bool pure_cube_shape = F.characteristic() == 3 && s.a[1].is_zero() && s.a[2].is_zero() &&
                                 !s.a[0].is_zero() && !s.a[3].is_zero();
    if (pure_cube_shape) {
        // s = A0 x^3 + A3 y^3; bad points divide the Wronskian A0 A3' - A0' A3 or lie at infinity.
        Poly a0 = form::affine(s.a[0]), a3 = form::affine(s.a[3]);
        Poly w = poly::sub(F, poly::mul(F, a0, poly::derivative(F, a3)), poly::mul(F, poly::derivative(F, a0), a3));
        if (!w.empty()) {
            rep.inseparable = true;
            if (poly::degree(w) > 0) {
                auto fac = binform_factor(F, cat.irreducibles(), form::homogenize(w, poly::degree(w)));
                for (const auto& [pt, mult] : fac.factors) check_point(cat, s, catalog_index(cat, pt), rep);
            }
            check_point(cat, s, catalog_index(cat, ClosedPoint{true, {}}), rep);
            rep.smooth = rep.bad.empty();
            return rep;
        }
    }
    // Otherwise s has a repeated horizontal factor (bad above every point) or, in char 2, a purely
    // inseparable quadratic factor, where the surface can still be regular. Check point by point.
    const int reach = std::max({V.ell, 2 * V.degree(), 1});
    if (cat.max_degree() < reach)
        throw std::invalid_argument("point catalog does not reach degree " + std::to_string(reach));
    std::size_t checked = 0;
    for (std::size_t p = 0; p < cat.size() && cat.degree(p) <= reach; ++p, ++checked) check_point(cat, s, p, rep);
    if (rep.bad.size() == checked) {
        rep.bad.clear();
        rep.bad_everywhere = true;
    }
    rep.smooth = rep.bad.empty() && !rep.bad_everywhere;
    return rep;
}

SectionClass classify_section(const PointCatalog& cat, const SectionSpace& V, const Section& s, Reducibility r)
{
    SectionClass c;
    c.reducibility = r;
    if (r == Reducibility::zero) return c;
    c.primitive = is_primitive(cat.base(), s);
    SmoothReport rep = is_smooth(cat, V, s);
    c.smooth = rep.smooth;
    c.inseparable = rep.inseparable;
    c.bad_everywhere = rep.bad_everywhere;
    for (const auto& w : rep.bad) c.bad_points.push_back(w.point);
    return c;
}

namespace {

// Local polynomial of the basis vector sitting at slot i, coefficient jj.
Poly basis_local(const PointCatalog& cat, std::size_t point, const SectionSpace& V, int i, int jj)
{
    int d = V.slot_degree(i);
    return cat.point(point).infinite ? poly::x_power(d - jj) : poly::x_power(jj);
}

std::vector<Elem> padded(const Poly& p, int len)
{
    std::vector<Elem> out(len, 0);
    for (std::size_t i = 0; i < p.size() && static_cast<int>(i) < len; ++i) out[i] = p[i];
    return out;
}

// Appends rows: for each basis vector, the digits of value(e) mod modulus.
template <class Fn>
void append_rows(LinearConditionSystem& sys, const PointCatalog& cat, std::size_t point, const Poly& modulus,
                 ConditionKind kind, Fn&& value)
{
    const Field& F = cat.base();
    const SectionSpace& V = sys.space;
    int len = poly::degree(modulus);
    int dim = V.dimension();
    std::vector<std::vector<Elem>> cols;
    for (int i = 0; i < 4; ++i)
        for (int jj = 0; jj < V.slot_size(i); ++jj) {
            Poly e = basis_local(cat, point, V, i, jj);
            cols.push_back(padded(poly::mod(F, value(i, e), modulus), len));
        }
    for (int r = 0; r < len; ++r) {
        std::vector<Elem> row(dim);
        for (int c = 0; c < dim; ++c) row[c] = cols[c][r];
        sys.rows.push_back(std::move(row));
        sys.kinds.push_back(kind);
    }
}

void append_marking_rows(LinearConditionSystem& sys, const PointCatalog& cat, std::size_t point, FiberIndex j,
                         bool singular)
{
    const Field& F = cat.base();
    const Field& K = cat.residue_field(point);
    const Poly& pi = cat.uniformizer(point);
    Poly pi2 = poly::mul(F, pi, pi);
    const bool x_chart = j == K.order();
    Poly beta = x_chart ? Poly{} : lift_class(cat, point, j);
    auto bpow = [&](int m) {
        Poly r{1};
        for (int t = 0; t < m; ++t) r = poly::mul(F, r, beta);
        return r;
    };
    // slot i contributes to fiber-variable power m = i (x chart) or 3 - i (y chart)
    auto value = [&](int i, const Poly& e) {
        int m = x_chart ? i : 3 - i;
        return poly::mul(F, e, bpow(m));
    };
    auto deriv = [&](int i, const Poly& e) {
        int m = x_chart ? i : 3 - i;
        if (m == 0) return Poly{};
        return poly::scale(F, poly::mul(F, e, bpow(m - 1)), F.from_int(m));
    };
    append_rows(sys, cat, point, pi, ConditionKind::vanish, value);
    if (singular) {
        append_rows(sys, cat, point, pi2, ConditionKind::singular_extra, value);
        append_rows(sys, cat, point, pi, ConditionKind::singular_extra, deriv);
    }
}

}  // namespace

LinearConditionSystem empty_system(const SectionSpace& V) { return LinearConditionSystem{V, {}, {}}; }

LinearConditionSystem van_system(const PointCatalog& cat, const SectionSpace& V, const Divisor& D, const Marking& m)
{
    LinearConditionSystem sys = empty_system(V);
    for (std::size_t t = 0; t < D.points.size(); ++t) append_marking_rows(sys, cat, D.points[t], m.fiber[t], false);
    return sys;
}

LinearConditionSystem sing_system(const PointCatalog& cat, const SectionSpace& V, const Divisor& D, const Marking& m)
{
    LinearConditionSystem sys = empty_system(V);
    for (std::size_t t = 0; t < D.points.size(); ++t) append_marking_rows(sys, cat, D.points[t], m.fiber[t], true);
    return sys;
}

LinearConditionSystem fib_system(const PointCatalog& cat, const SectionSpace& V, const Divisor& D)
{
    LinearConditionSystem sys = empty_system(V);
    for (auto point : D.points) {
        const Poly& pi = cat.uniformizer(point);
        for (int slot = 0; slot < 4; ++slot) {
            auto value = [&](int i, const Poly& e) { return i == slot ? e : Poly{}; };
            if (V.slot_size(slot) > 0) append_rows(sys, cat, point, pi, ConditionKind::fibral, value);
        }
    }
    return sys;
}

LinearConditionSystem combine(const LinearConditionSystem& a, const LinearConditionSystem& b)
{
    if (!(a.space == b.space)) throw std::invalid_argument("systems on different spaces");
    LinearConditionSystem r = a;
    r.rows.insert(r.rows.end(), b.rows.begin(), b.rows.end());
    r.kinds.insert(r.kinds.end(), b.kinds.begin(), b.kinds.end());
    return r;
}

LinearConditionSystem singfib_system(const PointCatalog& cat, const SectionSpace& V, const Divisor& D,
                                     const Marking& m)
{
    return combine(sing_system(cat, V, D, m), fib_system(cat, V, D));
}

namespace {

// Reduced row echelon form in place; returns pivot columns.
std::vector<int> rref(const Field& F, std::vector<std::vector<Elem>>& A, int cols)
{
    std::vector<int> pivots;
    std::size_t r = 0;
    for (int c = 0; c < cols && r < A.size(); ++c) {
        std::size_t p = r;
        while (p < A.size() && A[p][c] == 0) ++p;
        if (p == A.size()) continue;
        std::swap(A[p], A[r]);
        Elem inv = F.inv(A[r][c]);
        for (auto& x : A[r]) x = F.mul(x, inv);
        for (std::size_t i = 0; i < A.size(); ++i) {
            if (i == r || A[i][c] == 0) continue;
            Elem f = A[i][c];
            for (int j = 0; j < cols; ++j) A[i][j] = F.sub(A[i][j], F.mul(f, A[r][j]));
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

}  // namespace

int system_rank(const Field& F, const LinearConditionSystem& sys)
{
    auto A = sys.rows;
    return static_cast<int>(rref(F, A, sys.space.dimension()).size());
}

std::uint64_t solution_count(const Field& F, const LinearConditionSystem& sys)
{
    return ipow(F.order(), sys.space.dimension() - system_rank(F, sys));
}

std::vector<std::vector<Elem>> nullspace_basis(const Field& F, const LinearConditionSystem& sys)
{
    const int n = sys.space.dimension();
    auto A = sys.rows;
    auto piv = rref(F, A, n);
    std::vector<int> is_pivot(n, -1);
    for (std::size_t r = 0; r < piv.size(); ++r) is_pivot[piv[r]] = static_cast<int>(r);
    std::vector<std::vector<Elem>> basis;
    for (int f = 0; f < n; ++f) {
        if (is_pivot[f] >= 0) continue;
        std::vector<Elem> v(n, 0);
        v[f] = 1;
        for (std::size_t r = 0; r < piv.size(); ++r) v[piv[r]] = F.neg(A[r][f]);
        basis.push_back(std::move(v));
    }
    return basis;
}

void for_each_solution(const Field& F, const LinearConditionSystem& sys, const std::function<void(std::uint64_t)>& f)
{
    const std::uint32_t q = F.order();
    auto basis = nullspace_basis(F, sys);
    const int n = sys.space.dimension();
    const std::size_t r = basis.size();
    std::vector<Elem> v(n, 0);
    std::vector<Elem> digits(r, 0);
    while (true) {
        f(encode_coordinates(q, v));
        std::size_t t = 0;
        while (t < r) {
            Elem old = digits[t];
            Elem nw = (old + 1) % q;
            Elem delta = F.sub(nw, old);
            for (int i = 0; i < n; ++i)
                if (basis[t][i]) v[i] = F.add(v[i], F.mul(delta, basis[t][i]));
            digits[t] = nw;
            if (nw != 0) break;
            ++t;
        }
        if (t == r) break;
    }
}

std::uint64_t count_irreducible_solutions(const Field& F, const LinearConditionSystem& sys, const ReducibleSet& red)
{
    std::uint64_t n = 0;
    for_each_solution(F, sys, [&](std::uint64_t idx) {
        if (!red.contains(idx)) ++n;
    });
    return n;
}

Standardization standardize_marking(const PointCatalog& cat, const SectionSpace& V, std::size_t point, FiberIndex j)
{
    if (cat.degree(point) != 1) throw std::domain_error("standard position needs a rational point");
    const Field& F = cat.base();
    ProjPoint p = fiber_point(F, j);
    Standardization out;
    out.change = gamma_identity(V.k);
    if (V.k == 0) {
        if (p.y == 0) {
            out.change = gamma_swap();
        } else {
            out.change.m = {1, F.neg(p.x), 0, 1};
        }
        out.position = StandardPosition::zero_one;
        out.image = 0;
        return out;
    }
    if (p.y != 0 && p.x == 0) {
        out.position = StandardPosition::zero_one;
        out.image = 0;
        return out;
    }
    // n(P) x + y = 0 at p
    Elem target = p.y == 0 ? 0 : F.neg(F.inv(p.x));
    BinForm n = BinForm::zero(V.k);
    if (cat.point(point).infinite)
        n.coeffs[V.k] = target;
    else
        n.coeffs[0] = target;
    out.change.n = n;
    out.position = StandardPosition::one_zero;
    out.image = F.order();
    return out;
}

SectionSpace elm_target_space(const SectionSpace& V, StandardPosition pos)
{
    if (pos == StandardPosition::zero_one) return SectionSpace{V.ell + 1, V.k + 1};
    return SectionSpace{V.ell - 2, V.k - 1};
}

ElmResult elm_transform_local(const PointCatalog& cat, const SectionSpace& V, std::size_t point, StandardPosition pos,
                              const Section& s)
{
    if (cat.degree(point) != 1) throw std::domain_error("local transform needs a rational point");
    if (pos == StandardPosition::one_zero && V.k < 1) throw std::domain_error("(1:0) position needs k >= 1");
    const Field& F = cat.base();
    BinForm L = cat.point(point).form();
    BinForm L2 = form::mul(F, L, L);
    ElmResult out;
    out.target = elm_target_space(V, pos);
    out.image = zero_section(out.target);
    if (pos == StandardPosition::zero_one) {
        BinForm q2, q3;
        if (!form::divide(F, s.a[2], L, q2) || !form::divide(F, s.a[3], L2, q3))
            throw std::domain_error("section is not singular at the standard marking");
        out.image.a = {form::mul(F, L, s.a[0]), s.a[1], q2, q3};
        out.target_fiber = F.order();
    } else {
        BinForm q0, q1;
        if (!form::divide(F, s.a[0], L2, q0) || !form::divide(F, s.a[1], L, q1))
            throw std::domain_error("section is not singular at the standard marking");
        out.image.a = {q0, q1, s.a[2], form::mul(F, L, s.a[3])};
        out.target_fiber = 0;
    }
    for (int i = 0; i < 4; ++i)
        if (out.image.a[i].degree != out.target.slot_degree(i)) throw std::logic_error("slot degree mismatch");
    return out;
}

DichotomyResult restriction_dichotomy(const PointCatalog& cat, const SectionSpace& V, const Divisor& D,
                                      const Marking& m, const ReducibleSet& red)
{
    const Field& F = cat.base();
    DichotomyResult r;
    auto sys = van_system(cat, V, D, m);
    r.surjective = system_rank(F, sys) == divisor_degree(cat, D);
    r.kernel_reducible = count_irreducible_solutions(F, sys, red) == 0;
    return r;
}

}  // namespace cubic
