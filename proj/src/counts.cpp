#include "cubic/counts.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace cubic {

const char* section_set_name(SectionSet a)
{
    switch (a) {
    case SectionSet::all: return "all";
    case SectionSet::zero: return "z";
    case SectionSet::nonzero: return "nz";
    case SectionSet::x_reducible: return "xr";
    case SectionSet::x_irreducible: return "xir";
    case SectionSet::specially_reducible: return "sr";
    case SectionSet::horizontally_reducible: return "hr";
    case SectionSet::irreducible: return "ir";
    }
    return "?";
}

bool in_set(SectionSet a, Reducibility r)
{
    switch (a) {
    case SectionSet::all: return true;
    case SectionSet::zero: return r == Reducibility::zero;
    case SectionSet::nonzero: return r != Reducibility::zero;
    case SectionSet::x_reducible: return r == Reducibility::x_reducible;
    case SectionSet::x_irreducible: return r == Reducibility::specially_reducible || r == Reducibility::irreducible;
    case SectionSet::specially_reducible: return r == Reducibility::specially_reducible;
    case SectionSet::horizontally_reducible:
        return r == Reducibility::x_reducible || r == Reducibility::specially_reducible;
    case SectionSet::irreducible: return r == Reducibility::irreducible;
    }
    return false;
}

namespace {

std::uint64_t space_size(const SectionSpace& V, std::uint32_t q)
{
    return section_count(V, q, ~std::uint64_t{0});
}

template <class Fn>
void for_each_in_set(const PointCatalog& cat, const SectionSpace& V, const ReducibleSet& red, SectionSet a, Fn&& f)
{
    const std::uint32_t q = cat.base().order();
    const std::uint64_t n = space_size(V, q);
    Section s = zero_section(V);
    for (std::uint64_t idx = 0; idx < n; ++idx) {
        if (!in_set(a, red.classify(idx))) continue;
        decode_into(V, q, idx, s);
        f(s);
    }
}

BigInt big_pow(std::uint64_t q, int e)
{
    BigInt r = 1;
    for (int i = 0; i < e; ++i) r *= q;
    return r;
}

}  // namespace

std::uint64_t root_count_sum(const PointCatalog& cat, const SectionSpace& V, const ReducibleSet& red,
                             const Divisor& D, SectionSet a)
{
    std::uint64_t total = 0;
    for_each_in_set(cat, V, red, a, [&](const Section& s) { total += r_D(cat, D, s); });
    return total;
}

long long adjusted_root_count_sum(const PointCatalog& cat, const SectionSpace& V, const ReducibleSet& red,
                                  const Divisor& D, SectionSet a)
{
    long long total = 0;
    for_each_in_set(cat, V, red, a, [&](const Section& s) { total += a_D(cat, D, s); });
    return total;
}

long long phi_from_r(const PointCatalog& cat, const SectionSpace& V, const ReducibleSet& red, const Divisor& D,
                     SectionSet a)
{
    long long total = 0;
    const int w = omega(D);
    for (const Divisor& D1 : sub_divisors(D)) {
        long long sign = ((w - omega(D1)) % 2 == 0) ? 1 : -1;
        total += sign * static_cast<long long>(root_count_sum(cat, V, red, D1, a));
    }
    return total;
}

BigInt small_range_phi_xir(std::uint64_t q, const SectionSpace& V, int divisor_degree)
{
    if (V.ell < divisor_degree) throw std::domain_error("closed form needs l >= deg D");
    if (V.ell - 3 * V.k < divisor_degree) return 0;
    return big_pow(q, 4 * V.ell - 6 * V.k + 4 - divisor_degree) - big_pow(q, 3 * V.ell - 3 * V.k + 3);
}

std::vector<long long> local_factor_profile(const PointCatalog& cat, const Section& s, int max_degree)
{
    std::vector<long long> c(max_degree + 1, 0);
    c[0] = 1;
    for (int d = 1; d <= max_degree; ++d) {
        for (auto point : cat.of_degree(d)) {
            long long a = a_P(cat, point, s);
            if (a == 0) continue;
            for (int i = max_degree; i >= d; --i) c[i] -= a * c[i - d];
        }
    }
    return c;
}

std::vector<long long> local_factor_profile_direct(const PointCatalog& cat, const Section& s, int max_degree)
{
    std::vector<long long> c(max_degree + 1, 0);
    for (int d = 0; d <= max_degree; ++d)
        for (const Divisor& D : enumerate_divisors(cat, d)) c[d] += mobius(D) * a_D(cat, D, s);
    return c;
}

namespace {

struct WorkerResult {
    ClassTallies tallies;
    std::vector<long long> profile;
};

}  // namespace

SpaceCensus census_space(const PointCatalog& cat, const SectionSpace& V, const ReducibleSet& red,
                         const CensusOptions& opt)
{
    const Field& F = cat.base();
    const std::uint32_t q = F.order();
    const std::uint64_t n = section_count(V, q, opt.cap);
    const int need = std::max({2 * V.degree(), V.ell, opt.profile_degree, 1});
    if (cat.max_degree() < need)
        throw std::invalid_argument("point catalog must reach degree " + std::to_string(need));
    const int workers = std::max(1, opt.workers);

    std::vector<std::uint8_t> smooth_ir(n, 0), insep(n, 0);
    std::vector<WorkerResult> results(workers);
    auto run = [&](int w) {
        WorkerResult& res = results[w];
        res.profile.assign(opt.profile_degree + 1, 0);
        const std::uint64_t lo = n * w / workers, hi = n * (w + 1) / workers;
        Section s = zero_section(V);
        for (std::uint64_t idx = lo; idx < hi; ++idx) {
            switch (red.classify(idx)) {
            case Reducibility::zero: ++res.tallies.zero; continue;
            case Reducibility::x_reducible: ++res.tallies.x_reducible; continue;
            case Reducibility::specially_reducible: ++res.tallies.specially_reducible; continue;
            case Reducibility::irreducible: break;
            }
            ++res.tallies.irreducible;
            decode_into(V, q, idx, s);
            SmoothReport rep = is_smooth(cat, V, s);
            if (rep.smooth) {
                ++res.tallies.smooth_irreducible;
                smooth_ir[idx] = 1;
                if (rep.inseparable) {
                    ++res.tallies.inseparable;
                    insep[idx] = 1;
                }
            }
            auto prof = local_factor_profile(cat, s, opt.profile_degree);
            for (int d = 0; d <= opt.profile_degree; ++d) res.profile[d] += prof[d];
        }
    };
    if (workers == 1) {
        run(0);
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w) pool.emplace_back(run, w);
        for (auto& t : pool) t.join();
    }

    SpaceCensus out;
    out.space = V;
    out.q = q;
    out.profile_sums.assign(opt.profile_degree + 1, 0);
    for (const auto& r : results) {
        out.tallies.zero += r.tallies.zero;
        out.tallies.x_reducible += r.tallies.x_reducible;
        out.tallies.specially_reducible += r.tallies.specially_reducible;
        out.tallies.irreducible += r.tallies.irreducible;
        out.tallies.smooth_irreducible += r.tallies.smooth_irreducible;
        out.tallies.inseparable += r.tallies.inseparable;
        for (int d = 0; d <= opt.profile_degree; ++d) out.profile_sums[d] += r.profile[d];
    }
    if (opt.orbits) {
        OrbitSummary sum;
        for (const OrbitInfo& o : orbit_stabilizer(F, V, smooth_ir)) {
            ++sum.stabilizers[o.stabilizer];
            if (insep[o.representative]) {
                ++sum.inseparable_orbits;
                sum.inseparable_weight += Rational(1, o.stabilizer);
            } else {
                ++sum.orbits;
                if (o.stabilizer == 3) ++sum.c3_orbits;
            }
        }
        out.orbits = sum;
    }
    return out;
}

SpaceCensus census_space(const PointCatalog& cat, const SectionSpace& V, const CensusOptions& opt)
{
    return census_space(cat, V, mark_reducibles(cat.base(), V, opt.cap), opt);
}

CensusTable run_census(const PointCatalog& cat, int n_max, const CensusOptions& opt)
{
    CensusTable t;
    t.q = cat.base().order();
    t.n_max = n_max;
    for (int N = 0; N <= n_max; ++N)
        for (auto [l, k] : par_set(N)) {
            CensusOptions o = opt;
            o.profile_degree = n_max - N;
            SectionSpace V{l, k};
            t.spaces.emplace(std::make_pair(l, k), census_space(cat, V, o));
        }
    return t;
}

namespace {

const SpaceCensus& lookup(const CensusTable& t, int l, int k)
{
    auto it = t.spaces.find({l, k});
    if (it == t.spaces.end()) throw std::out_of_range("space missing from census");
    return it->second;
}

const OrbitSummary& orbits_of(const SpaceCensus& c)
{
    if (!c.orbits) throw std::logic_error("census ran without orbits");
    return *c.orbits;
}

}  // namespace

Rational theta_of(const CensusTable& t, int N)
{
    Rational r = 0;
    if (N < 0) return r;
    for (auto [l, k] : par_set(N))
        r += Rational(BigInt(lookup(t, l, k).tallies.smooth_irreducible), BigInt(gamma_order(t.q, k)));
    return r;
}

Rational psi_of(const CensusTable& t, int N)
{
    Rational r = 0;
    if (N < 0) return r;
    if (N > t.n_max) throw std::out_of_range("Psi beyond census range");
    for (int Np = 0; Np <= N; ++Np)
        for (auto [l, k] : par_set(Np)) {
            const auto& c = lookup(t, l, k);
            r += Rational(BigInt(c.profile_sums.at(N - Np)), BigInt(gamma_order(t.q, k)));
        }
    return r;
}

std::uint64_t cov3_of(const CensusTable& t, int N)
{
    std::uint64_t n = 0;
    for (auto [l, k] : par_set(N)) n += orbits_of(lookup(t, l, k)).orbits;
    return n;
}

std::uint64_t c3_classes_of(const CensusTable& t, int N)
{
    std::uint64_t n = 0;
    for (auto [l, k] : par_set(N)) n += orbits_of(lookup(t, l, k)).c3_orbits;
    return n;
}

std::uint64_t inseparable_classes_of(const CensusTable& t, int N)
{
    std::uint64_t n = 0;
    for (auto [l, k] : par_set(N)) n += orbits_of(lookup(t, l, k)).inseparable_orbits;
    return n;
}

Rational inseparable_correction_of(const CensusTable& t, int N)
{
    Rational r = 0;
    for (auto [l, k] : par_set(N)) r -= orbits_of(lookup(t, l, k)).inseparable_weight;
    return r;
}

Rational psi_divisor_major(const PointCatalog& cat, int N, std::uint64_t cap)
{
    const Field& F = cat.base();
    Rational r = 0;
    for (int Np = 0; Np <= N; ++Np)
        for (auto [l, k] : par_set(Np)) {
            SectionSpace V{l, k};
            ReducibleSet red = mark_reducibles(F, V, cap);
            long long sum = 0;
            for (const Divisor& D : enumerate_divisors(cat, N - Np))
                sum += mobius(D) * adjusted_root_count_sum(cat, V, red, D, SectionSet::irreducible);
            r += Rational(BigInt(sum), BigInt(gamma_order(F.order(), k)));
        }
    return r;
}

std::vector<RecurrenceCheck> verify_theta_psi_recurrence(const CensusTable& t)
{
    std::vector<RecurrenceCheck> out;
    const Rational q = t.q;
    for (int N = 0; N <= t.n_max; ++N) {
        RecurrenceCheck c;
        c.N = N;
        c.theta = theta_of(t, N);
        c.rhs = psi_of(t, N) - (q + 1) * psi_of(t, N - 1) + q * psi_of(t, N - 2);
        c.holds = c.theta == c.rhs;
        out.push_back(c);
    }
    return out;
}

namespace {

Rational weighted_marking_sum(const PointCatalog& cat, int N, const Divisor& D, std::uint64_t cap, bool singular)
{
    const Field& F = cat.base();
    Rational r = 0;
    if (N < 0) return r;
    for (auto [l, k] : par_set(N)) {
        SectionSpace V{l, k};
        ReducibleSet red = mark_reducibles(F, V, cap);
        std::uint64_t sum = 0;
        for (const Marking& m : enumerate_markings(cat, D)) {
            auto sys = singular ? sing_system(cat, V, D, m) : van_system(cat, V, D, m);
            sum += count_irreducible_solutions(F, sys, red);
        }
        r += Rational(BigInt(sum), BigInt(gamma_order(F.order(), k)));
    }
    return r;
}

}  // namespace

ElmSumCheck verify_elm_sum_identity(const PointCatalog& cat, int N, const Divisor& D, std::uint64_t cap)
{
    ElmSumCheck c;
    c.singular_side = weighted_marking_sum(cat, N, D, cap, true);
    c.vanishing_side = weighted_marking_sum(cat, N - divisor_degree(cat, D), D, cap, false);
    c.holds = c.singular_side == c.vanishing_side;
    return c;
}

BadSieveCheck verify_bad_sieve(const PointCatalog& cat, const SectionSpace& V, const ReducibleSet& red,
                               const Divisor& D)
{
    const Field& F = cat.base();
    BadSieveCheck c;
    for_each_in_set(cat, V, red, SectionSet::irreducible, [&](const Section& s) {
        for (auto P : D.points)
            if (!bad_above(cat, s, P)) return;
        ++c.direct;
    });
    const std::size_t w = D.points.size();
    std::uint64_t assignments = 1;
    for (std::size_t i = 0; i < w; ++i) assignments *= 3;
    for (std::uint64_t code = 0; code < assignments; ++code) {
        Divisor D1, D2, D3;
        std::uint64_t x = code;
        for (std::size_t i = 0; i < w; ++i, x /= 3) {
            Divisor& target = x % 3 == 0 ? D1 : (x % 3 == 1 ? D2 : D3);
            target.points.push_back(D.points[i]);
        }
        long long sign = mobius(D2);
        auto fib = fib_system(cat, V, D3);
        for (const Marking& m1 : enumerate_markings(cat, D1))
            for (const Marking& m2 : enumerate_markings(cat, D2)) {
                auto sys = combine(combine(sing_system(cat, V, D1, m1), singfib_system(cat, V, D2, m2)), fib);
                c.sieve += sign * static_cast<long long>(count_irreducible_solutions(F, sys, red));
            }
    }
    c.holds = c.sieve >= 0 && static_cast<std::uint64_t>(c.sieve) == c.direct;
    return c;
}

std::vector<BoundObservation> observe_phi_bounds(const PointCatalog& cat, const SectionSpace& V,
                                                 const ReducibleSet& red, SectionSet a, int exponent,
                                                 int max_divisor_degree)
{
    std::vector<BoundObservation> out;
    const double q = cat.base().order();
    for (int d = 0; d <= max_divisor_degree; ++d)
        for (const Divisor& D : enumerate_divisors(cat, d)) {
            BoundObservation o;
            o.space = V;
            o.divisor = D;
            o.phi = adjusted_root_count_sum(cat, V, red, D, a);
            o.ratio = std::abs(static_cast<double>(o.phi)) / (std::pow(3.0, omega(D)) * std::pow(q, exponent));
            out.push_back(std::move(o));
        }
    return out;
}

}  // namespace cubic
