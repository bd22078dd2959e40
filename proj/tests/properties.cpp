// Exhaustive and sampled invariants. Runs standalone: ./property_suites
#include <doctest.h>

#include <random>
#include <set>

#include "cubic/runner.hpp"
#include "oracles.hpp"

using namespace cubic;

namespace {

// V(l,k) with 0 <= k <= l and dimension at most the limit.
std::vector<SectionSpace> small_spaces(int limit)
{
    std::vector<SectionSpace> out;
    for (int k = 0; k <= limit; ++k)
        for (int l = k;; ++l) {
            SectionSpace V{l, k};
            if (V.dimension() > limit) break;
            out.push_back(V);
        }
    return out;
}

std::set<ClosedPoint, decltype(&point_less)> delta_support(const Field& F, const IrreducibleTable& t, const BinForm& d)
{
    std::set<ClosedPoint, decltype(&point_less)> pts(&point_less);
    if (d.is_zero()) return pts;
    for (auto& [P, m] : binform_factor(F, t, d).factors) pts.insert(P);
    return pts;
}

}  // namespace

TEST_CASE("root counts are multiplicative over disjoint divisors")
{
    for (int q : {2, 3}) {
        Field F = Field::of_order(q);
        PointCatalog cat(F, 3);
        SectionSpace V = q == 2 ? SectionSpace{3, 1} : SectionSpace{1, 0};
        std::vector<Divisor> divs;
        for (int d = 1; d <= 2; ++d)
            for (auto& D : enumerate_divisors(cat, d)) divs.push_back(D);
        for (std::uint64_t i = 0; i < oracle::space_size(q, V); ++i) {
            Section s = decode(V, q, i);
            for (const auto& a : divs)
                for (const auto& b : divs) {
                    std::vector<std::size_t> u;
                    std::set_union(a.points.begin(), a.points.end(), b.points.begin(), b.points.end(),
                                   std::back_inserter(u));
                    if (u.size() != a.points.size() + b.points.size()) continue;
                    Divisor ab{u};
                    REQUIRE(r_D(cat, ab, s) == r_D(cat, a, s) * r_D(cat, b, s));
                    REQUIRE(a_D(cat, ab, s) == a_D(cat, a, s) * a_D(cat, b, s));
                }
        }
    }
}

TEST_CASE("Moebius inversion round trip on full spaces")
{
    for (int q : {2, 3}) {
        Field F = Field::of_order(q);
        PointCatalog cat(F, 3);
        std::vector<SectionSpace> spaces = q == 2 ? std::vector<SectionSpace>{{2, 0}, {3, 1}}
                                                  : std::vector<SectionSpace>{{1, 0}, {2, 1}};
        for (const auto& V : spaces) {
            ReducibleSet red = mark_reducibles(F, V, 1 << 24);
            for (int d = 0; d <= 3; ++d)
                for (const auto& D : enumerate_divisors(cat, d)) {
                    long long back = 0;
                    for (const auto& D1 : sub_divisors(D))
                        back += adjusted_root_count_sum(cat, V, red, D1, SectionSet::irreducible);
                    CHECK(static_cast<long long>(root_count_sum(cat, V, red, D, SectionSet::irreducible)) == back);
                    CHECK(phi_from_r(cat, V, red, D, SectionSet::irreducible) ==
                          adjusted_root_count_sum(cat, V, red, D, SectionSet::irreducible));
                }
        }
    }
}

TEST_CASE("classifications and the discriminant divisor are Gamma-invariant")
{
    for (int q : {2, 3}) {
        Field F = Field::of_order(q);
        PointCatalog cat(F, 8);
        std::vector<SectionSpace> spaces = q == 2 ? std::vector<SectionSpace>{{1, 0}, {2, 0}, {3, 1}, {5, 2}}
                                                  : std::vector<SectionSpace>{{1, 0}, {2, 1}, {3, 1}};
        for (const auto& V : spaces) {
            ReducibleSet red = mark_reducibles(F, V, 1 << 24);
            auto G = enumerate_gamma(F, V.k);
            std::mt19937_64 rng(100 * q + V.ell);
            const std::uint64_t n = oracle::space_size(q, V);
            const std::uint64_t stride = n > 6000 ? n / 6000 : 1;
            for (std::uint64_t i = 1; i < n; i += stride) {
                Section s = decode(V, q, i);
                const GammaElem& g = G[rng() % G.size()];
                Section gs = gamma_act(F, V, g, s);
                const std::uint64_t j = encode(V, q, gs);
                // the swap exchanges A0 and A3, so only zero/reducible/irreducible is preserved,
                // not the x-reducible versus specially reducible split
                REQUIRE((red.classify(i) == Reducibility::irreducible) == (red.classify(j) == Reducibility::irreducible));
                REQUIRE((red.classify(i) == Reducibility::zero) == (red.classify(j) == Reducibility::zero));
                REQUIRE(is_smooth(cat, V, s).smooth == is_smooth(cat, V, gs).smooth);
                BinForm d = discriminant(F, V, s), dg = discriminant(F, V, gs);
                Elem det = gamma_det(F, g);
                REQUIRE(dg == form::scale(F, d, F.inv(F.mul(det, det))));
                REQUIRE(delta_support(F, cat.irreducibles(), d) == delta_support(F, cat.irreducibles(), dg));
            }
        }
    }
}

TEST_CASE("smoothness agrees with the Jacobian oracle on all small spaces")
{
    struct Run {
        int q, limit;
    };
    for (Run run : {Run{2, 12}, Run{3, 8}}) {
        Field F = Field::of_order(run.q);
        int reach = 1;
        for (const auto& V : small_spaces(run.limit)) reach = std::max({reach, V.ell, 2 * V.degree()});
        PointCatalog cat(F, reach);
        int spaces = 0;
        for (const auto& V : small_spaces(run.limit)) {
            ++spaces;
            const std::uint64_t n = oracle::space_size(run.q, V);
            for (std::uint64_t i = 1; i < n; ++i) {
                Section s = decode(V, run.q, i);
                const bool want = oracle::jacobian_smooth(cat, V, s);
                SmoothReport rep = is_smooth(cat, V, s);
                REQUIRE_MESSAGE(rep.smooth == want, "q=" << run.q << " V(" << V.ell << "," << V.k << ") index " << i);
                if (!rep.smooth) {
                    std::set<std::size_t> bad;
                    for (auto& w : rep.bad) bad.insert(w.point);
                    if (!rep.bad_everywhere)
                        for (std::size_t p = 0; p < cat.size() && cat.degree(p) <= std::max(V.ell, 2 * V.degree()); ++p)
                            REQUIRE(bad.count(p) == (oracle::jacobian_bad_above(cat, s, p) ? 1u : 0u));
                }
            }
        }
        CHECK(spaces > 10);
    }
}

TEST_CASE("the section space is partitioned into zero, x-reducible, specially reducible and irreducible")
{
    for (int q : {2, 3}) {
        Field F = Field::of_order(q);
        for (const auto& V : small_spaces(q == 2 ? 12 : 8)) {
            ReducibleSet red = mark_reducibles(F, V, 1ull << 26);
            const std::uint64_t n = oracle::space_size(q, V);
            std::uint64_t tally[4] = {0, 0, 0, 0};
            for (std::uint64_t i = 0; i < n; ++i) {
                Section s = decode(V, q, i);
                Reducibility r = red.classify(i);
                ++tally[static_cast<int>(r)];
                Reducibility want = s.is_zero()                                  ? Reducibility::zero
                                    : s.a[3].is_zero()                           ? Reducibility::x_reducible
                                    : oracle::irreducible_over_function_field(F, s) ? Reducibility::irreducible
                                                                                  : Reducibility::specially_reducible;
                REQUIRE(r == want);
            }
            CHECK(tally[0] + tally[1] + tally[2] + tally[3] == n);
            if (V.ell < 3 * V.k) CHECK(tally[3] == 0);
        }
    }
}

TEST_CASE("bad above P decomposes into fibral and a unique singular marking")
{
    for (int q : {2, 3}) {
        Field F = Field::of_order(q);
        PointCatalog cat(F, 3);
        SectionSpace V = q == 2 ? SectionSpace{2, 0} : SectionSpace{1, 0};
        for (std::uint64_t i = 1; i < oracle::space_size(q, V); ++i) {
            Section s = decode(V, q, i);
            for (std::size_t P = 0; P < cat.size(); ++P) {
                const bool fib = fibral_at(cat, s, P);
                int singular = 0;
                for (FiberIndex j = 0; j < cat.fiber_size(P); ++j) singular += singular_at(cat, s, P, j);
                if (!fib) REQUIRE(singular <= 1);
                REQUIRE(bad_above(cat, s, P) == (fib || singular == 1));
                REQUIRE(bad_above(cat, s, P) == oracle::jacobian_bad_above(cat, s, P));
            }
        }
    }
}

TEST_CASE("restriction dichotomy holds on sampled markings")
{
    Field F2 = Field::of_order(2);
    PointCatalog cat(F2, 4);
    std::mt19937_64 rng(7);
    int sampled = 0;
    for (auto V : {SectionSpace{2, 0}, SectionSpace{3, 0}, SectionSpace{4, 1}, SectionSpace{5, 1}}) {
        ReducibleSet red = mark_reducibles(F2, V, 1ull << 26);
        for (int d = 1; d <= 4; ++d) {
            if (2 * (V.ell - 2 * V.k) < d + V.k) continue;
            auto divs = enumerate_divisors(cat, d);
            for (int t = 0; t < 10; ++t) {
                const Divisor& D = divs[rng() % divs.size()];
                auto ms = enumerate_markings(cat, D);
                const Marking& m = ms[rng() % ms.size()];
                DichotomyResult r = restriction_dichotomy(cat, V, D, m, red);
                CHECK((r.surjective || r.kernel_reducible));
                ++sampled;
            }
        }
    }
    CHECK(sampled > 50);
}

TEST_CASE("Van and Sing counts are Gamma-covariant")
{
    for (int q : {2, 3}) {
        Field F = Field::of_order(q);
        PointCatalog cat(F, 3);
        for (auto V : {SectionSpace{2, 0}, SectionSpace{3, 1}}) {
            auto G = enumerate_gamma(F, V.k);
            std::mt19937_64 rng(q + V.ell);
            for (int d = 1; d <= 3; ++d) {
                auto divs = enumerate_divisors(cat, d);
                for (int t = 0; t < 8; ++t) {
                    const Divisor& D = divs[rng() % divs.size()];
                    auto ms = enumerate_markings(cat, D);
                    const Marking& m = ms[rng() % ms.size()];
                    const GammaElem& g = G[rng() % G.size()];
                    Marking gm = m;
                    for (std::size_t p = 0; p < D.points.size(); ++p)
                        gm.fiber[p] = gamma_map_fiber(cat, D.points[p], g, m.fiber[p]);
                    CHECK(solution_count(F, van_system(cat, V, D, m)) == solution_count(F, van_system(cat, V, D, gm)));
                    CHECK(solution_count(F, sing_system(cat, V, D, m)) == solution_count(F, sing_system(cat, V, D, gm)));
                    // the image of a vanishing section vanishes at the moved marking
                    for_each_solution(F, van_system(cat, V, D, m), [&](std::uint64_t i) {
                        if (i % 7) return;
                        Section gs = gamma_act(F, V, g, decode(V, q, i));
                        for (std::size_t p = 0; p < D.points.size(); ++p) {
                            const Field& K = cat.residue_field(D.points[p]);
                            CHECK(cubic_eval(K, restrict_to_fiber(cat, D.points[p], gs), fiber_point(K, gm.fiber[p])) == 0);
                        }
                    });
                }
            }
        }
    }
}

TEST_CASE("results do not depend on the worker count")
{
    Field F2 = Field::of_order(2);
    PointCatalog cat(F2, 8);
    for (auto V : {SectionSpace{2, 0}, SectionSpace{5, 2}}) {
        CensusOptions base;
        base.profile_degree = 4;
        SpaceCensus ref = census_space(cat, V, base);
        for (int w : {2, 3, 7}) {
            CensusOptions o = base;
            o.workers = w;
            CHECK(census_space(cat, V, o) == ref);
        }
    }
    RunConfig a;
    a.q = 2;
    a.n_max = 4;
    a.mode = Mode::verify;
    RunConfig b = a;
    b.workers = 4;
    CHECK(to_json(run(a)) == to_json(run(b)));
    CHECK(to_csv(run(a)) == to_csv(run(b)));
}
