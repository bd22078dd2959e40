#include <doctest.h>

#include <random>

#include "oracles.hpp"

using namespace cubic;

namespace {

Divisor point_divisor(std::size_t p) { return Divisor{{p}}; }

std::uint64_t pow_u(std::uint64_t b, int e)
{
    std::uint64_t r = 1;
    while (e-- > 0) r *= b;
    return r;
}

}  // namespace

TEST_CASE("root count sums: examples")
{
    Field F2 = Field::of_order(2);
    PointCatalog cat(F2, 6);
    SectionSpace V0{0, 0}, V1{1, 0};
    ReducibleSet r0 = mark_reducibles(F2, V0, 1 << 20);
    ReducibleSet r1 = mark_reducibles(F2, V1, 1 << 20);
    CHECK(root_count_sum(cat, V0, r0, Divisor{}, SectionSet::irreducible) == 2);
    CHECK(adjusted_root_count_sum(cat, V0, r0, Divisor{}, SectionSet::irreducible) == 2);
    CHECK(root_count_sum(cat, V0, r0, point_divisor(0), SectionSet::irreducible) == 0);
    CHECK(adjusted_root_count_sum(cat, V1, r1, point_divisor(0), SectionSet::x_irreducible) == 64);
    CHECK(small_range_phi_xir(2, V1, 1) == 64);

    for (auto V : {V0, V1})
        for (int d = 0; d <= 3; ++d)
            for (const auto& D : enumerate_divisors(cat, d)) {
                ReducibleSet red = mark_reducibles(F2, V, 1 << 20);
                std::uint64_t want_r = 1;
                for (auto P : D.points) want_r *= cat.fiber_size(P);
                CHECK(root_count_sum(cat, V, red, D, SectionSet::zero) == want_r);
                CHECK(adjusted_root_count_sum(cat, V, red, D, SectionSet::zero) == static_cast<long long>(pow_u(2, d)));
            }
}

TEST_CASE("small-range formula for x-irreducible sums")
{
    Field F2 = Field::of_order(2);
    PointCatalog cat(F2, 4);
    for (auto V : {SectionSpace{1, 0}, SectionSpace{2, 0}, SectionSpace{3, 1}, SectionSpace{2, 1}}) {
        ReducibleSet red = mark_reducibles(F2, V, 1 << 24);
        for (int d = 0; d <= V.ell; ++d)
            for (const auto& D : enumerate_divisors(cat, d)) {
                long long got = adjusted_root_count_sum(cat, V, red, D, SectionSet::x_irreducible);
                CHECK(BigInt(got) == small_range_phi_xir(2, V, d));
            }
    }
    CHECK_THROWS(small_range_phi_xir(2, SectionSpace{1, 0}, 2));
}

TEST_CASE("Moebius inversion round trip")
{
    for (int q : {2, 3}) {
        Field F = Field::of_order(q);
        PointCatalog cat(F, 4);
        for (auto V : {SectionSpace{1, 0}, SectionSpace{3, 1}}) {
            ReducibleSet red = mark_reducibles(F, V, 1 << 24);
            for (int d = 0; d <= 3; ++d) {
                auto divisors = enumerate_divisors(cat, d);
                for (std::size_t t = 0; t < divisors.size(); t += q == 2 ? 1 : 3) {
                    const Divisor& D = divisors[t];
                    for (SectionSet a : {SectionSet::irreducible, SectionSet::all, SectionSet::x_irreducible}) {
                        long long phi = adjusted_root_count_sum(cat, V, red, D, a);
                        CHECK(phi_from_r(cat, V, red, D, a) == phi);
                        long long back = 0;
                        for (const auto& D1 : sub_divisors(D)) back += adjusted_root_count_sum(cat, V, red, D1, a);
                        CHECK(static_cast<long long>(root_count_sum(cat, V, red, D, a)) == back);
                    }
                }
            }
        }
    }
}

TEST_CASE("R^ir equals the Van^ir marking sum")
{
    Field F2 = Field::of_order(2);
    PointCatalog cat(F2, 4);
    for (auto V : {SectionSpace{2, 0}, SectionSpace{3, 1}}) {
        ReducibleSet red = mark_reducibles(F2, V, 1 << 24);
        for (int d = 1; d <= 2; ++d)
            for (const auto& D : enumerate_divisors(cat, d)) {
                std::uint64_t sum = 0;
                for (const auto& m : enumerate_markings(cat, D))
                    sum += count_irreducible_solutions(F2, van_system(cat, V, D, m), red);
                CHECK(root_count_sum(cat, V, red, D, SectionSet::irreducible) == sum);
            }
    }
}

TEST_CASE("local factor profiles match divisor enumeration")
{
    for (int q : {2, 3}) {
        Field F = Field::of_order(q);
        PointCatalog cat(F, 5);
        std::mt19937_64 rng(17 + q);
        for (auto V : {SectionSpace{2, 0}, SectionSpace{3, 1}, SectionSpace{4, 1}}) {
            for (int t = 0; t < 100; ++t) {
                Section s = decode(V, q, rng() % oracle::space_size(q, V));
                const int top = q == 2 ? 5 : 3;
                CHECK(local_factor_profile(cat, s, top) == local_factor_profile_direct(cat, s, top));
            }
        }
    }
}

TEST_CASE("census at N = 0, q = 2")
{
    Field F2 = Field::of_order(2);
    PointCatalog cat(F2, 4);
    CensusTable t = run_census(cat, 0, CensusOptions{});
    CHECK(theta_of(t, 0) == Rational(1, 3));
    CHECK(psi_of(t, 0) == Rational(1, 3));
    CHECK(cov3_of(t, 0) == 1);
    CHECK(c3_classes_of(t, 0) == 1);
    CHECK(inseparable_classes_of(t, 0) == 0);
    CHECK(psi_of(t, -1) == 0);
    const SpaceCensus& c = t.spaces.at({0, 0});
    CHECK(c.tallies.irreducible == 2);
    CHECK(c.tallies.smooth_irreducible == 2);
    CHECK(c.tallies.zero == 1);
}

TEST_CASE("Theta and Psi match the slow oracles")
{
    {
        Field F2 = Field::of_order(2);
        PointCatalog cat(F2, 8);
        CensusTable t = run_census(cat, 3, CensusOptions{});
        for (int N = 0; N <= 3; ++N) CHECK(theta_of(t, N) == oracle::theta_oracle(cat, N));
        for (int N = 0; N <= 2; ++N) CHECK(psi_of(t, N) == oracle::psi_oracle(cat, N));
        CHECK(theta_of(t, 1) == 0);
    }
    {
        Field F3 = Field::of_order(3);
        PointCatalog cat(F3, 4);
        CensusTable t = run_census(cat, 2, CensusOptions{});
        for (int N = 0; N <= 2; ++N) CHECK(theta_of(t, N) == oracle::theta_oracle(cat, N));
        CHECK(psi_of(t, 1) == oracle::psi_oracle(cat, 1));
    }
}

TEST_CASE("recurrence, cover census consistency and stabilizers, q = 2")
{
    Field F2 = Field::of_order(2);
    PointCatalog cat(F2, 8);
    CensusTable t = run_census(cat, 4, CensusOptions{});
    for (const auto& rc : verify_theta_psi_recurrence(t)) CHECK_MESSAGE(rc.holds, "N = " << rc.N);
    for (int N = 0; N <= 4; ++N) {
        CHECK(inseparable_classes_of(t, N) == 0);
        CHECK(Rational(cov3_of(t, N)) == theta_of(t, N) + Rational(2, 3) * Rational(c3_classes_of(t, N)));
    }
    for (const auto& [key, sc] : t.spaces) {
        REQUIRE(sc.orbits.has_value());
        for (const auto& [order, count] : sc.orbits->stabilizers) {
            CHECK((order == 1 || order == 3));
            CHECK(gamma_order(2, key.second) % order == 0);
        }
    }
    CHECK(psi_of(t, 3) == psi_divisor_major(cat, 3, 1 << 24));
}

TEST_CASE("Frobenius covers in characteristic 3")
{
    Field F3 = Field::of_order(3);
    PointCatalog cat(F3, 4);
    CensusTable t = run_census(cat, 2, CensusOptions{});
    CHECK(inseparable_classes_of(t, 0) == 0);
    CHECK(inseparable_classes_of(t, 2) == 1);
    const SpaceCensus& c = t.spaces.at({1, 0});
    CHECK(c.tallies.inseparable == 48);
    CHECK(c.orbits->inseparable_weight == 1);
    for (int N = 0; N <= 2; ++N)
        CHECK(Rational(cov3_of(t, N)) == theta_of(t, N) + Rational(2, 3) * Rational(c3_classes_of(t, N)) +
                                             inseparable_correction_of(t, N));
    // t1 x^3 - t0 y^3 is smooth and inseparable
    SectionSpace V{1, 0};
    Section s = zero_section(V);
    s.a[0] = BinForm{1, {1, 0}};
    s.a[3] = BinForm{1, {0, 2}};
    SmoothReport rep = is_smooth(cat, V, s);
    CHECK(rep.smooth);
    CHECK(rep.inseparable);
}

TEST_CASE("weighted elementary-transform sums")
{
    Field F2 = Field::of_order(2);
    PointCatalog cat(F2, 8);
    auto rational = point_divisor(cat.of_degree(1)[0]);
    auto quad = point_divisor(cat.of_degree(2)[0]);
    auto e2 = verify_elm_sum_identity(cat, 2, rational, 1 << 24);
    CHECK(e2.holds);
    CHECK(e2.singular_side == 0);
    auto e3 = verify_elm_sum_identity(cat, 3, rational, 1 << 24);
    CHECK(e3.holds);
    CHECK(e3.singular_side != 0);
    auto e4 = verify_elm_sum_identity(cat, 4, quad, 1 << 24);
    CHECK(e4.holds);
    auto empty = verify_elm_sum_identity(cat, 3, Divisor{}, 1 << 24);
    CHECK(empty.holds);
}

TEST_CASE("bad sieve on small spaces")
{
    Field F2 = Field::of_order(2);
    PointCatalog cat(F2, 8);
    for (auto V : {SectionSpace{2, 0}, SectionSpace{3, 1}}) {
        ReducibleSet red = mark_reducibles(F2, V, 1 << 24);
        for (int d = 0; d <= 2; ++d)
            for (const auto& D : enumerate_divisors(cat, d)) {
                auto b = verify_bad_sieve(cat, V, red, D);
                CHECK(b.holds);
                CHECK(static_cast<long long>(b.direct) == b.sieve);
            }
    }
}

TEST_CASE("census is independent of the worker count")
{
    Field F3 = Field::of_order(3);
    PointCatalog cat(F3, 6);
    SectionSpace V{3, 1};
    CensusOptions one, four;
    one.profile_degree = four.profile_degree = 3;
    four.workers = 4;
    CHECK(census_space(cat, V, one) == census_space(cat, V, four));
}

TEST_CASE("observed reducibility bound constants are finite")
{
    Field F2 = Field::of_order(2);
    PointCatalog cat(F2, 4);
    SectionSpace V{2, 0};
    ReducibleSet red = mark_reducibles(F2, V, 1 << 24);
    auto obs = observe_phi_bounds(cat, V, red, SectionSet::horizontally_reducible, 3 * V.ell - 3 * V.k, 2);
    CHECK(!obs.empty());
    for (const auto& o : obs) CHECK(o.ratio >= 0);
}
