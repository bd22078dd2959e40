#include <doctest.h>

#include <algorithm>
#include <random>

#include "cubic/binform.hpp"
#include "oracles.hpp"

using namespace cubic;

TEST_CASE("field examples")
{
    Field F4 = Field::of_order(4);
    const Elem z = 2;  // digit string (0,1)
    CHECK(F4.mul(z, z) == 3);  // z + 1
    Field F2 = Field::of_order(2);
    CHECK(F2.add(1, 1) == 0);
    Field F3 = Field::of_order(3);
    CHECK(F3.inv(2) == 2);
    CHECK_THROWS(F3.inv(0));
    CHECK_THROWS(Field::of_order(6));
}

TEST_CASE("field tables agree with schoolbook arithmetic")
{
    for (int q : {2, 3, 4, 5, 7, 8, 9}) {
        FieldSpec spec = field_spec(q);
        Field F = Field::from_spec(spec);
        REQUIRE(F.order() == static_cast<std::uint32_t>(q));
        for (Elem a = 0; a < F.order(); ++a) {
            for (Elem b = 0; b < F.order(); ++b) {
                CHECK(F.mul(a, b) == oracle::naive_mul(spec, a, b));
                // digitwise addition mod p
                Elem s = 0, pw = 1, x = a, y = b;
                for (int i = 0; i < spec.e; ++i, x /= spec.p, y /= spec.p, pw *= spec.p)
                    s += ((x % spec.p + y % spec.p) % spec.p) * pw;
                CHECK(F.add(a, b) == s);
            }
            if (a) CHECK(F.mul(a, F.inv(a)) == 1);
            CHECK(F.pow(a, q) == a);
        }
    }
}

TEST_CASE("frobenius is a field endomorphism")
{
    for (int q : {4, 8, 9}) {
        Field F = Field::of_order(q);
        const int p = F.characteristic();
        for (Elem a = 0; a < F.order(); ++a)
            for (Elem b = 0; b < F.order(); ++b) {
                CHECK(F.pow(F.add(a, b), p) == F.add(F.pow(a, p), F.pow(b, p)));
                CHECK(F.pow(F.mul(a, b), p) == F.mul(F.pow(a, p), F.pow(b, p)));
            }
    }
}

TEST_CASE("extension fields")
{
    Field F2 = Field::of_order(2);
    Field K = Field::extension(F2, {1, 1, 0, 1});  // t^3 + t + 1
    CHECK(K.order() == 8);
    for (Elem a = 1; a < 8; ++a) CHECK(K.mul(a, K.inv(a)) == 1);
    // the class of t is a root of its modulus
    Elem t = 2;
    CHECK(K.add(K.add(K.pow(t, 3), t), 1) == 0);
    CHECK_THROWS(Field::extension(F2, {1, 0, 1}));  // t^2 + 1 = (t+1)^2
}

TEST_CASE("binform evaluation")
{
    Field F2 = Field::of_order(2);
    BinForm f{2, {1, 0, 1}};
    CHECK(form::eval(F2, f, 1, 1) == 0);
    BinForm g{2, {0, 1, 0}};
    Field F5 = Field::of_order(5);
    for (Elem a = 0; a < 5; ++a)
        for (Elem b = 0; b < 5; ++b) CHECK(form::eval(F5, g, a, b) == F5.mul(a, b));
    BinForm h{2, {1, 1, 1}};
    CHECK(form::eval(F2, h, 0, 1) == 1);
}

TEST_CASE("binform evaluation is homogeneous")
{
    Field F = Field::of_order(7);
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 200; ++trial) {
        int d = static_cast<int>(rng() % 6);
        BinForm f = BinForm::zero(d);
        for (auto& c : f.coeffs) c = static_cast<Elem>(rng() % 7);
        Elem a = rng() % 7, b = rng() % 7, lam = 1 + rng() % 6;
        CHECK(form::eval(F, f, F.mul(lam, a), F.mul(lam, b)) == F.mul(F.pow(lam, d), form::eval(F, f, a, b)));
    }
}

namespace {

BinForm reassemble(const Field& F, const FormFactorization& fac)
{
    BinForm r = BinForm::constant(fac.unit);
    for (const auto& [P, m] : fac.factors) r = form::mul(F, r, form::power(F, P.form(), m));
    return r;
}

BinForm random_form(const Field& F, std::mt19937_64& rng, int d)
{
    BinForm f = BinForm::zero(d);
    do {
        for (auto& c : f.coeffs) c = static_cast<Elem>(rng() % F.order());
    } while (f.is_zero());
    return f;
}

}  // namespace

TEST_CASE("factor examples")
{
    Field F2 = Field::of_order(2);
    IrreducibleTable table(F2, 4);
    // t0^2 t1 + t0 t1^2
    auto fac = binform_factor(F2, table, BinForm{3, {0, 1, 1, 0}});
    REQUIRE(fac.factors.size() == 3);
    CHECK(fac.factors[0].first.poly == Poly{0, 1});
    CHECK(fac.factors[1].first.poly == Poly{1, 1});
    CHECK(fac.factors[2].first.infinite);
    for (auto& [P, m] : fac.factors) CHECK(m == 1);

    auto quad = binform_factor(F2, table, BinForm{2, {1, 1, 1}});
    REQUIRE(quad.factors.size() == 1);
    CHECK(quad.factors[0].first.degree() == 2);

    Field F5 = Field::of_order(5);
    IrreducibleTable t5(F5, 2);
    auto cst = binform_factor(F5, t5, BinForm::constant(3));
    CHECK(cst.factors.empty());
    CHECK(cst.unit == 3);
    CHECK_THROWS(binform_factor(F5, t5, BinForm::zero(2)));
}

TEST_CASE("factorization reassembles and is multiplicative")
{
    for (int q : {2, 3, 4}) {
        Field F = Field::of_order(q);
        IrreducibleTable table(F, 6);
        std::mt19937_64 rng(q);
        for (int trial = 0; trial < 60; ++trial) {
            BinForm f = random_form(F, rng, static_cast<int>(rng() % 6));
            BinForm g = random_form(F, rng, static_cast<int>(rng() % 6));
            auto ff = binform_factor(F, table, f);
            auto fg = binform_factor(F, table, g);
            auto fp = binform_factor(F, table, form::mul(F, f, g));
            CHECK(reassemble(F, ff) == f);
            int deg = 0;
            for (auto& [P, m] : ff.factors) deg += P.degree() * m;
            CHECK(deg == f.degree);
            // multiset union
            std::vector<std::pair<ClosedPoint, int>> merged = ff.factors;
            for (auto& pm : fg.factors) {
                auto it = std::find_if(merged.begin(), merged.end(), [&](auto& x) { return x.first == pm.first; });
                if (it == merged.end())
                    merged.push_back(pm);
                else
                    it->second += pm.second;
            }
            std::sort(merged.begin(), merged.end(), [](auto& a, auto& b) { return point_less(a.first, b.first); });
            CHECK(fp.factors == merged);
            CHECK(fp.unit == F.mul(ff.unit, fg.unit));
        }
    }
}

TEST_CASE("cubic roots examples")
{
    Field F2 = Field::of_order(2);
    auto r = cubic_roots_in_P1(F2, Cubic{1, 0, 1, 0});
    REQUIRE(r.size() == 2);
    CHECK(r[0] == ProjPoint{0, 1});
    CHECK(r[1] == ProjPoint{1, 1});
    auto r2 = cubic_roots_in_P1(F2, Cubic{1, 0, 0, 0});
    REQUIRE(r2.size() == 1);
    CHECK(r2[0] == ProjPoint{0, 1});
    CHECK(cubic_roots_in_P1(F2, Cubic{0, 0, 0, 0}).size() == 3);
}

TEST_CASE("cubic root counts agree with the point loop")
{
    for (int q : {2, 3, 4, 5}) {
        Field F = Field::of_order(q);
        const std::uint64_t n = std::uint64_t(q) * q * q * q;
        for (std::uint64_t idx = 0; idx < n; ++idx) {
            Cubic c{};
            std::uint64_t x = idx;
            for (auto& e : c) e = static_cast<Elem>(x % q), x /= q;
            const std::uint64_t want = oracle::roots_by_loop(F, c);
            CHECK(cubic_roots_in_P1(F, c).size() == want);
            CHECK(count_cubic_roots(F, c) == want);
        }
    }
    // a degree-4 extension with random cubics
    Field F2 = Field::of_order(2);
    Field K = Field::extension(F2, {1, 1, 0, 0, 1});
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 500; ++trial) {
        Cubic c{};
        for (auto& e : c) e = static_cast<Elem>(rng() % 16);
        CHECK(count_cubic_roots(K, c) == oracle::roots_by_loop(K, c));
    }
}
