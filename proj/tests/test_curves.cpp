#include <doctest.h>

#include <cmath>

#include "hasseforge/curves.hpp"
#include "oracles.hpp"

using namespace hf;

TEST_CASE("genus formulas") {
    MordellCurve m = MordellCurve::kappa_form(Int(17), 2, Int(3));
    CHECK(genus(m) == 11);
    FermatCurve f = FermatCurve::family_form(Int(17), 2, Int(3), Int(193));
    CHECK(genus(f) == 253);  // (6*2-1)(12*2-1) = 11 * 23 = (m-1)(m-2)/2 at m = 24
    CHECK(genus(f) == Int(23) * Int(22) / 2);
    FermatCurve selmer{Int(3), Int(4), Int(5), 3, std::nullopt};
    CHECK(genus(selmer) == 1);
    HyperellipticCurve h{{Int(-1), Int(0), Int(0), Int(0), Int(0), Int(1)}};  // z^2 = x^5 - 1
    CHECK(genus(h) == 2);
}

TEST_CASE("bad primes") {
    auto b1 = bad_primes(MordellCurve::kappa_form(Int(17), 2, Int(3)));
    CHECK(b1 == std::vector<Int>{Int(2), Int(3), Int(17)});
    auto b2 = bad_primes(FermatCurve::family_form(Int(17), 2, Int(3), Int(193)));
    CHECK(b2 == std::vector<Int>{Int(2), Int(3), Int(17), Int(193)});
    auto b3 = bad_primes(MordellCurve::kappa_form(Int(17), 5, Int(3)));
    CHECK(b3 == std::vector<Int>{Int(2), Int(3), Int(5), Int(17)});
}

TEST_CASE("local solvability: reference verdicts") {
    SearchCaps caps;

    // Selmer cubic 3x^3 + 4y^3 + 5z^3 at 2: (1, 0, 1) mod 8 lifts
    FermatCurve selmer{Int(3), Int(4), Int(5), 3, std::nullopt};
    auto pc = local_solvable_at(selmer, Place::at(2), caps);
    CHECK(pc.verdict == Verdict::solvable);

    // kappa = 3 Mordell curve is locally unsolvable at 17: units satisfy
    // x^8 in {1, 16} mod 17 but the curve forces x^24 == 13
    MordellCurve bad = MordellCurve::kappa_form(Int(17), 2, Int(3));
    auto pc17 = local_solvable_at(bad, Place::at(17), caps);
    CHECK(pc17.verdict == Verdict::unsolvable);
    CHECK(pc17.method == Method::exhaustive_refutation);
    CHECK(pc17.depth >= 1);

    // any Mordell curve is solvable at infinity
    auto pcinf = local_solvable_at(bad, Place::infinity(), caps);
    CHECK(pcinf.verdict == Verdict::solvable);
    CHECK(pcinf.method == Method::real_analysis);

    // explicit sqrt(p) point at split places: (17/13) = 1
    auto pc13 = local_solvable_at(bad, Place::at(13), caps);
    CHECK(pc13.verdict == Verdict::solvable);

    // (-17/3) = 1 gives the x = 0 point at 3
    auto pc3 = local_solvable_at(bad, Place::at(3), caps);
    CHECK(pc3.verdict == Verdict::solvable);

    // Fermat with one-signed coefficients and even exponent: no real points
    FermatCurve pos{Int(1), Int(1), Int(1), 4, std::nullopt};
    CHECK(local_solvable_at(pos, Place::infinity(), caps).verdict == Verdict::unsolvable);
    FermatCurve mixed{Int(1), Int(-1), Int(1), 4, std::nullopt};
    CHECK(local_solvable_at(mixed, Place::infinity(), caps).verdict == Verdict::solvable);
}

TEST_CASE("engine agrees with brute force on a corpus of small curves") {
    SearchCaps caps;
    int compared = 0;

    std::vector<MordellCurve> ms;  // 30 Mordell-shaped curves
    for (long p : {5l, 13l, 17l})
        for (long E : {1l, 2l, 3l, 7l, 9l})
            for (long G : {1l, 5l}) {
                MordellCurve c;
                c.p = p;
                c.n = 1;
                c.E = E;
                c.G = G;
                ms.push_back(c);
            }
    for (const auto& c : ms) {
        for (long l : {2l, 3l, 5l, 7l}) {
            auto pc = local_solvable_at(c, Place::at(l), caps);
            unsigned kk = (l == 2) ? 3u : 2u;
            if (pc.verdict == Verdict::solvable) {
                // a Z_l point reduces to a point mod l^k for every k
                CHECK(oracle::mordell_has_point_mod(c, (std::uint64_t)l, 1));
                ++compared;
            } else if (pc.verdict == Verdict::unsolvable && pc.depth <= kk) {
                CHECK_FALSE(oracle::mordell_has_point_mod(c, (std::uint64_t)l, pc.depth));
                ++compared;
            }
        }
    }

    std::vector<FermatCurve> fs;  // 24 Fermat-shaped curves
    for (long a : {1l, 3l})
        for (long b : {4l, -1l, 5l})
            for (long cc : {5l, -7l})
                for (unsigned m : {3u, 4u}) {
                    FermatCurve f;
                    f.cx = a;
                    f.cy = b;
                    f.cz = cc;
                    f.m = m;
                    fs.push_back(f);
                }
    for (const auto& f : fs) {
        for (long l : {2l, 3l, 5l, 7l}) {
            auto pc = local_solvable_at(f, Place::at(l), caps);
            unsigned kk = (l == 2) ? 3u : 2u;
            if (pc.verdict == Verdict::solvable) {
                CHECK(oracle::fermat_has_point_mod(f.cx, f.cy, f.cz, f.m, (std::uint64_t)l, 1));
                ++compared;
            } else if (pc.verdict == Verdict::unsolvable && pc.depth <= kk) {
                CHECK_FALSE(
                    oracle::fermat_has_point_mod(f.cx, f.cy, f.cz, f.m, (std::uint64_t)l, pc.depth));
                ++compared;
            }
        }
    }
    CHECK(compared >= 150);
}

TEST_CASE("hensel witnesses re-verify") {
    SearchCaps caps;
    MordellCurve c = MordellCurve::kappa_form(Int(17), 2, Int(39));  // kappa = 3 * 13
    for (long l : {5l, 7l, 11l, 19l, 23l}) {
        auto pc = local_solvable_at(c, Place::at(l), caps);
        REQUIRE(pc.verdict == Verdict::solvable);
        if (pc.method != Method::hensel_witness) continue;
        REQUIRE(pc.coords.size() == 2);
        Int L(l);
        Int mod = pow_ui(L, std::max(2 * pc.derivative_valuation + 1, 1u));
        const Int &x = pc.coords[0], &z = pc.coords[1];
        Int val;
        if (pc.chart == "affine")
            val = (c.p * z * z - c.E * c.E * pow_mod(x, Int(24), mod) + c.G * c.G) % mod;
        else
            val = (c.p * z * z - c.E * c.E + c.G * c.G * pow_mod(x, Int(24), mod)) % mod;
        CHECK(val % mod == 0);
    }
}

TEST_CASE("curves_distinct") {
    CHECK(curves_distinct(Int(15), Int(21), 2));  // v_5 difference 6, not divisible by 24
    CHECK_FALSE(curves_distinct(Int(15), Int(15), 2));
    // ratio a perfect 12n-th power: kappa1/kappa2 = 5^(2n), 6 * 2n == 0 (mod 12n)
    unsigned n = 1;
    Int k1 = Int(3) * pow_ui(Int(5), 2 * n);
    CHECK_FALSE(curves_distinct(k1, Int(3), n));
    CHECK_THROWS_AS(curves_distinct(Int(0), Int(3), 2), std::invalid_argument);
}

TEST_CASE("fermat-to-mordell morphism carries points") {
    FermatCurve f = FermatCurve::family_form(Int(17), 2, Int(39), Int(193));
    MordellCurve d = MordellCurve::kappa_form(Int(17), 2, Int(39));
    CHECK(fermat_to_mordell_morphism_check(f, d, 60, 0));

    MordellCurve wrong = MordellCurve::kappa_form(Int(17), 2, Int(15));
    CHECK_THROWS_AS(fermat_to_mordell_morphism_check(f, wrong, 10, 0), std::invalid_argument);
}

TEST_CASE("hasse-weil bound sample (full validation in the acceptance suite)") {
    gmp_randclass rng(gmp_randinit_mt);
    rng.seed(57u);
    auto primes = small_primes_up_to(101);
    int done = 0;
    while (done < 10) {
        std::uint64_t q =
            primes[3 + mpz_get_ui(Int(rng.get_z_range((unsigned long)(primes.size() - 3))).get_mpz_t())];
        unsigned g = 1 + (unsigned)mpz_get_ui(Int(rng.get_z_range(4)).get_mpz_t());
        std::vector<long> f(2 * g + 2, 0);
        for (auto& c : f) c = (long)mpz_get_ui(Int(rng.get_z_range((unsigned long)q)).get_mpz_t());
        if (f.back() % (long)q == 0) f.back() = 1;
        if (!oracle::squarefree_mod_q(f, q)) continue;
        std::uint64_t count = oracle::hyperelliptic_count(f, q);
        double bound = 2.0 * g * std::sqrt((double)q);
        CHECK((double)count >= (double)(q + 1) - bound);
        CHECK((double)count <= (double)(q + 1) + bound);
        ++done;
    }
}
