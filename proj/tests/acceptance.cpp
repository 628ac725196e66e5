// Acceptance suite: one pass/fail line per criterion, run at the stated
// scales and tolerances. Criteria that are computationally unattainable at
// their stated scale are attempted under the configured budgets and reported
// as honest failures with the blocking analysis.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>

#include "hasseforge/dcc.hpp"
#include "hasseforge/jsonio.hpp"
#include "oracles.hpp"

using namespace hf;
using Clock = std::chrono::steady_clock;

namespace {

int g_failed = 0;

double secs_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

void report(const std::string& id, bool ok, const std::string& detail) {
    std::printf("[%s] criterion %s: %s\n", ok ? "PASS" : "FAIL", id.c_str(), detail.c_str());
    std::fflush(stdout);
    if (!ok) ++g_failed;
}

void note(const std::string& text) {
    std::printf("       %s\n", text.c_str());
    std::fflush(stdout);
}

// ------------------------------------------------------------ criterion 1

void criterion1() {
    auto t0 = Clock::now();
    try {
        Septuple s = family_one({Int(17), 1, 1, 3});
        bool coords = s.A == 4 && s.B == 648 && s.C == 2106 && s.D == 13 && s.E == 2187 &&
                      s.F == 54 && s.G == 3;
        bool on = on_threefold(Int(17), s);
        FmContext ctx(Int(17), 2);
        FmReport fm = verify_fm(ctx, s);
        bool all = fm.pass();
        for (int i = 1; i <= 7; ++i) all = all && fm.at(i).ok();
        bool witness = fm.a5_witness && *fm.a5_witness == 6;
        double dt = secs_since(t0);
        report("1", coords && on && all && witness && dt < 1.0,
               "family-one reproduction at (17; 1, 1, 3), n = 2: septuple (4, 648, 2106, 13, "
               "2187, 54, 3), A1-A7 pass, A5 witness H = 6, " +
                   std::to_string(dt) + " s");
    } catch (const std::exception& e) {
        report("1", false, std::string("exception: ") + e.what());
    }
}

// ------------------------------------------------------------ criterion 2

void criterion2(const SearchCaps& caps) {
    auto t0 = Clock::now();
    try {
        KappaRecipe rec = gen_kappa(Int(17), 2, 1, 1, caps);
        auto fr = check_family_one_conditions(Int(17), 2, {Int(17), 1, 1, rec.kappa},
                                              rec.hint_primes(), caps);
        bool b35 = fr.B3.ok() && fr.B4.ok() && fr.B5.ok();
        CReport cr = check_C(Int(17), 2, rec.kappa, rec.hint_primes(), caps);

        Septuple s = family_one({Int(17), 1, 1, rec.kappa});
        MordellCurve curve = MordellCurve::kappa_form(Int(17), 2, rec.kappa);
        FmContext ctx(Int(17), 2);
        CounterexampleCertificate cert =
            certify_counterexample(ctx, s, curve, rec.hint_primes(), caps);

        bool sweep_ok = cert.local.sweep_bound == 484 && cert.local.all_solvable;
        unsigned long seen = 0;
        bool inf_seen = false;
        for (const auto& pc : cert.local.places) {
            if (pc.place.infinite) inf_seen = true;
            ++seen;
        }
        bool place_count = inf_seen && seen >= small_primes_up_to(484).size();

        // invariant profile: 1/2 at 17, 0 at >= 3 other places, >= 5 samples each
        unsigned long at_p = 0;
        std::set<std::string> others;
        bool profile = true;
        for (const auto& smp : cert.brauer) {
            if (!smp.place.infinite && smp.place.l == 17) {
                profile = profile && smp.invariant == Rat(1, 2);
                ++at_p;
            } else {
                profile = profile && smp.invariant == 0;
                others.insert(smp.place.str());
            }
        }
        bool brauer_ok = profile && at_p >= 5 && others.size() >= 3 &&
                         cert.brauer.size() >= 5 * (1 + others.size()) &&
                         cert.sample_sum == Rat(1, 2);
        double dt = secs_since(t0);
        report("2", b35 && cr.all_pass() && sweep_ok && place_count && brauer_ok && dt < 300.0,
               "Mordell counterexample 17 z^2 = 3^6 kappa^6 x^24 - 1 with kappa = 3 kappa_*, "
               "kappa_* = " +
                   rec.kappa_star.get_str() +
                   "; B3-B5 + C1-C3 pass, all places solvable to the bound 484, invariant 1/2 "
                   "at 17 and 0 at " +
                   std::to_string(others.size()) + " other places, sum 1/2 (mod 1); " +
                   std::to_string(dt) + " s");
    } catch (const std::exception& e) {
        report("2", false, std::string("exception: ") + e.what());
    }
}

// ------------------------------------------------------------ criterion 3

void criterion3(const SearchCaps& caps) {
    auto t0 = Clock::now();
    try {
        KappaChiRecipe rec = gen_kappa_chi(Int(17), 2, 1, 1, caps);
        // unreachable at the paper-exact scale under any realistic budget;
        // if a future environment completes it, finish the criterion honestly
        DReport dr = check_D(Int(17), 2, rec.kappa_half.kappa, rec.chi,
                             rec.kappa_half.hint_primes(), {rec.chi}, caps);
        Septuple s = family_one({Int(17), 1, 1, rec.kappa_half.kappa});
        FermatCurve curve = FermatCurve::family_form(Int(17), 2, rec.kappa_half.kappa, rec.chi);
        FmContext ctx(Int(17), 2);
        CounterexampleCertificate cert =
            certify_counterexample(ctx, s, curve, rec.hint_primes(), caps);
        report("3", dr.all_pass() && cert.local.all_solvable && cert.local.sweep_bound == 256036,
               "Fermat counterexample certified with the good-prime sweep to 256036; " +
                   std::to_string(secs_since(t0)) + " s");
    } catch (const budget_error& e) {
        report("3", false,
               "unattainable at the stated scale: gen_kappa_chi(17, 2, 1, 1) stopped by its "
               "budget");
        note(std::string("stage ") + e.stage + ": " + e.what());
        note("the kappa_* congruence system runs over every odd prime l <= 256036 (the Fermat "
             "side has no symbol filter), forcing kappa_* == 1/3^2 modulo their product");
        note("any kappa passing D7 therefore has ~110,000 digits, and a prime of that size "
             "must be found inside one fixed residue class");
        auto t1 = Clock::now();
        {  // measured single-test cost at a ~10x smaller size, for scale
            gmp_randclass rng(gmp_randinit_mt);
            rng.seed(1u);
            Int m = rng.get_z_bits(37500);
            mpz_setbit(m.get_mpz_t(), 37499);
            mpz_setbit(m.get_mpz_t(), 0);
            pow_mod(Int(2), m - 1, m);
        }
        note("one Fermat test at 37.5k bits takes " + std::to_string(secs_since(t1)) +
             " s here; at ~366k bits that scales to minutes per candidate, with thousands of "
             "candidates expected (prime density ~ 1/11000 after the built-in sieve)");
        note("the construction is implemented in full and runs end-to-end at reduced scale "
             "(see the unit suite); raise --cap-modbits / --cap-scan to attempt it on larger "
             "hardware");
    } catch (const std::exception& e) {
        report("3", false, std::string("exception: ") + e.what());
    }
}

// ------------------------------------------------------------ criterion 4

void criterion4() {
    auto t0 = Clock::now();
    bool ok = true;
    long bad_a = 0, bad_b = 0, bad_l = 0;
    for (long a = -30; a <= 30 && ok; ++a) {
        if (a == 0) continue;
        for (long b = -30; b <= 30 && ok; ++b) {
            if (b == 0) continue;
            for (long l : {2l, 3l, 5l, 7l}) {
                int s = hilbert_symbol(Int(a), Int(b), Place::at(l));
                unsigned v = (unsigned)valuation(Int(a * b), Int(l));
                bool solvable = oracle::conic_solvable_mod(a, b, (std::uint64_t)l, 2 * v + 3);
                if (s != (solvable ? 1 : -1)) {
                    ok = false;
                    bad_a = a;
                    bad_b = b;
                    bad_l = l;
                    break;
                }
            }
            int inf = hilbert_symbol(Int(a), Int(b), Place::infinity());
            if (inf != ((a < 0 && b < 0) ? -1 : 1)) ok = false;
            int prod = inf;
            for (const auto& pp : factorize(Int(2 * a * b)).factors)
                prod *= hilbert_symbol(Int(a), Int(b), Place::at(pp.prime));
            if (prod != 1) ok = false;
        }
    }
    std::string detail = ok ? "hilbert_symbol matches the primitive-solution oracle mod "
                              "l^(2v+3) for all |a|,|b| <= 30 at {2,3,5,7,inf}; product "
                              "formula holds on every pair"
                            : "mismatch at (a, b, l) = (" + std::to_string(bad_a) + ", " +
                                  std::to_string(bad_b) + ", " + std::to_string(bad_l) + ")";
    report("4", ok, detail + "; " + std::to_string(secs_since(t0)) + " s");
}

// ------------------------------------------------------------ criterion 5

void criterion5() {
    auto t0 = Clock::now();
    gmp_randclass rng(gmp_randinit_mt);
    rng.seed(2026u);
    auto primes = small_primes_up_to(101);
    int done = 0, violations = 0;
    while (done < 50) {
        std::uint64_t q =
            primes[2 +
                   mpz_get_ui(Int(rng.get_z_range((unsigned long)(primes.size() - 2))).get_mpz_t())];
        unsigned g = 1 + (unsigned)mpz_get_ui(Int(rng.get_z_range(5)).get_mpz_t());
        unsigned deg = 2 * g + 1 + (unsigned)mpz_get_ui(Int(rng.get_z_range(2)).get_mpz_t());
        std::vector<long> f(deg + 1, 0);
        for (auto& c : f) c = (long)mpz_get_ui(Int(rng.get_z_range((unsigned long)q)).get_mpz_t());
        if (f[deg] % (long)q == 0) f[deg] = 1;
        if (!oracle::squarefree_mod_q(f, q)) continue;
        std::uint64_t count = oracle::hyperelliptic_count(f, q);
        double bound = 2.0 * g * std::sqrt((double)q);
        if ((double)count < (double)(q + 1) - bound || (double)count > (double)(q + 1) + bound)
            ++violations;
        ++done;
    }
    report("5", violations == 0,
           "50 random squarefree hyperelliptic curves (genus <= 5, q <= 101): brute-force "
           "counts within q+1 +- 2g sqrt(q), " +
               std::to_string(violations) + " violations; " + std::to_string(secs_since(t0)) +
               " s");
}

// ------------------------------------------------------------ criterion 6

void criterion6() {
    auto t0 = Clock::now();
    bool surjective_ok = true;
    for (unsigned long s : {3ul, 5ul, 7ul, 9ul}) {
        for (std::uint64_t q : small_primes_up_to(999)) {
            if (q == 2) continue;
            std::set<std::uint64_t> image;
            for (std::uint64_t h = 0; h < q; ++h) image.insert(f64::powmod(h, s, q));
            if (universal_power_prime(Int(s), Int((unsigned long)q)) != (image.size() == q))
                surjective_ok = false;
        }
    }
    gmp_randclass rng(gmp_randinit_mt);
    rng.seed(4105u);
    auto primes3 = small_primes_up_to(499);
    int done = 0;
    bool roots_ok = true;
    while (done < 500) {
        std::uint64_t l =
            primes3[mpz_get_ui(Int(rng.get_z_range((unsigned long)primes3.size())).get_mpz_t())];
        if (l % 4 != 3 || l < 7) continue;
        Int L((unsigned long)l);
        Int x = rng.get_z_range(L - 1) + 1;
        if (jacobi_symbol(x, L) != 1) continue;
        unsigned nn = 1 + (unsigned)mpz_get_ui(Int(rng.get_z_range(6)).get_mpz_t());
        Int w = iterated_sqrt_3mod4(x, nn, L);
        if (pow_mod(w, pow_ui(Int(2), nn), L) != x % L) roots_ok = false;
        ++done;
    }
    report("6", surjective_ok && roots_ok,
           "universal_power_prime == brute-force surjectivity for s in {3,5,7,9}, q < 1000; "
           "iterated_sqrt_3mod4 verified by direct exponentiation on 500 random instances; " +
               std::to_string(secs_since(t0)) + " s");
}

// ------------------------------------------------------------ criterion 7

void criterion7(const SearchCaps& caps) {
    auto t0 = Clock::now();
    MordellCurve c = MordellCurve::kappa_form(Int(17), 2, Int(3));
    PlaceCertificate pc = local_solvable_at(c, Place::at(17), caps);
    bool ok = pc.verdict == Verdict::unsolvable && pc.method == Method::exhaustive_refutation;
    report("7", ok,
           "negative control: the kappa = 3 curve is proven locally unsolvable at 17 by "
           "exhaustive refutation (depth " +
               std::to_string(pc.depth) + "; units force x^24 in {1,16} mod 17, never 13); " +
               std::to_string(secs_since(t0)) + " s");
}

// ------------------------------------------------------------ criterion 8

void criterion8(const SearchCaps& caps) {
    bool mordell_ok = false, fermat_ok = false, nondcc_ok = false;
    auto t0 = Clock::now();
    try {
        SearchCaps mcaps = caps;
        mcaps.max_n = 32;
        note("criterion 8a: building the Mordell DCC sequence (h = 2): kappa_* is a ~37k-bit "
             "prime in a fixed residue class; expect tens of minutes on small hosts");
        CurveSequence seq = build_mordell_sequence(Int(17), 3, 1, 2, 1, mcaps);
        note("criterion 8a: kappa_* found (" +
             std::to_string(mpz_sizeinbase(seq.kappa_star.get_mpz_t(), 2)) +
             " bits, scan position " + seq.kappa_recipe->scan.x_index.get_str() + ", " +
             std::to_string(seq.kappa_recipe->scan.tests_run) + " candidates tested); verifying");
        DccReport rep = verify_dcc(seq, mcaps);
        bool witnesses = rep.levels.size() >= 2 && rep.levels[0].verdict == Verdict::solvable &&
                         rep.levels[0].witnesses.size() >= 2;
        bool cert = rep.counterexample.has_value() && rep.counterexample->fm.pass() &&
                    rep.counterexample->local.all_solvable;
        bool genus_up = true;
        for (size_t i = 1; i < seq.levels.size(); ++i)
            genus_up =
                genus_up && seq.genus_at(seq.levels[i - 1].index) < seq.genus_at(seq.levels[i].index);
        mordell_ok = rep.dcc_satisfied && witnesses && cert && genus_up;
        note("criterion 8a (Mordell, h = 2): " + std::string(mordell_ok ? "pass" : "FAIL") +
             " -- level-1 witnesses by exact substitution, level-2 counterexample certificate, "
             "genus strictly increasing (" +
             std::to_string(secs_since(t0)) + " s)");
    } catch (const std::exception& e) {
        note(std::string("criterion 8a (Mordell): exception: ") + e.what());
    }

    try {
        build_fermat_sequence(Int(17), 3, 1, 2, caps);
        fermat_ok = true;  // would continue with verify_dcc if attainable
        note("criterion 8b (Fermat, h = 2): sequence built");
    } catch (const budget_error& e) {
        note("criterion 8b (Fermat, h = 2): unattainable at the stated scale: the level-2 "
             "signature is 12 * 9, so the kappa_* congruences run over every odd prime up to "
             "4(6*9-1)^2 (12*9-1)^2 = 128640964 -- a CRT modulus of ~185 million bits");
        note(std::string("stage ") + e.stage + ": " + e.what());
        note("the construction runs end-to-end at a reduced bound in the unit suite");
    } catch (const std::exception& e) {
        note(std::string("criterion 8b (Fermat): exception: ") + e.what());
    }

    try {
        CurveSequence nd = build_non_dcc(2, 2, {Int(-1), Int(0), Int(1)}, 4);
        DccReport rep = verify_dcc(nd, caps);
        nondcc_ok = !rep.dcc_satisfied && rep.levels.size() == 4;
        for (const auto& lv : rep.levels)
            nondcc_ok = nondcc_ok && lv.verdict == Verdict::solvable && !lv.witnesses.empty() &&
                        lv.witnesses[0][0] == 1 && lv.witnesses[0][1] == 0;
        note(std::string("criterion 8c (non-DCC control z^2 = F(x^(2^i)), F = x^2 - 1): "
                         "witness (1, 0) at every materialized level: ") +
             (nondcc_ok ? "pass" : "FAIL"));
    } catch (const std::exception& e) {
        note(std::string("criterion 8c (non-DCC): exception: ") + e.what());
    }

    report("8", mordell_ok && fermat_ok && nondcc_ok,
           std::string("DCC sequences: Mordell ") + (mordell_ok ? "pass" : "FAIL") + ", Fermat " +
               (fermat_ok ? "pass" : "FAIL (unattainable at stated scale)") + ", non-DCC control " +
               (nondcc_ok ? "pass" : "FAIL") + "; " + std::to_string(secs_since(t0)) + " s total");
}

// ----------------------------------------------------------- criterion 9

void criterion9(const SearchCaps& caps) {
    auto t0 = Clock::now();
    try {
        SearchCaps c2 = caps;
        c2.schinzel_scan_cap = 100000;
        FamilyTwoRecipe rec = gen_family_two(Int(17), c2, true);
        const auto& pv = *rec.params.provenance;

        note("criterion 9 note: E_1 + E_2 is odd for every mu_1 (the Bezout relation forces "
             "eps_0 + delta_0 odd), so E_1 and E_2 are never simultaneously odd primes as "
             "literally stated; the scan certifies Q_1^* and the odd parts of E_1, E_2, which "
             "carry the same valuation bound v_l(E) <= 2");

        bool q_ok = is_prime(pv.Q1_star);
        Int o1 = abs(pv.E1_odd), o2 = abs(pv.E2_odd);
        bool e_ok = (o1 == 1 || is_prime(o1)) && (o2 == 1 || is_prime(o2));
        bool scan_ok = pv.mu1 <= 100000;

        bool fm_ok = true;
        for (unsigned n : {1u, 2u, 4u}) {
            FmContext ctx(Int(17), n);
            FmReport fr = verify_fm(ctx, rec.septuple, rec.hint_primes(), c2);
            fm_ok = fm_ok && fr.pass();
        }
        FactoredInteger fe = factorize_with_hints(rec.septuple.E, rec.hint_primes(), c2);
        bool v_ok = fe.complete;
        for (const auto& pp : fe.factors) {
            if (pp.prime == 2 || pp.prime == 3 || pp.prime == 17) continue;
            long vG = rec.septuple.G % pp.prime == 0 ? (long)valuation(rec.septuple.G, pp.prime) : 0;
            if ((long)pp.exponent - vG > 2) v_ok = false;
        }
        bool neg_ok = rec.n_EG <= 1;
        report("9", q_ok && e_ok && scan_ok && fm_ok && v_ok && neg_ok,
               "family two (Schinzel path): mu_1 = " + pv.mu1.get_str() + ", Q_1^* = " +
                   pv.Q1_star.get_str() +
                   " prime, odd parts of E_1, E_2 prime, v_l(E) - v_l(G) <= 2 on all relevant "
                   "primes, FM verified for n in {1, 2, 4}, n_EG = 1; " +
                   std::to_string(secs_since(t0)) + " s");
    } catch (const std::exception& e) {
        report("9", false, std::string("exception: ") + e.what());
    }
}

// ----------------------------------------------------------- criterion 10

void criterion10(const SearchCaps& caps) {
    auto t0 = Clock::now();
    try {
        KappaRecipe a = gen_kappa(Int(17), 2, 1, 1, caps);
        KappaRecipe b = gen_kappa(Int(17), 2, 1, 1, caps, {a.kappa_star});
        bool distinct =
            a.kappa_star != b.kappa_star &&
            curves_distinct(a.kappa, b.kappa, 2, {Int(3), a.kappa_star, b.kappa_star}, caps);
        report("10", distinct,
               "gen_kappa outputs with distinct kappa_* give non-isomorphic degree-24 curves "
               "(6r = 6 is not a multiple of 12n = 24); " +
                   std::to_string(secs_since(t0)) + " s");
    } catch (const std::exception& e) {
        report("10", false, std::string("exception: ") + e.what());
    }
}

}  // namespace

int main() {
    SearchCaps caps = SearchCaps::from_env();
    std::printf("acceptance suite (jobs = %u)\n", caps.effective_jobs());
    criterion1();
    criterion2(caps);
    criterion3(caps);
    criterion4();
    criterion5();
    criterion6();
    criterion7(caps);
    criterion8(caps);
    criterion9(caps);
    criterion10(caps);
    std::printf("%d of 10 criteria passed\n", 10 - g_failed);
    if (g_failed)
        std::printf(
            "the failing criteria demand prime searches in residue classes whose CRT moduli "
            "have 10^5..10^8 digits; the analyses are printed above and the constructions run "
            "at reduced scale in the unit suite\n");
    return g_failed == 0 ? 0 : 1;
}
