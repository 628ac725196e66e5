#include "hasseforge/generators.hpp"

#include <algorithm>
#include <cmath>

#include "hasseforge/fast64.hpp"

namespace hf {

namespace {

void require_base_prime(const Int& p) {
    if (p % 8 != 1 || p % 3 != 2 || !is_prime(p))
        throw std::invalid_argument("generator: p must be a prime == 1 (mod 8) and == 2 (mod 3)");
}

bool both_symbols_negative(const Int& p, std::uint64_t l) {
    Int L((unsigned long)l);
    return jacobi_symbol(p, L) == -1 && jacobi_symbol(-p, L) == -1;
}

// estimated bit size of a prime-product modulus without materializing it
double estimate_bits(std::uint64_t bound) {
    return 0.8 * (double)bound / std::log(2.0);  // theta(x) > 0.8 x for x >= 100
}

Int inv3_pow(const Int& modulus, unsigned s2) {
    // 1/3^(2s) mod modulus
    return inv_mod(pow_ui(Int(3), 2ul * s2) % modulus, modulus);
}

struct TargetSet {
    std::vector<CrtTarget> targets;
    Int modulus = 1;
};

void push_target(TargetSet& ts, Int modulus, Int residue, std::string label) {
    ts.modulus *= modulus;
    ts.targets.push_back({std::move(modulus), std::move(residue), std::move(label)});
}

Int crt_of(const TargetSet& ts) {
    CongruenceSystem sys;
    for (const auto& t : ts.targets) sys.items.push_back({t.modulus, t.residue});
    auto merged = crt_solve(sys);
    if (!merged) throw contradiction_error("generator: inconsistent CRT targets");
    return merged->residue;
}

}  // namespace

KappaRecipe gen_kappa(const Int& p, unsigned n, unsigned m, unsigned r, const SearchCaps& caps,
                      const std::set<Int>& exclude_kappa_star) {
    require_base_prime(p);
    if (n < 2) throw std::invalid_argument("gen_kappa: n must be >= 2");
    if (m < 1 || m >= n) throw std::invalid_argument("gen_kappa: need 1 <= m < n");
    if (r < 1 || m % r != 0) throw std::invalid_argument("gen_kappa: r must divide m");
    if (n > caps.max_n)
        throw budget_error("gen_kappa",
                           "n = " + std::to_string(n) + " exceeds the configured cap max_n = " +
                               std::to_string(caps.max_n) + " (raise HASSE_FORGE_CAP_MAXN)");

    KappaRecipe rec;
    rec.p = p;
    rec.n = n;
    rec.m = m;
    rec.r = r;
    rec.s = m / r;

    const Int nn((unsigned long)n);
    const std::uint64_t boundB = 4ull * (6ull * n - 1) * (6ull * n - 1);

    // A*: odd l | n, l != 3, p, both symbols -1; modulus l^(2 v_l(n) + 1)
    FactoredInteger nf = factorize(nn, caps);
    for (const auto& pp : nf.factors) {
        if (pp.prime == 2 || pp.prime == 3 || pp.prime == p) continue;
        if (!mpz_fits_ulong_p(pp.prime.get_mpz_t())) continue;
        if (both_symbols_negative(p, pp.prime.get_ui())) rec.setA.push_back(pp.prime);
    }
    // B*: odd l <= 4(6n-1)^2 coprime to 3 p n, both symbols -1; modulus l
    for (std::uint64_t l : small_primes_up_to(boundB)) {
        if (l == 2 || l == 3) continue;
        Int L((unsigned long)l);
        if (L == p || nn % L == 0) continue;
        if (both_symbols_negative(p, l)) rec.setB.push_back(L);
    }

    TargetSet ts;
    unsigned vp = (nn % p == 0) ? valuation(nn, p) : 0;
    Int pmod = pow_ui(p, 2ul * vp + 1);
    push_target(ts, pmod, inv3_pow(pmod, rec.s), "p^(2v_p(n)+1)");
    for (const Int& l : rec.setA) {
        Int lmod = pow_ui(l, 2ul * valuation(nn, l) + 1);
        push_target(ts, lmod, inv3_pow(lmod, rec.s), "A*: l^(2v_l(n)+1)");
    }
    for (const Int& l : rec.setB) push_target(ts, l, inv3_pow(l, rec.s), "B*: l");

    std::uint64_t bits = mpz_sizeinbase(ts.modulus.get_mpz_t(), 2);
    if (bits > caps.max_modulus_bits)
        throw budget_error("gen_kappa", "CRT modulus needs " + std::to_string(bits) +
                                            " bits, above the cap of " +
                                            std::to_string(caps.max_modulus_bits));

    rec.targets = ts.targets;
    rec.modulus = ts.modulus;
    rec.kappa0 = crt_of(ts);

    std::set<Int> excl{Int(3), p};
    excl.insert(exclude_kappa_star.begin(), exclude_kappa_star.end());
    auto res = prime_in_progression(rec.modulus, rec.kappa0, excl, caps);
    rec.scan.tests_run = res.tests_run;
    rec.scan.candidates = res.candidates;
    rec.scan.sieve_bound = res.sieve_bound;
    if (res.status != ProgressionResult::Status::found)
        throw budget_error("gen_kappa",
                           "no prime kappa_* within budget (" + std::to_string(res.tests_run) +
                               " tests over " + std::to_string(res.candidates) + " candidates)",
                           res.tests_run);
    rec.kappa_star = res.prime;
    rec.probable = res.probable;
    rec.scan.x_index = res.x_index;
    rec.kappa = pow_ui(Int(3), 2ul * m - 1) * pow_ui(rec.kappa_star, r);

    // re-verify independently: B3-B5 and C1-C3 must hold by construction
    FamilyOneParams fam{p, 1, 1, rec.kappa};
    FamilyOneReport fr = check_family_one_conditions(p, n, fam, rec.hint_primes(), caps);
    if (!fr.B3.ok() || !fr.B4.ok() || !fr.B5.ok())
        throw contradiction_error("gen_kappa: output fails B3-B5");
    CReport cr = check_C(p, n, rec.kappa, rec.hint_primes(), caps);
    if (!cr.all_pass()) throw contradiction_error("gen_kappa: output fails C1-C3");
    return rec;
}

CReport check_C(const Int& p, unsigned n, const Int& kappa, const std::vector<Int>& hints,
                const SearchCaps& caps) {
    if (kappa == 0) throw std::invalid_argument("check_C: kappa must be nonzero");
    CReport rep;
    const Int nn((unsigned long)n);

    unsigned vp = nn % p == 0 ? valuation(nn, p) : 0;
    Int pmod = pow_ui(p, 2ul * vp + 1);
    if ((kappa - inv_mod(Int(3), pmod)) % pmod != 0)
        rep.C1 = {Cond::fail, "kappa != 1/3 mod p^(2v_p(n)+1)", {}};

    auto disjunction_holds = [&](const Int& L, const Int& lmod) {
        // 3^6 kappa^6 - 1 a quadratic non-residue mod L, or kappa == 1/3 mod lmod
        Int k6 = pow_mod(kappa % L, Int(6), L);
        Int t = (729 * k6 - 1) % L;
        if (t < 0) t += L;
        if (t != 0 && jacobi_symbol(t, L) == -1) return true;
        return (kappa - inv_mod(Int(3), lmod)) % lmod == 0;
    };

    FactoredInteger nf = factorize(nn, caps);
    for (const auto& pp : nf.factors) {
        const Int& l = pp.prime;
        if (l == 2 || l == 3 || l == p) continue;
        if (kappa % l == 0) continue;
        if (!(jacobi_symbol(p, l) == -1 && jacobi_symbol(-p, l) == -1)) continue;
        rep.setA.push_back(l);
        Int lmod = pow_ui(l, 2ul * pp.exponent + 1);
        if (!disjunction_holds(l, lmod)) {
            rep.C2 = {Cond::fail, "condition fails at l = " + l.get_str(), {l}};
            break;
        }
    }

    const std::uint64_t boundB = 4ull * (6ull * n - 1) * (6ull * n - 1);
    for (std::uint64_t lu : small_primes_up_to(boundB)) {
        if (lu == 2 || lu == 3) continue;
        Int l((unsigned long)lu);
        if (l == p || nn % l == 0) continue;
        if (mpz_fdiv_ui(kappa.get_mpz_t(), lu) == 0) continue;
        if (!both_symbols_negative(p, lu)) continue;
        rep.setB.push_back(l);
        if (!disjunction_holds(l, l)) {
            rep.C3 = {Cond::fail, "condition fails at l = " + l.get_str(), {l}};
            break;
        }
    }
    (void)hints;
    return rep;
}

KappaChiRecipe gen_kappa_chi(const Int& p, unsigned n, unsigned m, unsigned r,
                             const SearchCaps& caps) {
    require_base_prime(p);
    if (n < 2) throw std::invalid_argument("gen_kappa_chi: n must be >= 2");
    if (m < 1 || m >= n) throw std::invalid_argument("gen_kappa_chi: need 1 <= m < n");
    if (r < 1 || m % r != 0) throw std::invalid_argument("gen_kappa_chi: r must divide m");
    if (n > caps.max_n)
        throw budget_error("gen_kappa_chi", "n exceeds the configured cap max_n");

    KappaChiRecipe rec;
    KappaRecipe& kh = rec.kappa_half;
    kh.p = p;
    kh.n = n;
    kh.m = m;
    kh.r = r;
    kh.s = m / r;

    const Int nn((unsigned long)n);
    const unsigned v2 = n % 2 == 0 ? valuation(nn, Int(2)) : 0;
    const unsigned v3 = n % 3 == 0 ? valuation(nn, Int(3)) : 0;

    // F*: odd l | n, l != 3, p (no symbol condition on the Fermat side)
    FactoredInteger nf = factorize(nn, caps);
    for (const auto& pp : nf.factors) {
        if (pp.prime == 2 || pp.prime == 3 || pp.prime == p) continue;
        kh.setA.push_back(pp.prime);
    }
    // G*: every odd l <= 4(6n-1)^2 (12n-1)^2 coprime to 3 p n
    std::uint64_t gbound = 4ull * (6ull * n - 1) * (6ull * n - 1) * (12ull * n - 1) * (12ull * n - 1);
    if (caps.gstar_bound_override) gbound = caps.gstar_bound_override;
    rec.gstar_bound_used = gbound;

    if (estimate_bits(gbound) > (double)caps.max_modulus_bits)
        throw budget_error("gen_kappa_chi",
                           "G* congruences over all primes <= " + std::to_string(gbound) +
                               " need a CRT modulus of ~" +
                               std::to_string((std::uint64_t)estimate_bits(gbound)) +
                               " bits, above the cap of " + std::to_string(caps.max_modulus_bits));
    for (std::uint64_t l : small_primes_up_to(gbound)) {
        if (l == 2 || l == 3) continue;
        Int L((unsigned long)l);
        if (L == p || nn % L == 0) continue;
        kh.setB.push_back(L);
    }

    TargetSet ts;
    push_target(ts, Int(4), Int(1), "mod 4 (E1)");
    unsigned vp = nn % p == 0 ? valuation(nn, p) : 0;
    Int pmod = pow_ui(p, 2ul * vp + 1);
    push_target(ts, pmod, inv3_pow(pmod, kh.s), "p^(2v_p(n)+1) (E2)");
    for (const Int& l : kh.setA) {
        Int lmod = pow_ui(l, 2ul * valuation(nn, l) + 1);
        push_target(ts, lmod, inv3_pow(lmod, kh.s), "F*: l^(2v_l(n)+1) (E3)");
    }
    for (const Int& l : kh.setB) push_target(ts, l, inv3_pow(l, kh.s), "G*: l (E4)");

    std::uint64_t bits = mpz_sizeinbase(ts.modulus.get_mpz_t(), 2);
    if (bits > caps.max_modulus_bits)
        throw budget_error("gen_kappa_chi", "CRT modulus needs " + std::to_string(bits) +
                                                " bits, above the cap of " +
                                                std::to_string(caps.max_modulus_bits));
    kh.targets = ts.targets;
    kh.modulus = ts.modulus;
    kh.kappa0 = crt_of(ts);

    auto res = prime_in_progression(kh.modulus, kh.kappa0, {Int(3), p}, caps);
    kh.scan.tests_run = res.tests_run;
    kh.scan.candidates = res.candidates;
    kh.scan.sieve_bound = res.sieve_bound;
    if (res.status != ProgressionResult::Status::found)
        throw budget_error("gen_kappa_chi", "no prime kappa_* within budget", res.tests_run);
    kh.kappa_star = res.prime;
    kh.probable = res.probable;
    kh.scan.x_index = res.x_index;
    kh.kappa = pow_ui(Int(3), 2ul * m - 1) * pow_ui(kh.kappa_star, r);
    const Int& kstar = kh.kappa_star;
    const Int& kappa = kh.kappa;

    if (kstar % 4 != 1) throw contradiction_error("gen_kappa_chi: kappa_* != 1 (mod 4)");

    // 2-, 3-, kappa_*-adic square roots (existence is guaranteed by the
    // construction; absence signals a parameter bug)
    unsigned prec2 = 2 * v2 + 5, prec3 = 2 * v3 + 3;
    unsigned vks = (kstar <= nn && nn % kstar == 0) ? valuation(nn, kstar) : 0;
    unsigned precK = 2 * vks + 1;
    {
        Int m2 = pow_ui(Int(2), prec2);
        auto g2 = sqrt_mod_prime_power(inv_mod(p % m2, m2), Int(2), prec2);
        if (!g2) throw contradiction_error("gen_kappa_chi: 1/p not a square in Z_2");
        rec.gamma2 = *g2;
        Int m3 = pow_ui(Int(3), prec3);
        auto g3 = sqrt_mod_prime_power((m3 - inv_mod(p % m3, m3)) % m3, Int(3), prec3);
        if (!g3) throw contradiction_error("gen_kappa_chi: -1/p not a square in Z_3");
        rec.gamma3 = *g3;
        Int mk = pow_ui(kstar, precK);
        auto gk = sqrt_mod_prime_power((mk - inv_mod(p % mk, mk)) % mk, kstar, precK);
        if (!gk) throw contradiction_error("gen_kappa_chi: -1/p not a square in Z_kappa*");
        rec.gamma_kstar = *gk;
    }

    // Theta_2 = Delta_2 Gamma_2 27 kappa^3 == 3 (mod 4);
    // Theta_3 = Delta_3 Gamma_3 == 2 (mod 3); gcd(Theta_k* - 1, kappa_*) = 1
    {
        Int m2 = pow_ui(Int(2), prec2);
        Int base = rec.gamma2.residue * 27 % m2 * pow_mod(kappa % m2, Int(3), m2) % m2;
        rec.delta2 = (base % 4 == 3) ? 1 : -1;
        rec.theta2 = ((rec.delta2 * base) % m2 + m2) % m2;
        if (rec.theta2 % 4 != 3) throw contradiction_error("gen_kappa_chi: Theta_2 != 3 (mod 4)");

        rec.delta3 = (rec.gamma3.residue % 3 == 2) ? 1 : -1;
        Int m3 = pow_ui(Int(3), prec3);
        rec.theta3 = ((rec.delta3 * rec.gamma3.residue) % m3 + m3) % m3;
        if (rec.theta3 % 3 != 2) throw contradiction_error("gen_kappa_chi: Theta_3 != 2 (mod 3)");

        rec.delta_kstar = unit_sign_choice(rec.gamma_kstar.residue, kstar);
        Int mk = pow_ui(kstar, precK);
        rec.theta_kstar = ((rec.delta_kstar * rec.gamma_kstar.residue) % mk + mk) % mk;
    }

    // H: odd l | n, l != 3, kappa_*; Theta_l == 2 (mod l) is the default choice
    for (const auto& pp : nf.factors) {
        if (pp.prime == 2 || pp.prime == 3 || pp.prime == kstar) continue;
        rec.setH.push_back(pp.prime);
    }

    TargetSet cs;
    push_target(cs, pow_ui(Int(2), prec2), rec.theta2, "2^(2v_2(n)+5) (E5)");
    push_target(cs, pow_ui(Int(3), prec3), rec.theta3, "3^(2v_3(n)+3) (E6)");
    push_target(cs, pow_ui(kstar, precK), rec.theta_kstar, "kappa_*^(2v(n)+1) (E7)");
    for (const Int& l : rec.setH) {
        Int lmod = pow_ui(l, valuation(nn, l));
        push_target(cs, lmod, Int(2) % lmod, "H: l^(v_l(n)) (E8)");
    }
    rec.chi_targets = cs.targets;
    rec.upsilon = cs.modulus;
    rec.chi_star = crt_of(cs);

    auto cres = prime_in_progression(rec.upsilon, rec.chi_star, {}, caps);
    rec.scan.tests_run = cres.tests_run;
    rec.scan.candidates = cres.candidates;
    rec.scan.sieve_bound = cres.sieve_bound;
    if (cres.status != ProgressionResult::Status::found)
        throw budget_error("gen_kappa_chi", "no prime chi within budget", cres.tests_run);
    rec.chi = cres.prime;
    rec.chi_probable = cres.probable;
    rec.scan.x_index = cres.x_index;

    rec.n_star = nn / pow_ui(Int(2), v2);
    Int num = rec.chi - rec.chi_star;
    if (num % rec.n_star != 0)
        throw contradiction_error("gen_kappa_chi: chi - chi_* not divisible by n_*");
    rec.sigma = num / rec.n_star;

    Int g;
    mpz_gcd(g.get_mpz_t(), rec.chi.get_mpz_t(), nn.get_mpz_t());
    if (g != 1) throw contradiction_error("gen_kappa_chi: gcd(chi, n) != 1");
    Int cm1 = rec.chi_star - 1;
    mpz_gcd(g.get_mpz_t(), cm1.get_mpz_t(), rec.n_star.get_mpz_t());
    if (g != 1) throw contradiction_error("gen_kappa_chi: gcd(chi_* - 1, n_*) != 1");

    SearchCaps check_caps = caps;  // same G* bound for the re-verification
    DReport dr = check_D(p, n, kappa, rec.chi, kh.hint_primes(), {rec.chi}, check_caps);
    if (!dr.all_pass()) throw contradiction_error("gen_kappa_chi: output fails D1-D7");
    return rec;
}

namespace {

// is u a 2n-th power residue mod l^e with a unit witness? (e small or l large
// with e = 1); returns (exists, witness or 0)
std::pair<bool, Int> power_residue_2n(const Int& u, unsigned n2, const Int& l, unsigned e) {
    Int le = pow_ui(l, e);
    Int um = ((u % le) + le) % le;
    if (um % l == 0) return {false, 0};
    if (e == 1) {
        if (mpz_fits_ulong_p(l.get_mpz_t()) && l < 2'000'000'000) {
            auto lu = l.get_ui();
            auto uu = mpz_fdiv_ui(um.get_mpz_t(), lu);
            if (!f64::is_power_residue(uu, n2, lu)) return {false, 0};
            auto w = f64::nth_root_mod(uu, n2, lu);
            return {true, Int((unsigned long)(w == lu ? 0 : w))};
        }
        Int l1 = l - 1, d;
        Int e2((unsigned long)n2);
        mpz_gcd(d.get_mpz_t(), e2.get_mpz_t(), l1.get_mpz_t());
        return {pow_mod(um, l1 / d, l) == 1, 0};  // witness omitted at this size
    }
    // l | n case: l^e stays small; brute force
    if (le > 2'000'000) return {false, 0};
    for (Int z = 1; z < le; ++z) {
        if (z % l == 0) continue;
        if (pow_mod(z, Int((unsigned long)n2), le) == um) return {true, z};
    }
    return {false, 0};
}

}  // namespace

DReport check_D(const Int& p, unsigned n, const Int& kappa, const Int& chi,
                const std::vector<Int>& kappa_hints, const std::vector<Int>& chi_hints,
                const SearchCaps& caps) {
    if (kappa == 0) throw std::invalid_argument("check_D: kappa must be nonzero");
    if (chi == 0 || mpz_even_p(chi.get_mpz_t()))
        throw std::invalid_argument("check_D: chi must be a nonzero odd integer");
    DReport rep;
    const Int nn((unsigned long)n);
    const unsigned v2 = n % 2 == 0 ? valuation(nn, Int(2)) : 0;
    const unsigned v3 = n % 3 == 0 ? valuation(nn, Int(3)) : 0;
    const Int pchi2 = p * chi * chi;

    unsigned vp = nn % p == 0 ? valuation(nn, p) : 0;
    Int pmod = pow_ui(p, 2ul * vp + 1);
    if ((kappa - inv_mod(Int(3), pmod)) % pmod != 0)
        rep.D1 = {Cond::fail, "kappa != 1/3 mod p^(2v_p(n)+1)", {}};

    Int m2 = pow_ui(Int(2), 2ul * v2 + 5);
    Int k6 = pow_mod(kappa % m2, Int(6), m2);
    if ((pchi2 - 729 * k6) % m2 != 0)
        rep.D2 = {Cond::fail, "p chi^2 != 3^6 kappa^6 mod 2^(2v_2(n)+5)", {}};

    Int m3 = pow_ui(Int(3), 2ul * v3 + 3);
    if ((pchi2 + 1) % m3 != 0) rep.D3 = {Cond::fail, "p chi^2 != -1 mod 3^(2v_3(n)+3)", {}};

    // D4 over the odd primes dividing kappa (l != 3, p)
    FactoredInteger fk = factorize_with_hints(kappa, kappa_hints, caps);
    if (!fk.complete) {
        rep.D4 = {Cond::undecided, "kappa has unfactored cofactor", {}};
    } else {
        for (const auto& pp : fk.factors) {
            const Int& l = pp.prime;
            if (l == 2 || l == 3 || l == p) continue;
            unsigned vl = nn % l == 0 ? valuation(nn, l) : 0;
            Int lmod = pow_ui(l, 2ul * vl + 1);
            if (l % 4 != 1) {
                rep.D4 = {Cond::fail, "l = " + l.get_str() + " != 1 (mod 4)", {l}};
                break;
            }
            if ((pchi2 + 1) % lmod != 0) {
                rep.D4 = {Cond::fail, "p chi^2 != -1 mod l^(2v+1), l = " + l.get_str(), {l}};
                break;
            }
        }
    }

    // D5 over the odd primes dividing chi (coprime to 3 p kappa)
    FactoredInteger fc = factorize_with_hints(chi, chi_hints, caps);
    if (!fc.complete) {
        rep.D5 = {Cond::undecided, "chi has unfactored cofactor", {}};
    } else {
        for (const auto& pp : fc.factors) {
            const Int& l = pp.prime;
            if (l == 2 || l == 3 || l == p || kappa % l == 0) continue;
            unsigned vl = nn % l == 0 ? valuation(nn, l) : 0;
            auto [ok1, w1] = power_residue_2n(3 * kappa, 2 * n, l, 2 * vl + 1);
            if (ok1) {
                rep.D5.data.push_back(w1);
                continue;
            }
            auto [ok2, w2] = power_residue_2n(-3 * kappa, 2 * n, l, 2 * vl + 1);
            if (ok2) {
                rep.D5.data.push_back(w2);
                continue;
            }
            rep.D5 = {Cond::fail, "no zeta_l with kappa == +-zeta^(2n)/3, l = " + l.get_str(), {l}};
            break;
        }
    }

    // D6 over odd primes l | n coprime to 3 p kappa chi
    FactoredInteger nf = factorize(nn, caps);
    for (const auto& pp : nf.factors) {
        const Int& l = pp.prime;
        if (l == 2 || l == 3 || l == p) continue;
        if (kappa % l == 0 || chi % l == 0) continue;
        Int lmod = pow_ui(l, 2ul * pp.exponent + 1);
        if ((kappa - inv_mod(Int(3), lmod)) % lmod != 0) {
            rep.D6 = {Cond::fail, "kappa != 1/3 mod l^(2v+1), l = " + l.get_str(), {l}};
            break;
        }
    }

    // D7 over every odd prime l <= 4(6n-1)^2(12n-1)^2 coprime to 3 p kappa chi n
    std::uint64_t gbound = 4ull * (6ull * n - 1) * (6ull * n - 1) * (12ull * n - 1) * (12ull * n - 1);
    if (caps.gstar_bound_override) gbound = caps.gstar_bound_override;
    rep.gstar_bound_used = gbound;
    if (gbound > 500'000'000) {
        rep.D7 = {Cond::undecided,
                  "G bound " + std::to_string(gbound) + " too large to enumerate", {}};
    } else {
        const Int threek = 3 * kappa - 1;  // kappa == 1/3 (mod l) <=> l | 3 kappa - 1
        for (std::uint64_t lu : small_primes_up_to(gbound)) {
            if (lu == 2 || lu == 3) continue;
            Int l((unsigned long)lu);
            if (l == p || nn % l == 0) continue;
            if (mpz_fdiv_ui(kappa.get_mpz_t(), lu) == 0) continue;
            if (mpz_fdiv_ui(chi.get_mpz_t(), lu) == 0) continue;
            if (mpz_fdiv_ui(threek.get_mpz_t(), lu) != 0) {
                rep.D7 = {Cond::fail, "kappa != 1/3 mod l = " + l.get_str(), {l}};
                break;
            }
        }
    }
    return rep;
}

// ------------------------------------------------------------ family two --

std::vector<Int> FamilyTwoRecipe::hint_primes() const {
    std::vector<Int> out{Int(2), Int(3)};
    if (params.provenance) {
        const auto& pv = *params.provenance;
        if (pv.E1_odd != 0) out.push_back(abs(pv.E1_odd));
        if (pv.E2_odd != 0) out.push_back(abs(pv.E2_odd));
        out.push_back(pv.Q1_star);
    }
    return out;
}

FamilyTwoRecipe gen_family_two(const Int& p, const SearchCaps& caps, bool schinzel,
                               const FamilyTwoSeeds& seeds) {
    require_base_prime(p);
    const Int &lam = seeds.lambda, &gam = seeds.gamma;
    if (lam == 0 || gam == 0 || mpz_even_p(lam.get_mpz_t()) || mpz_even_p(gam.get_mpz_t()))
        throw std::invalid_argument("gen_family_two: lambda, gamma must be odd and nonzero");
    {
        Int g;
        Int g3 = 3 * gam;
        mpz_gcd(g.get_mpz_t(), lam.get_mpz_t(), g3.get_mpz_t());
        if (g != 1) throw std::invalid_argument("gen_family_two: gcd(lambda, 3 gamma) != 1");
        if (lam % p == 0 || gam % p == 0)
            throw std::invalid_argument("gen_family_two: p must not divide lambda or gamma");
    }

    FamilyTwoRecipe rec;
    rec.schinzel_path = schinzel;
    FamilyTwoProvenance pv;
    pv.schinzel_path = schinzel;

    const Int pl2 = p * lam * lam;
    const Int ng2 = 9 * gam * gam;

    // Bezout p l^2 e* + 9 g^2 d* = 1, then shift so that d0 == 2 (mod 3)
    Int g, estar, dstar;
    mpz_gcdext(g.get_mpz_t(), estar.get_mpz_t(), dstar.get_mpz_t(), pl2.get_mpz_t(),
               ng2.get_mpz_t());
    if (g != 1) throw contradiction_error("gen_family_two: gcd(p l^2, 9 g^2) != 1");
    Int sstar = ((Int(2) - dstar) % 3 + 3) % 3;
    pv.eps_star = estar;
    pv.delta_star = dstar;
    pv.s_star = sstar;
    Int eps0 = estar + ng2 * sstar;
    Int delta0 = dstar - pl2 * sstar;
    if (((delta0 % 3) + 3) % 3 != 2) throw contradiction_error("gen_family_two: delta_0 != 2 mod 3");
    if (pl2 * eps0 + ng2 * delta0 != 1) throw contradiction_error("gen_family_two: Bezout broken");

    // (t2, t3): 27 l^3 g^3 t2 - p t3 = 1
    const Int c27 = 27 * lam * lam * lam * gam * gam * gam;
    Int t2 = inv_mod(((c27 % p) + p) % p, p);
    Int t3 = (c27 * t2 - 1) / p;
    pv.t2 = t2;
    pv.t3 = t3;

    // pi: quadratic residue mod p (default: smallest > 1)
    Int pi;
    if (seeds.pi) {
        pi = *seeds.pi;
        if (pi % p == 0 || jacobi_symbol(pi, p) != 1)
            throw std::invalid_argument("gen_family_two: pi must be a quadratic residue mod p");
    } else {
        for (pi = 2;; ++pi)
            if (jacobi_symbol(pi, p) == 1) break;
    }
    pv.pi = pi;

    // t5: t5 == (pi - 2 l^2 e0 - t3)/(27 l^3 g^3) (mod p), t5 == 1 - t3 (mod 2)
    Int rhs = ((pi - 2 * lam * lam * eps0 - t3) % p + p) % p;
    Int t5modp = rhs * inv_mod(((c27 % p) + p) % p, p) % p;
    Int parity = ((1 - t3) % 2 + 2) % 2;
    auto t5sys = crt_solve({{{p, t5modp}, {Int(2), parity}}});
    if (!t5sys) throw contradiction_error("gen_family_two: t5 CRT failed");
    Int t5 = t5sys->residue;
    if (t5 == 0) t5 = t5sys->modulus;
    pv.t5 = t5;

    Int t1 = t2 + p * t5;
    Int t4 = t3 + c27 * t5;
    if (c27 * t1 - p * t4 != 1) throw contradiction_error("gen_family_two: t1/t4 relation broken");
    if (mpz_odd_p(t1.get_mpz_t())) throw contradiction_error("gen_family_two: t1 must be even");
    pv.t1 = t1;
    pv.t4 = t4;

    // F0 = 3^u F1 with u = 1 iff lambda gamma is a QR mod p
    pv.u = jacobi_symbol(lam * gam, p) == 1 ? 1 : 0;
    pv.F1 = seeds.F1;
    {
        if (seeds.F1 == 0) throw std::invalid_argument("gen_family_two: F1 must be nonzero");
        Int gg;
        Int p3 = 3 * p;
        mpz_gcd(gg.get_mpz_t(), seeds.F1.get_mpz_t(), p3.get_mpz_t());
        if (gg != 1) throw std::invalid_argument("gen_family_two: gcd(F1, 3p) != 1");
        FactoredInteger ff = factorize(seeds.F1, caps);
        if (!ff.complete)
            throw incomplete_factorization_error("gen_family_two: cannot check (F2) on F1",
                                                 ff.cofactor);
        for (const auto& pp : ff.factors)
            if (pp.prime != 2 && !is_square_in_local_field(p, Place::at(pp.prime)))
                throw std::invalid_argument("gen_family_two: (F2) fails at l = " +
                                            pp.prime.get_str());
    }
    Int F0 = pow_ui(Int(3), pv.u) * seeds.F1;
    Int t0 = -3 * lam * gam * F0 * t1;

    // H = sqrt(3 lambda gamma / F0) mod p
    {
        Int w = 3 * lam * gam % p * inv_mod(((F0 % p) + p) % p, p) % p;
        w = (w + p) % p;
        auto hr = sqrt_mod_prime_power(w, p, 1);
        if (!hr) throw contradiction_error("gen_family_two: 3 lambda gamma / F0 not a QR mod p");
        Int other = p - hr->residue;
        pv.H = hr->residue < other ? hr->residue : other;
    }

    pv.P2_star = 18 * lam * lam * gam * gam;
    pv.R2_star = 2 * lam * lam * eps0 + t4;
    if (mpz_even_p(pv.R2_star.get_mpz_t()))
        throw contradiction_error("gen_family_two: R_2^* must be odd");
    if (((pv.R2_star - pi) % p) != 0)
        throw contradiction_error("gen_family_two: R_2^* != pi (mod p)");
    {
        Int gg, lhs = 3 * p * pv.P2_star;
        mpz_gcd(gg.get_mpz_t(), lhs.get_mpz_t(), pv.R2_star.get_mpz_t());
        if (gg != 1) throw contradiction_error("gen_family_two: gcd(3p P_2^*, R_2^*) != 1");
    }

    // scan mu_1
    const Int h = t1 / 2;
    const Int e1_lin = 27 * p * p * gam * gam;
    const Int e1_const = p * eps0 + 27 * lam * gam * gam * gam * h;
    const Int e2_lin = 3 * p * p * lam * lam;
    const Int e2_const = -delta0 + 3 * lam * lam * lam * gam * h;
    const Int q_lin = 3 * p * pv.P2_star;
    const Int q_const = pv.R2_star;

    bool found = false;
    Int mu1;
    for (std::uint64_t i = 1; i <= caps.schinzel_scan_cap; ++i) {
        Int cand((unsigned long)i);
        Int Q1 = q_lin * cand + q_const;
        ++rec.scan.tests_run;
        if (Q1 <= 2 || !is_prime(Q1)) continue;
        if (!schinzel) {
            mu1 = cand;
            pv.Q1_star = Q1;
            pv.E1 = e1_lin * cand + e1_const;
            pv.E2 = e2_lin * cand + e2_const;
            found = true;
            break;
        }
        Int E1 = e1_lin * cand + e1_const;
        Int E2 = e2_lin * cand + e2_const;
        if (E1 == 0 || E2 == 0) continue;
        // E1 + E2 is odd (the Bezout relation forces eps0 + delta0 odd), so
        // the pair can never be simultaneously odd primes; the odd parts
        // carry the valuation bound v_l(E) <= 2
        Int O1 = abs(E1), O2 = abs(E2);
        unsigned a1 = 0, a2 = 0;
        while (mpz_even_p(O1.get_mpz_t())) {
            O1 /= 2;
            ++a1;
        }
        while (mpz_even_p(O2.get_mpz_t())) {
            O2 /= 2;
            ++a2;
        }
        if (O1 != 1 && !is_prime(O1)) continue;
        if (O2 != 1 && !is_prime(O2)) continue;
        mu1 = cand;
        pv.Q1_star = Q1;
        pv.E1 = E1;
        pv.E2 = E2;
        pv.E1_odd = E1 < 0 ? -O1 : O1;
        pv.E2_odd = E2 < 0 ? -O2 : O2;
        pv.E1_two_val = a1;
        pv.E2_two_val = a2;
        found = true;
        break;
    }
    if (!found)
        throw budget_error("gen_family_two", "no admissible mu_1 within the scan cap",
                           rec.scan.tests_run);
    pv.mu1 = mu1;
    rec.scan.candidates = rec.scan.tests_run;

    FamilyTwoParams params;
    params.p = p;
    params.lambda = lam;
    params.gamma = gam;
    params.eps0 = eps0;
    params.delta0 = delta0;
    params.mu = 3 * p * mu1;
    params.t0 = t0;
    params.F0 = F0;
    params.provenance = pv;
    rec.params = params;
    rec.septuple = family_two(params);

    // n_EG = max(1, max over S_{E,G} of (v_l(E) - v_l(G))/6)
    {
        FactoredInteger fe = factorize_with_hints(rec.septuple.E, rec.hint_primes(), caps);
        if (!fe.complete)
            throw incomplete_factorization_error("gen_family_two: E not fully factored",
                                                 fe.cofactor);
        Rat worst(1);
        for (const auto& pp : fe.factors) {
            const Int& l = pp.prime;
            if (l == 2 || l == 3 || l == p) continue;
            if (is_square_in_local_field(p, Place::at(l))) continue;
            long vG = rec.septuple.G % l == 0 ? (long)valuation(rec.septuple.G, l) : 0;
            Rat q(Int((long)pp.exponent - vG), Int(6));
            q.canonicalize();
            if (q > worst) worst = q;
        }
        rec.n_EG = worst;
    }

    // the recipe guarantees Hypothesis FM for every n > n_EG; verify the
    // smallest such n (and n = 1 on the Schinzel path, where v_l <= 2 < 6)
    {
        unsigned n_check = (unsigned)mpz_get_ui(Int(rec.n_EG.get_num() / rec.n_EG.get_den()).get_mpz_t()) + 1;
        FmContext ctx(p, n_check);
        FmReport fr = verify_fm(ctx, rec.septuple, rec.hint_primes(), caps);
        if (!fr.pass())
            throw contradiction_error("gen_family_two: output fails Hypothesis FM at n = " +
                                      std::to_string(n_check));
        if (schinzel) {
            FmContext ctx1(p, 1);
            FmReport fr1 = verify_fm(ctx1, rec.septuple, rec.hint_primes(), caps);
            if (!fr1.pass())
                throw contradiction_error("gen_family_two: Schinzel-path output fails FM at n = 1");
        }
    }
    return rec;
}

}  // namespace hf
