#pragma once

#include "hasseforge/curves.hpp"

namespace hf {

struct CrtTarget {
    Int modulus;
    Int residue;
    std::string label;
};

struct ScanStats {
    std::uint64_t tests_run = 0;
    std::uint64_t candidates = 0;
    std::uint64_t sieve_bound = 0;
    Int x_index;
};

/// CRT-and-progression construction of kappa = 3^(2m-1) kappa_*^r: the prime
/// kappa_* satisfies kappa_* == 1/3^(2s) modulo p^(2v_p(n)+1), modulo
/// l^(2v_l(n)+1) for l in setA (odd l | n, l not 3 or p, both symbols -1) and
/// modulo l for l in setB (odd l <= 4(6n-1)^2 coprime to 3pn, both symbols -1).
struct KappaRecipe {
    Int p;
    unsigned n = 0, m = 0, r = 0, s = 0;
    std::vector<Int> setA, setB;
    std::vector<CrtTarget> targets;
    Int modulus;       // progression modulus M
    Int kappa0;        // CRT base
    Int kappa_star;    // prime found in the progression
    bool probable = false;
    Int kappa;         // 3^(2m-1) kappa_star^r
    ScanStats scan;

    std::vector<Int> hint_primes() const { return {Int(3), kappa_star}; }
};

KappaRecipe gen_kappa(const Int& p, unsigned n, unsigned m, unsigned r,
                      const SearchCaps& caps = {}, const std::set<Int>& exclude_kappa_star = {});

struct CReport {
    ConditionReport C1, C2, C3;
    std::vector<Int> setA, setB;
    bool all_pass() const { return C1.ok() && C2.ok() && C3.ok(); }
};

CReport check_C(const Int& p, unsigned n, const Int& kappa, const std::vector<Int>& hints = {},
                const SearchCaps& caps = {});

/// The kappa half with the extra mod-4 congruence plus the chi half: 2-, 3-
/// and kappa_*-adic square roots of (+/-)1/p, sign choices, the CRT for
/// chi_*, and the progression prime chi.
struct KappaChiRecipe {
    KappaRecipe kappa_half;   // setA/setB here hold the F*/G* sets
    PadicApprox gamma2, gamma3, gamma_kstar;
    int delta2 = 1, delta3 = 1, delta_kstar = 1;
    Int theta2, theta3, theta_kstar;
    std::vector<Int> setH;              // odd l | n, l != 3, kappa_*
    std::vector<CrtTarget> chi_targets; // E5-E8
    Int upsilon;
    Int chi_star;
    Int chi;
    bool chi_probable = false;
    Int n_star;      // n / 2^v2(n)
    Int sigma;       // chi = n_star * sigma + chi_star
    ScanStats scan;
    std::uint64_t gstar_bound_used = 0;  // caps override recorded when active

    std::vector<Int> hint_primes() const {
        return {Int(3), kappa_half.kappa_star, chi};
    }
};

KappaChiRecipe gen_kappa_chi(const Int& p, unsigned n, unsigned m, unsigned r,
                             const SearchCaps& caps = {});

struct DReport {
    ConditionReport D1, D2, D3, D4, D5, D6, D7;
    std::uint64_t gstar_bound_used = 0;
    bool all_pass() const {
        return D1.ok() && D2.ok() && D3.ok() && D4.ok() && D5.ok() && D6.ok() && D7.ok();
    }
};

/// Conditions D1-D7. kappa_hints / chi_hints carry their construction primes
/// so the divisor sets enumerate exactly.
DReport check_D(const Int& p, unsigned n, const Int& kappa, const Int& chi,
                const std::vector<Int>& kappa_hints = {}, const std::vector<Int>& chi_hints = {},
                const SearchCaps& caps = {});

/// Second-parameterization recipe. schinzel = false: scan mu_1 until
/// Q_1^* = 3 p P_2^* mu_1 + R_2^* is an odd prime. schinzel = true: scan
/// until Q_1^* and the odd parts of E_1, E_2 are simultaneously prime (E_1
/// and E_2 have opposite parities for every mu_1 -- the Bezout relation
/// forces eps0 + delta0 odd -- so literal joint primality of E_1, E_2 is
/// impossible; the odd parts carry the construction).
struct FamilyTwoRecipe {
    FamilyTwoParams params;
    Septuple septuple;
    Rat n_EG;  // max(1, max (v_l(E)-v_l(G))/6 over bad symbols l)
    ScanStats scan;
    bool schinzel_path = false;

    std::vector<Int> hint_primes() const;
};

struct FamilyTwoSeeds {
    Int lambda = 1, gamma = 1;
    std::optional<Int> pi;  // default: smallest quadratic residue > 1 mod p
    Int F1 = 1;
};

FamilyTwoRecipe gen_family_two(const Int& p, const SearchCaps& caps = {}, bool schinzel = false,
                               const FamilyTwoSeeds& seeds = {});

}  // namespace hf
