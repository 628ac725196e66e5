#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <vector>

#include "hasseforge/base.hpp"

namespace hf {

// ---------------------------------------------------------------- types ----

struct PrimePower {
    Int prime;
    unsigned exponent = 1;
    bool probable = false;  // primality not deterministic at this size
};

/// sign * prod(prime^exponent) == value, primes strictly increasing.
/// complete == false leaves the unfactored composite part in `cofactor`.
struct FactoredInteger {
    Int value;
    int sign = 1;
    std::vector<PrimePower> factors;
    bool complete = true;
    Int cofactor = 1;

    Int remultiply() const;
    std::vector<Int> odd_primes_excluding(const std::vector<Int>& excluded) const;
};

struct PadicApprox {
    Int prime;
    unsigned precision = 1;  // k
    Int residue;             // in [0, prime^k)

    Int modulus() const;
};

struct Congruence {
    Int modulus;
    Int residue;
};

struct CongruenceSystem {
    std::vector<Congruence> items;
};

// ----------------------------------------------------------- operations ----

/// Jacobi symbol (a/m); m odd positive. Legendre symbol when m is prime.
int jacobi_symbol(const Int& a, const Int& m);

/// Largest e with l^e | n. n must be nonzero.
unsigned valuation(const Int& n, const Int& l);

/// Merge a congruence system; moduli need not be coprime but must be
/// consistent. nullopt = contradictory system.
std::optional<Congruence> crt_solve(const CongruenceSystem& sys);

/// r with r^2 == a (mod l^k) for a a unit mod l; the other root is l^k - r.
/// nullopt when a is a non-square in Q_l. Throws when l | a (strip even
/// powers of l first).
std::optional<PadicApprox> sqrt_mod_prime_power(const Int& a, const Int& l, unsigned k);

/// Is a a square in Q_place^x (a != 0)?
bool is_square_in_local_field(const Int& a, const Place& place);

/// Local Hilbert symbol (a, b)_place in {+1, -1}.
int hilbert_symbol(const Int& a, const Int& b, const Place& place);

/// Witness w with w^e == a (mod l), or nullopt. Smallest witness for l < 10^4.
std::optional<Int> nth_power_residue_test(const Int& a, const Int& e, const Int& l);

/// Is every residue an s-th power mod q? (s odd, q odd prime.)
bool universal_power_prime(const Int& s, const Int& q);

/// Constructive route: q = s*S + r with gcd(r - 1, s) = 1 and q an odd prime
/// certifies the s-th power map is onto Z/qZ.
bool universal_power_linear_form(const Int& s, const Int& r, const Int& S);

/// x_* with x_*^(2^n) == x (mod l) for l == 3 (mod 4), x a nonzero square
/// mod l, via the inductive sign-flip procedure.
Int iterated_sqrt_3mod4(const Int& x, unsigned n, const Int& l);

/// Sign D in {+1,-1} with gcd(D*r - 1, l) = 1; +1 preferred.
int unit_sign_choice(const Int& r, const Int& l);

// ------------------------------------------------- primality / factoring ----

enum class Primality { composite, prime, probable_prime };

/// Strong tests: deterministic below 3.3e24 (fixed witness set), 25 extra
/// rounds above that (reported probable_prime).
Primality classify_prime(const Int& n);
inline bool is_prime(const Int& n) { return classify_prime(n) != Primality::composite; }

/// Trial division then Brent-rho under a budget. Never returns an unproven
/// factor: an unfinished composite part is left in cofactor with
/// complete = false.
FactoredInteger factorize(const Int& n, const SearchCaps& caps = {});

/// Like factorize but strips known primes first (recipe outputs carry their
/// construction primes, so their curves factor exactly).
FactoredInteger factorize_with_hints(const Int& n, const std::vector<Int>& hint_primes,
                                     const SearchCaps& caps = {});

// ------------------------------------------------------- prime searches ----

struct ProgressionResult {
    enum class Status { found, no_prime_possible, budget_exhausted } status;
    Int prime;
    Int x_index;                    // prime == modulus * x_index + residue
    std::uint64_t tests_run = 0;    // primality tests after sieving
    std::uint64_t candidates = 0;   // progression terms examined
    std::uint64_t sieve_bound = 0;
    bool probable = false;
};

/// First prime == a (mod M) in the scan order x = 0, 1, 2, ... not in
/// `exclusions`, under the caps. Parallel candidates, lowest hit wins.
ProgressionResult prime_in_progression(const Int& M, const Int& a, const std::set<Int>& exclusions,
                                       const SearchCaps& caps = {});

/// Primes in [2, bound] (bound < 2^32 expected for sweeps).
std::vector<std::uint64_t> small_primes_up_to(std::uint64_t bound);

// ------------------------------------------------------------- helpers ----

Int pow_mod(const Int& b, const Int& e, const Int& m);
Int inv_mod(const Int& a, const Int& m);  // throws std::invalid_argument if not a unit
Int pow_ui(const Int& b, unsigned long e);

}  // namespace hf
