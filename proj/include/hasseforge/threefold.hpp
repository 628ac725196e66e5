#pragma once

#include "hasseforge/ntkernel.hpp"

namespace hf {

/// Integer representative (A : B : C : D : E : F : G) of a point of the
/// threefold X_p in P^6. Stored unreduced; gcd-normalization is separate.
struct Septuple {
    Int A, B, C, D, E, F, G;

    bool any_nonzero() const {
        return A != 0 || B != 0 || C != 0 || D != 0 || E != 0 || F != 0 || G != 0;
    }
    std::vector<Int> coords() const { return {A, B, C, D, E, F, G}; }
};

/// Do the three quadrics b^2 - c^2 + 2pef, 2ab - 2cd + pf^2, a^2 - d^2 + pg^2
/// vanish exactly?
bool on_threefold(const Int& p, const Septuple& s);

struct FamilyOneParams {
    Int p;
    Int alpha = 1, beta = 1, kappa;
};

/// The (alpha, beta, kappa) parameterization:
///   A = (p a^2 - 9 b^2)/2,  B = 18 k^2 A,  C = 18 k^2 D,
///   D = (p a^2 + 9 b^2)/2,  E = 81 a b k^3,  F = 18 a b k,  G = 3 a b.
/// Throws when p*alpha^2 - 9*beta^2 is odd.
Septuple family_one(const FamilyOneParams& params);

struct FamilyOneReport {
    ConditionReport B1, B2, B3, B4, B5;
    bool all_pass() const;
    bool decided() const;
};

FamilyOneReport check_family_one_conditions(const Int& p, unsigned n, const FamilyOneParams& params,
                                            const std::vector<Int>& hint_primes = {},
                                            const SearchCaps& caps = {});

/// Intermediates of the second parameterization, kept so certificates can
/// replay the construction.
struct FamilyTwoProvenance {
    Int eps_star, delta_star, s_star;
    Int t1, t2, t3, t4, t5;
    Int pi;
    unsigned u = 0;
    Int F1;
    Int H;
    Int P2_star, R2_star, Q1_star;
    Int mu1;
    Int E1, E2;            // halves of the E-factorization polynomials
    Int E1_odd, E2_odd;    // odd parts actually certified prime
    unsigned E1_two_val = 0, E2_two_val = 0;
    bool schinzel_path = false;
};

struct FamilyTwoParams {
    Int p;
    Int lambda = 1, gamma = 1;
    Int eps0, delta0;
    Int mu, t0, F0;
    std::optional<FamilyTwoProvenance> provenance;
};

/// The second parameterization (Bezout data p*l^2*e0 + 9*g^2*d0 = 1 required):
///   A = (p l^2 - 9 g^2)/2, D = (p l^2 + 9 g^2)/2, G = 3 l g, F = 2 F0,
///   B = 2 p F0^2 (d0 - e0 - 2 mu D) + 2 D t0 F0,
///   C = 2 p F0^2 (d0 + e0 - 2 mu A) + 2 A t0 F0,
///   E = F0 (2 p F0 (e0 + 9 mu g^2) - 9 g^2 t0)(2 F0 (d0 - p mu l^2) + l^2 t0).
Septuple family_two(const FamilyTwoParams& params);

}  // namespace hf
