#pragma once

#include "hasseforge/generators.hpp"

namespace hf {

enum class SequenceFamily { mordell, fermat, generic_hyperelliptic };

/// Lazily specified curve sequence: levels are exponent schedules; only
/// levels 1..h+1 are ever materialized.
struct CurveSequence {
    SequenceFamily family = SequenceFamily::mordell;
    Int p;
    unsigned n0 = 0, n1 = 0, h = 0, eps = 0;
    Int kappa, kappa_star, chi;
    std::optional<KappaRecipe> kappa_recipe;
    std::optional<KappaChiRecipe> kappa_chi_recipe;

    struct Level {
        unsigned index;             // 1-based
        Int exponent_n;             // curve degree is 12 * exponent_n
        Int morphism_exp_to_prev;   // x -> x^e into the previous level (0 at level 1)
    };
    std::vector<Level> levels;  // levels 1..h+1

    // generic-hyperelliptic (non-DCC) data: z^2 = F(x^(m^i))
    std::vector<Int> F;
    unsigned mexp = 0;

    Int genus_at(unsigned level) const;
};

/// Mordell DCC family: level i < h has degree 12 n0^(i+1) n1, level h has
/// degree 12 n0^(h+eps) n1; kappa = 3^(4m'-1) kappa_*^(2m') for
/// m' = n0^h n1, so level h-1 keeps the rational points (+-1/(9 kappa_*), 0).
CurveSequence build_mordell_sequence(const Int& p, unsigned n0, unsigned n1, unsigned h,
                                     unsigned eps, const SearchCaps& caps = {});

/// Fermat DCC family: level i has signature 12 n0^i n1; level h-1 keeps the
/// four rational points (+-1/(9 kappa_*), +-1, 0).
CurveSequence build_fermat_sequence(const Int& p, unsigned n0, unsigned n1, unsigned h,
                                    const SearchCaps& caps = {});

/// Non-DCC control family z^2 = F(x^(m^i)) with F separable, F(0) != 0,
/// F(1) = 0: every level carries the witness (1, 0).
CurveSequence build_non_dcc(unsigned n, unsigned m, const std::vector<Int>& F,
                            unsigned levels = 4);

struct DccLevelReport {
    unsigned level;
    Int genus;
    Verdict verdict = Verdict::undecided;
    std::string evidence;                 // witness list or certificate summary
    std::vector<std::vector<Int>> witnesses;
};

struct DccReport {
    std::vector<DccLevelReport> levels;
    std::optional<CounterexampleCertificate> counterexample;  // at level h
    bool dcc_satisfied = false;
    bool morphisms_checked = false;
    std::string note;
};

/// Verifies witnesses at levels < h by exact substitution, certifies level h
/// as a counterexample, checks the morphisms carry points between adjacent
/// levels over small prime fields, and checks genus monotonicity.
DccReport verify_dcc(const CurveSequence& seq, const SearchCaps& caps = {});

}  // namespace hf
