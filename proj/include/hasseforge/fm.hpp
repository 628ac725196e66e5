#pragma once

#include "hasseforge/threefold.hpp"

namespace hf {

/// Couple (p, n): p prime with p == 1 (mod 8), n >= 1.
struct FmContext {
    Int p;
    unsigned n;

    FmContext(Int p_, unsigned n_) : p(std::move(p_)), n(n_) {
        if (n == 0) throw std::invalid_argument("FmContext: n must be positive");
        if (p % 8 != 1 || !is_prime(p))
            throw std::invalid_argument("FmContext: p must be a prime == 1 (mod 8)");
    }
};

struct FmReport {
    ConditionReport A1, A2, A3, A4, A5, A6, A7;
    std::optional<Int> a5_witness;
    Cond overall = Cond::pass;

    const ConditionReport& at(int i) const {
        const ConditionReport* all[] = {&A1, &A2, &A3, &A4, &A5, &A6, &A7};
        return *all[i - 1];
    }
    bool pass() const { return overall == Cond::pass; }
};

/// Smallest H in [1, p-1] with E*H^6 == G (mod p) and A + zeta*B*H^4 a
/// quadratic non-residue mod p for every cube root of unity zeta.
/// The zeta set is {1} when p == 2 (mod 3). O(p) search.
std::optional<Int> find_a5_witness(const FmContext& ctx, const Septuple& s);

/// Hypothesis FM verifier (conditions A1-A7). A2 and A4 need complete
/// factorizations; pass construction primes through hint_primes where known.
/// A6/A7 apply only when 3 is a quadratic non-residue mod p.
FmReport verify_fm(const FmContext& ctx, const Septuple& s,
                   const std::vector<Int>& hint_primes = {}, const SearchCaps& caps = {});

}  // namespace hf
