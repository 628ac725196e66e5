#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace hf {

using Int = mpz_class;
using Rat = mpq_class;

/// A place of Q: a finite prime or the real place.
struct Place {
    bool infinite = false;
    Int l;  // prime when finite

    static Place infinity() { return Place{true, Int(0)}; }
    static Place at(Int prime) { return Place{false, std::move(prime)}; }
    static Place at(long prime) { return Place{false, Int(prime)}; }

    bool operator==(const Place& o) const {
        return infinite == o.infinite && (infinite || l == o.l);
    }
    // finite places first, ordered by prime; infinity last
    bool operator<(const Place& o) const {
        if (infinite != o.infinite) return !infinite;
        if (infinite) return false;
        return l < o.l;
    }
    std::string str() const { return infinite ? "inf" : l.get_str(); }
};

struct budget_error : std::runtime_error {
    std::string stage;
    std::uint64_t work_done = 0;
    budget_error(std::string stage_, std::string msg, std::uint64_t done = 0)
        : std::runtime_error(msg), stage(std::move(stage_)), work_done(done) {}
};

struct incomplete_factorization_error : std::runtime_error {
    Int cofactor;
    incomplete_factorization_error(std::string msg, Int cof)
        : std::runtime_error(std::move(msg)), cofactor(std::move(cof)) {}
};

struct precision_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// raised when a construction the arguments should guarantee fails (parameter bug)
struct contradiction_error : std::logic_error {
    using std::logic_error::logic_error;
};

/// Search budgets and tunables. Every bounded scan in the library draws its
/// limits from here; env vars HASSE_FORGE_CAP_* override the defaults.
struct SearchCaps {
    std::uint64_t trial_division_bound = 1'000'000;
    std::uint64_t rho_iterations = 4'000'000;
    // number of post-sieve primality tests a progression scan may run
    std::uint64_t progression_test_cap = 200'000;
    // candidates (sieved or not) a progression scan may touch
    std::uint64_t progression_span_cap = 400'000'000;
    std::uint64_t sieve_bound = 100'000'000;
    // refuse CRT constructions whose modulus would exceed this many bits
    std::uint64_t max_modulus_bits = 50'000;
    std::uint64_t schinzel_scan_cap = 100'000;
    std::uint64_t hensel_node_cap = 2'000'000;
    unsigned max_n = 8;  // generator guard; DCC builders raise it to fit their schedule
    unsigned brauer_samples = 5;
    unsigned brauer_places = 3;
    // reduced-scale testing only: when nonzero, replaces the Fermat-side
    // G*-set bound in gen_kappa_chi/check_D; recorded in every artifact
    std::uint64_t gstar_bound_override = 0;
    unsigned jobs = 0;  // 0 = hardware concurrency
    std::uint64_t seed = 0;

    static SearchCaps from_env();
    unsigned effective_jobs() const;
};

enum class Cond { pass, fail, undecided, not_applicable };

struct ConditionReport {
    Cond verdict = Cond::pass;
    std::string note;       // witness / counter-witness, human-readable
    std::vector<Int> data;  // offending primes, witnesses, ...
    bool ok() const { return verdict == Cond::pass || verdict == Cond::not_applicable; }
};

inline const char* cond_name(Cond c) {
    switch (c) {
        case Cond::pass: return "pass";
        case Cond::fail: return "fail";
        case Cond::undecided: return "undecided";
        default: return "not-applicable";
    }
}

}  // namespace hf
