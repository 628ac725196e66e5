#include <algorithm>
#include <atomic>
#include <thread>

#include "hasseforge/fast64.hpp"
#include "hasseforge/ntkernel.hpp"

namespace hf {

namespace {

// n < 3.317e24 is decided exactly by the first twelve prime bases
const Int kDeterministicBound("3317044064679887385961981");

bool miller_rabin_round(const Int& n, const Int& a, const Int& d, unsigned s) {
    Int x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) return true;
    for (unsigned i = 1; i < s; ++i) {
        x = x * x % n;
        if (x == n - 1) return true;
    }
    return false;
}

}  // namespace

Primality classify_prime(const Int& n) {
    if (n < 2) return Primality::composite;
    static const unsigned long small[] = {2,  3,  5,  7,  11, 13, 17, 19, 23, 29, 31, 37,
                                          41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97};
    for (unsigned long p : small) {
        if (mpz_divisible_ui_p(n.get_mpz_t(), p))
            return n == p ? Primality::prime : Primality::composite;
    }
    Int d = n - 1;
    unsigned s = 0;
    while (mpz_even_p(d.get_mpz_t())) {
        d /= 2;
        ++s;
    }
    for (unsigned long a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        if (!miller_rabin_round(n, Int(a), d, s)) return Primality::composite;
    }
    if (n < kDeterministicBound) return Primality::prime;
    // extra rounds with fixed-seed bases; verdict stays "probable"
    gmp_randclass rng(gmp_randinit_mt);
    rng.seed(0xC0FFEEUL);
    for (int i = 0; i < 25; ++i) {
        Int a = rng.get_z_range(n - 3) + 2;
        if (!miller_rabin_round(n, a, d, s)) return Primality::composite;
    }
    return Primality::probable_prime;
}

namespace {

Int brent_rho(const Int& n, unsigned long c0, std::uint64_t budget) {
    Int y = 2, c = c0, g = 1, q = 1, x, ys;
    std::uint64_t r = 1, m = 128, steps = 0;
    while (g == 1) {
        x = y;
        for (std::uint64_t i = 0; i < r; ++i) y = (y * y + c) % n;
        std::uint64_t k = 0;
        while (k < r && g == 1) {
            ys = y;
            std::uint64_t lim = std::min(m, r - k);
            for (std::uint64_t i = 0; i < lim; ++i) {
                y = (y * y + c) % n;
                q = q * abs(x - y) % n;
            }
            mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
            k += m;
            steps += lim;
            if (steps > budget) return 0;
        }
        r *= 2;
    }
    if (g == n) {
        g = 1;
        while (g == 1) {
            ys = (ys * ys + c) % n;
            mpz_gcd(g.get_mpz_t(), Int(abs(x - ys)).get_mpz_t(), n.get_mpz_t());
            if (++steps > budget) return 0;
        }
    }
    return g == n ? Int(0) : g;
}

void insert_factor(std::vector<PrimePower>& fs, const Int& p, unsigned e, bool probable) {
    for (auto& pp : fs)
        if (pp.prime == p) {
            pp.exponent += e;
            return;
        }
    fs.push_back({p, e, probable});
}

void factor_rec(const Int& n, std::vector<PrimePower>& fs, std::vector<Int>& stuck,
                const SearchCaps& caps, int depth) {
    if (n == 1) return;
    Primality pr = classify_prime(n);
    if (pr != Primality::composite) {
        insert_factor(fs, n, 1, pr == Primality::probable_prime);
        return;
    }
    if (mpz_perfect_square_p(n.get_mpz_t())) {
        Int r = sqrt(n);
        factor_rec(r, fs, stuck, caps, depth + 1);
        factor_rec(r, fs, stuck, caps, depth + 1);
        return;
    }
    Int f = 0;
    for (unsigned long c = 1; c <= 8 && f == 0; ++c) f = brent_rho(n, c, caps.rho_iterations);
    if (f == 0 || depth > 64) {
        stuck.push_back(n);
        return;
    }
    factor_rec(f, fs, stuck, caps, depth + 1);
    factor_rec(n / f, fs, stuck, caps, depth + 1);
}

}  // namespace

FactoredInteger factorize(const Int& n, const SearchCaps& caps) {
    return factorize_with_hints(n, {}, caps);
}

FactoredInteger factorize_with_hints(const Int& n, const std::vector<Int>& hint_primes,
                                     const SearchCaps& caps) {
    if (n == 0) throw std::invalid_argument("factorize: n must be nonzero");
    FactoredInteger out;
    out.value = n;
    out.sign = n < 0 ? -1 : 1;
    Int rest = abs(n);

    for (const Int& h : hint_primes) {
        if (h < 2 || rest % h != 0) continue;
        Primality pr = classify_prime(h);
        if (pr == Primality::composite) continue;  // bad hint, ignore
        Int q;
        unsigned e = (unsigned)mpz_remove(q.get_mpz_t(), rest.get_mpz_t(), h.get_mpz_t());
        rest = q;
        insert_factor(out.factors, h, e, pr == Primality::probable_prime);
    }

    if (rest > 1) {
        std::uint64_t bound = caps.trial_division_bound;
        for (std::uint64_t p = 2; p <= bound && rest > 1; p = (p == 2 ? 3 : p + 2)) {
            if (p * p > rest) break;
            if (!mpz_divisible_ui_p(rest.get_mpz_t(), p)) continue;
            Int q;
            unsigned e = (unsigned)mpz_remove(q.get_mpz_t(), rest.get_mpz_t(), Int((unsigned long)p).get_mpz_t());
            rest = q;
            insert_factor(out.factors, Int((unsigned long)p), e, false);
        }
        if (rest > 1) {
            std::vector<Int> stuck;
            factor_rec(rest, out.factors, stuck, caps, 0);
            if (!stuck.empty()) {
                out.complete = false;
                out.cofactor = 1;
                for (const Int& s : stuck) out.cofactor *= s;
            }
        }
    }

    std::sort(out.factors.begin(), out.factors.end(),
              [](const PrimePower& a, const PrimePower& b) { return a.prime < b.prime; });
    return out;
}

std::vector<std::uint64_t> small_primes_up_to(std::uint64_t bound) {
    return f64::sieve_primes(bound);
}

namespace {

// X-indices in [lo, hi) surviving the small-prime sieve, increasing.
struct CandidateSieve {
    std::vector<std::uint64_t> q, x0, except_x;  // value M x + a0 == q itself stays

    CandidateSieve(const Int& M, const Int& a0, std::uint64_t bound) {
        auto primes = small_primes_up_to(bound);
        q.reserve(primes.size());
        x0.reserve(primes.size());
        except_x.reserve(primes.size());
        for (std::uint64_t p : primes) {
            std::uint64_t mq = mpz_fdiv_ui(M.get_mpz_t(), p);
            if (mq == 0) continue;
            std::uint64_t aq = mpz_fdiv_ui(a0.get_mpz_t(), p);
            q.push_back(p);
            x0.push_back(f64::mulmod((p - aq) % p, f64::invmod_any(mq, p), p));
            std::uint64_t except = UINT64_MAX;
            Int diff = Int((unsigned long)p) - a0;
            if (diff >= 0 && diff % M == 0) {
                Int e = diff / M;
                if (mpz_fits_ulong_p(e.get_mpz_t())) except = e.get_ui();
            }
            except_x.push_back(except);
        }
    }

    void collect(std::uint64_t lo, std::uint64_t hi, std::vector<std::uint64_t>& out) const {
        std::vector<char> comp(hi - lo, 0);
        for (size_t i = 0; i < q.size(); ++i) {
            std::uint64_t p = q[i], first = x0[i];
            if (first < lo) first += ((lo - first) + p - 1) / p * p;
            for (std::uint64_t x = first; x < hi; x += p)
                if (x != except_x[i]) comp[x - lo] = 1;
        }
        for (std::uint64_t x = lo; x < hi; ++x)
            if (!comp[x - lo]) out.push_back(x);
    }
};

}  // namespace

ProgressionResult prime_in_progression(const Int& M, const Int& a, const std::set<Int>& exclusions,
                                       const SearchCaps& caps) {
    if (M <= 0) throw std::invalid_argument("prime_in_progression: modulus must be positive");
    Int a0 = a % M;
    if (a0 < 0) a0 += M;

    ProgressionResult res;
    res.status = ProgressionResult::Status::budget_exhausted;

    Int g;
    mpz_gcd(g.get_mpz_t(), a0.get_mpz_t(), M.get_mpz_t());
    if (g > 1) {
        // every term is divisible by g; only the term equal to g can be prime
        if (a0 == g && is_prime(g) && !exclusions.count(g)) {
            res.status = ProgressionResult::Status::found;
            res.prime = g;
            res.x_index = 0;
            res.probable = classify_prime(g) == Primality::probable_prime;
            return res;
        }
        res.status = ProgressionResult::Status::no_prime_possible;
        return res;
    }

    std::uint64_t sieve_bound = caps.sieve_bound;
    std::uint64_t mod_bits = mpz_sizeinbase(M.get_mpz_t(), 2);
    if (mod_bits < 1'000)
        sieve_bound = std::min<std::uint64_t>(sieve_bound, 100'000);
    else if (mod_bits < 10'000)
        sieve_bound = std::min<std::uint64_t>(sieve_bound, 2'000'000);
    res.sieve_bound = sieve_bound;
    CandidateSieve sieve(M, a0, sieve_bound);

    const unsigned jobs = caps.effective_jobs();
    const std::uint64_t window = 1 << 16;
    std::uint64_t lo = 0, tests_used = 0;
    std::vector<std::uint64_t> cands;

    // deterministic: candidates are materialized in index order and the test
    // budget is applied as a prefix, so the tested set never depends on timing
    while (lo < caps.progression_span_cap && tests_used < caps.progression_test_cap) {
        std::uint64_t hi = std::min(lo + window, caps.progression_span_cap);
        cands.clear();
        sieve.collect(lo, hi, cands);
        lo = hi;
        if (cands.empty()) continue;
        if (tests_used + cands.size() > caps.progression_test_cap)
            cands.resize(caps.progression_test_cap - tests_used);

        const size_t chunk = std::max<size_t>(2 * jobs, 4);
        for (size_t base = 0; base < cands.size(); base += chunk) {
            size_t end = std::min(base + chunk, cands.size());
            tests_used += end - base;
            std::vector<Primality> verdicts(end - base, Primality::composite);
            std::atomic<size_t> next{base};
            auto worker = [&] {
                for (;;) {
                    size_t i = next.fetch_add(1);
                    if (i >= end) return;
                    Int cand = M * Int((unsigned long)cands[i]) + a0;
                    if (cand < 2 || (mpz_even_p(cand.get_mpz_t()) && cand != 2)) continue;
                    if (cand != 2 && pow_mod(Int(2), cand - 1, cand) != 1) continue;
                    verdicts[i - base] = classify_prime(cand);
                }
            };
            std::vector<std::thread> pool;
            for (unsigned t = 1; t < jobs; ++t) pool.emplace_back(worker);
            worker();
            for (auto& th : pool) th.join();

            for (size_t i = base; i < end; ++i) {
                if (verdicts[i - base] == Primality::composite) continue;
                Int cand = M * Int((unsigned long)cands[i]) + a0;
                if (exclusions.count(cand)) continue;
                res.status = ProgressionResult::Status::found;
                res.prime = cand;
                res.x_index = Int((unsigned long)cands[i]);
                res.probable = (verdicts[i - base] == Primality::probable_prime);
                res.tests_run = tests_used;
                res.candidates = hi;
                return res;
            }
        }
    }
    res.tests_run = tests_used;
    res.candidates = lo;
    return res;
}

}  // namespace hf
