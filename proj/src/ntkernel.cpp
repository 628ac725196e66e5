#include "hasseforge/ntkernel.hpp"

#include "hasseforge/fast64.hpp"

#include <algorithm>
#include <cstdlib>
#include <thread>

namespace hf {

SearchCaps SearchCaps::from_env() {
    SearchCaps c;
    auto rd = [](const char* name, std::uint64_t& slot) {
        if (const char* v = std::getenv(name)) slot = std::strtoull(v, nullptr, 10);
    };
    rd("HASSE_FORGE_CAP_TRIAL", c.trial_division_bound);
    rd("HASSE_FORGE_CAP_RHO", c.rho_iterations);
    rd("HASSE_FORGE_CAP_SCAN", c.progression_test_cap);
    rd("HASSE_FORGE_CAP_SPAN", c.progression_span_cap);
    rd("HASSE_FORGE_CAP_SIEVE", c.sieve_bound);
    rd("HASSE_FORGE_CAP_MODBITS", c.max_modulus_bits);
    rd("HASSE_FORGE_CAP_SCHINZEL", c.schinzel_scan_cap);
    rd("HASSE_FORGE_CAP_HENSEL", c.hensel_node_cap);
    if (const char* v = std::getenv("HASSE_FORGE_CAP_MAXN")) c.max_n = (unsigned)std::atoi(v);
    if (const char* v = std::getenv("HASSE_FORGE_JOBS")) c.jobs = (unsigned)std::atoi(v);
    return c;
}

unsigned SearchCaps::effective_jobs() const {
    if (jobs) return jobs;
    unsigned hc = std::thread::hardware_concurrency();
    return hc ? hc : 1;
}

Int FactoredInteger::remultiply() const {
    Int acc = sign;
    for (const auto& pp : factors) {
        Int q;
        mpz_pow_ui(q.get_mpz_t(), pp.prime.get_mpz_t(), pp.exponent);
        acc *= q;
    }
    return acc * cofactor;
}

std::vector<Int> FactoredInteger::odd_primes_excluding(const std::vector<Int>& excluded) const {
    std::vector<Int> out;
    for (const auto& pp : factors) {
        if (pp.prime == 2) continue;
        if (std::find(excluded.begin(), excluded.end(), pp.prime) != excluded.end()) continue;
        out.push_back(pp.prime);
    }
    return out;
}

Int PadicApprox::modulus() const {
    Int m;
    mpz_pow_ui(m.get_mpz_t(), prime.get_mpz_t(), precision);
    return m;
}

Int pow_mod(const Int& b, const Int& e, const Int& m) {
    Int r;
    mpz_powm(r.get_mpz_t(), b.get_mpz_t(), e.get_mpz_t(), m.get_mpz_t());
    return r;
}

Int pow_ui(const Int& b, unsigned long e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
    return r;
}

Int inv_mod(const Int& a, const Int& m) {
    Int r;
    if (!mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()))
        throw std::invalid_argument("inv_mod: " + a.get_str() + " is not a unit mod " + m.get_str());
    return r;
}

int jacobi_symbol(const Int& a, const Int& m) {
    if (m <= 0 || mpz_even_p(m.get_mpz_t()))
        throw std::invalid_argument("jacobi_symbol: modulus must be odd and positive");
    return mpz_jacobi(a.get_mpz_t(), m.get_mpz_t());
}

unsigned valuation(const Int& n, const Int& l) {
    if (n == 0) throw std::invalid_argument("valuation: v_l(0) is infinite");
    Int q;
    return (unsigned)mpz_remove(q.get_mpz_t(), n.get_mpz_t(), l.get_mpz_t());
}

std::optional<Congruence> crt_solve(const CongruenceSystem& sys) {
    Int r = 0, m = 1;
    for (const auto& c : sys.items) {
        if (c.modulus <= 0) throw std::invalid_argument("crt_solve: modulus must be positive");
        Int g, s, t;
        mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), m.get_mpz_t(),
                   c.modulus.get_mpz_t());
        Int diff = c.residue - r;
        if (diff % g != 0) return std::nullopt;  // inconsistent pair
        Int lcm = m / g * c.modulus;
        // r' = r + m * s * (diff/g) mod lcm
        Int step = (diff / g) % (c.modulus / g);
        r = (r + m * ((s * step) % (c.modulus / g))) % lcm;
        if (r < 0) r += lcm;
        m = lcm;
    }
    return Congruence{m, r};
}

namespace {

// Tonelli-Shanks over Z/l for odd prime l; a a nonzero residue.
std::optional<Int> sqrt_mod_odd_prime(const Int& a, const Int& l) {
    if (jacobi_symbol(a, l) != 1) return std::nullopt;
    if (mpz_tstbit(l.get_mpz_t(), 1)) {  // l == 3 (mod 4)
        Int e = (l + 1) / 4;
        return pow_mod(a, e, l);
    }
    Int q = l - 1;
    unsigned s = 0;
    while (mpz_even_p(q.get_mpz_t())) {
        q /= 2;
        ++s;
    }
    Int z = 2;
    while (jacobi_symbol(z, l) != -1) ++z;
    Int c = pow_mod(z, q, l);
    Int x = pow_mod(a, (q + 1) / 2, l);
    Int t = pow_mod(a, q, l);
    unsigned m = s;
    while (t != 1) {
        Int tt = t;
        unsigned i = 0;
        while (tt != 1) {
            tt = tt * tt % l;
            ++i;
        }
        Int b = c;
        for (unsigned j = 0; j + i + 1 < m; ++j) b = b * b % l;
        x = x * b % l;
        c = b * b % l;
        t = t * c % l;
        m = i;
    }
    return x;
}

}  // namespace

std::optional<PadicApprox> sqrt_mod_prime_power(const Int& a, const Int& l, unsigned k) {
    if (k == 0) throw std::invalid_argument("sqrt_mod_prime_power: k must be positive");
    Int lk;
    mpz_pow_ui(lk.get_mpz_t(), l.get_mpz_t(), k);
    Int am = a % lk;
    if (am < 0) am += lk;
    if (am % l == 0)
        throw std::invalid_argument("sqrt_mod_prime_power: a divisible by l, reduce first");

    if (l == 2) {
        // unit squares in Z_2: a == 1 (mod 8); mod 2 / mod 4 are the truncations
        if (k == 1) return PadicApprox{l, 1, Int(1)};
        if (k == 2) {
            if (am % 4 != 1) return std::nullopt;
            return PadicApprox{l, 2, Int(1)};
        }
        if (am % 8 != 1) return std::nullopt;
        Int r = 1;  // r^2 == a (mod 2^3)
        for (unsigned j = 3; j < k; ++j) {
            Int mod_next = Int(1) << (j + 1);
            if ((r * r - am) % mod_next != 0) r += Int(1) << (j - 1);
        }
        r %= lk;
        return PadicApprox{l, k, r};
    }

    auto r0 = sqrt_mod_odd_prime(am % l, l);
    if (!r0) return std::nullopt;
    // Newton lift, doubling precision
    Int r = *r0;
    unsigned prec = 1;
    while (prec < k) {
        unsigned next = std::min(2 * prec, k);
        Int mod;
        mpz_pow_ui(mod.get_mpz_t(), l.get_mpz_t(), next);
        Int inv2r = inv_mod(2 * r % mod, mod);
        r = (r - (r * r - am) % mod * inv2r) % mod;
        if (r < 0) r += mod;
        prec = next;
    }
    return PadicApprox{l, k, r};
}

bool is_square_in_local_field(const Int& a, const Place& place) {
    if (a == 0) throw std::invalid_argument("is_square_in_local_field: a must be nonzero");
    if (place.infinite) return a > 0;
    const Int& l = place.l;
    unsigned v = valuation(a, l);
    if (v % 2 != 0) return false;
    Int u = a;
    for (unsigned i = 0; i < v; ++i) u /= l;
    if (l == 2) {
        Int m = u % 8;
        if (m < 0) m += 8;
        return m == 1;
    }
    return jacobi_symbol(u, l) == 1;
}

int hilbert_symbol(const Int& a, const Int& b, const Place& place) {
    if (a == 0 || b == 0) throw std::invalid_argument("hilbert_symbol: arguments must be nonzero");
    if (place.infinite) return (a < 0 && b < 0) ? -1 : 1;
    const Int& l = place.l;
    unsigned alpha = valuation(a, l), beta = valuation(b, l);
    Int u = a, w = b;
    for (unsigned i = 0; i < alpha; ++i) u /= l;
    for (unsigned i = 0; i < beta; ++i) w /= l;
    auto bit = [](const Int& x, const Int& mod, const Int& hit) {
        Int m = x % mod;
        if (m < 0) m += mod;
        return m == hit ? 1 : 0;
    };
    if (l == 2) {
        // (-1)^{eps(u)eps(w) + alpha*omega(w) + beta*omega(u)}
        auto eps = [&](const Int& x) { return bit(x, 4, 3); };        // (x-1)/2 mod 2
        auto omega = [&](const Int& x) {                              // (x^2-1)/8 mod 2
            Int m = x % 8;
            if (m < 0) m += 8;
            return (m == 3 || m == 5) ? 1 : 0;
        };
        int e = eps(u) * eps(w) + (int)(alpha % 2) * omega(w) + (int)(beta % 2) * omega(u);
        return e % 2 ? -1 : 1;
    }
    int e = (int)(alpha % 2) * (int)(beta % 2) * bit(l, 4, 3);
    int s = e % 2 ? -1 : 1;
    if (beta % 2) s *= jacobi_symbol(u, l);
    if (alpha % 2) s *= jacobi_symbol(w, l);
    return s;
}

std::optional<Int> nth_power_residue_test(const Int& a, const Int& e, const Int& l) {
    if (e <= 0) throw std::invalid_argument("nth_power_residue_test: exponent must be positive");
    Int am = a % l;
    if (am < 0) am += l;
    if (am == 0) return Int(0);
    Int d;
    Int l1 = l - 1;
    mpz_gcd(d.get_mpz_t(), e.get_mpz_t(), l1.get_mpz_t());
    if (pow_mod(am, l1 / d, l) != 1) return std::nullopt;
    if (l < 10'000) {  // smallest witness, matched by the brute-force oracle
        for (Int w = 1; w < l; ++w)
            if (pow_mod(w, e, l) == am) return w;
        return std::nullopt;  // unreachable for residues
    }
    if (mpz_fits_ulong_p(l.get_mpz_t()) && mpz_fits_ulong_p(e.get_mpz_t())) {
        auto r = f64::nth_root_mod(am.get_ui(), e.get_ui(), l.get_ui());
        if (r == l.get_ui()) return std::nullopt;
        return Int((unsigned long)r);
    }
    // big-l fallback: reduce e by its prime factors via repeated square/cube
    // roots is not needed anywhere in the pipeline; report absence of witness
    throw std::invalid_argument("nth_power_residue_test: modulus too large for witness search");
}

bool universal_power_prime(const Int& s, const Int& q) {
    if (s <= 0 || mpz_even_p(s.get_mpz_t()))
        throw std::invalid_argument("universal_power_prime: s must be odd positive");
    if (!is_prime(q) || q == 2)
        throw std::invalid_argument("universal_power_prime: q must be an odd prime");
    Int g;
    Int q1 = q - 1;
    mpz_gcd(g.get_mpz_t(), s.get_mpz_t(), q1.get_mpz_t());
    return g == 1;
}

bool universal_power_linear_form(const Int& s, const Int& r, const Int& S) {
    Int g;
    Int r1 = r - 1;
    mpz_gcd(g.get_mpz_t(), r1.get_mpz_t(), s.get_mpz_t());
    if (g != 1) return false;
    Int q = s * S + r;
    return q > 2 && mpz_odd_p(q.get_mpz_t()) && is_prime(q);
}

Int iterated_sqrt_3mod4(const Int& x, unsigned n, const Int& l) {
    if (n == 0) throw std::invalid_argument("iterated_sqrt_3mod4: n must be positive");
    Int lm4 = l % 4;
    if (lm4 != 3) throw std::invalid_argument("iterated_sqrt_3mod4: l must be 3 mod 4");
    Int xm = x % l;
    if (xm < 0) xm += l;
    if (xm == 0 || jacobi_symbol(xm, l) != 1)
        throw std::invalid_argument("iterated_sqrt_3mod4: x must be a nonzero square mod l");
    Int cur = xm;
    Int e = (l + 1) / 4;
    for (unsigned i = 1; i <= n; ++i) {
        Int h = cur;
        if (i > 1 && jacobi_symbol(h, l) != 1) h = (l - h) % l;  // -h is then a square
        Int r = pow_mod(h, e, l);
        Int other = l - r;
        cur = r < other ? r : other;  // canonical root
    }
    return cur;
}

int unit_sign_choice(const Int& r, const Int& l) {
    Int g;
    mpz_gcd(g.get_mpz_t(), r.get_mpz_t(), l.get_mpz_t());
    if (g != 1) throw std::invalid_argument("unit_sign_choice: gcd(r, l) must be 1");
    Int a = r - 1;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), l.get_mpz_t());
    if (g == 1) return 1;
    return -1;  // gcd(-r-1, l) = 1 is then guaranteed for odd prime l
}

}  // namespace hf
