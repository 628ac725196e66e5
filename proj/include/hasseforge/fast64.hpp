#pragma once

// 64-bit modular kernel for the prime sweeps and brute-force oracles.
// Moduli are assumed < 2^62; primes are odd unless stated.

#include <cstdint>
#include <numeric>
#include <utility>
#include <vector>

namespace hf::f64 {

using u32 = std::uint32_t;
using u64 = std::uint64_t;
using u128 = unsigned __int128;

inline u64 mulmod(u64 a, u64 b, u64 m) { return (u128)a * b % m; }

inline u64 powmod(u64 b, u64 e, u64 m) {
    u64 r = 1 % m;
    b %= m;
    while (e) {
        if (e & 1) r = mulmod(r, b, m);
        b = mulmod(b, b, m);
        e >>= 1;
    }
    return r;
}

/// Inverse of a mod m for gcd(a, m) = 1 (m need not be prime).
inline u64 invmod_any(u64 a, u64 m) {
    long long x0 = 1, x1 = 0;
    long long r0 = (long long)(a % m), r1 = (long long)m;
    while (r1) {
        long long q = r0 / r1;
        r0 -= q * r1;
        std::swap(r0, r1);
        x0 -= q * x1;
        std::swap(x0, x1);
    }
    long long inv = x0 % (long long)m;
    if (inv < 0) inv += (long long)m;
    return (u64)inv;
}

inline u64 invmod(u64 a, u64 p) { return powmod(a % p, p - 2, p); }  // p prime

inline int jacobi(long long a, u64 n) {  // n odd positive
    a %= (long long)n;
    if (a < 0) a += (long long)n;
    u64 x = (u64)a;
    int j = 1;
    while (x) {
        while ((x & 1) == 0) {
            x >>= 1;
            u64 r = n & 7;
            if (r == 3 || r == 5) j = -j;
        }
        std::swap(x, n);
        if ((x & 3) == 3 && (n & 3) == 3) j = -j;
        x %= n;
    }
    return n == 1 ? j : 0;
}

inline bool is_prime(u64 n) {
    if (n < 2) return false;
    for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull})
        if (n % p == 0) return n == p;
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) d >>= 1, ++s;
    // deterministic below 3.3e24 with these witnesses
    for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        u64 x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool comp = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                comp = false;
                break;
            }
        }
        if (comp) return false;
    }
    return true;
}

/// Square root mod odd prime l (Tonelli-Shanks). Returns l when a is a non-residue.
inline u64 sqrt_mod(u64 a, u64 l) {
    a %= l;
    if (a == 0) return 0;
    if (jacobi((long long)a, l) != 1) return l;
    if ((l & 3) == 3) return powmod(a, (l + 1) / 4, l);
    u64 q = l - 1;
    int s = 0;
    while ((q & 1) == 0) q >>= 1, ++s;
    u64 z = 2;
    while (jacobi((long long)z, l) != -1) ++z;
    u64 c = powmod(z, q, l);
    u64 x = powmod(a, (q + 1) / 2, l);
    u64 t = powmod(a, q, l);
    int m = s;
    while (t != 1) {
        u64 tt = t;
        int i = 0;
        while (tt != 1) {
            tt = mulmod(tt, tt, l);
            ++i;
        }
        u64 b = c;
        for (int j = 0; j < m - i - 1; ++j) b = mulmod(b, b, l);
        x = mulmod(x, b, l);
        c = mulmod(b, b, l);
        t = mulmod(t, c, l);
        m = i;
    }
    return x;
}

/// r-th root mod prime l for prime r (Adleman-Manders-Miller).
/// Returns l when a is not an r-th power residue.
inline u64 prime_root_mod(u64 a, u64 r, u64 l) {
    a %= l;
    if (a == 0) return 0;
    const u64 n1 = l - 1;
    if (n1 % r != 0) return powmod(a, invmod_any(r % n1, n1), l);  // bijection
    u64 s = n1;
    int t = 0;
    while (s % r == 0) {
        s /= r;
        ++t;
    }
    if (powmod(a, n1 / r, l) != 1) return l;
    u64 u = 2;
    while (powmod(u, n1 / r, l) == 1) ++u;
    const u64 g = powmod(u, s, l);  // generates the r-Sylow subgroup, order r^t
    u64 x = 1;
    if (s > 1) x = powmod(a, invmod_any(r % s, s), l);
    // T := a / x^r lies in the Sylow subgroup; extract its r-th root via
    // base-r discrete-log digits (digit brute force: r is small)
    u64 T = mulmod(a, invmod(powmod(x, r, l), l), l);
    const u64 gi = invmod(g, l);
    const u64 base = [&] {
        u64 b = g;
        for (int j = 0; j < t - 1; ++j) b = powmod(b, r, l);
        return b;  // order exactly r
    }();
    u64 dT = 0, rpow = 1, cur = T;
    for (int i = 0; i < t; ++i) {
        u64 w = cur;
        for (int j = 0; j < t - 1 - i; ++j) w = powmod(w, r, l);
        u64 acc = 1, digit = 0;
        while (acc != w) {
            acc = mulmod(acc, base, l);
            if (++digit >= r) return l;  // cannot happen for residues
        }
        dT += digit * rpow;
        cur = mulmod(cur, powmod(gi, digit * rpow, l), l);
        rpow *= r;
    }
    if (dT % r != 0) return l;
    return mulmod(x, powmod(g, dT / r, l), l);
}

/// Any root x^e == a (mod l), e >= 1, l odd prime. Returns l if none exists.
inline u64 nth_root_mod(u64 a, u64 e, u64 l) {
    a %= l;
    if (a == 0) return 0;
    if (powmod(a, (l - 1) / std::gcd(e, l - 1), l) != 1) return l;
    u64 x = a, rem = e;
    for (u64 r = 2; r * r <= rem; ++r)
        while (rem % r == 0) {
            x = prime_root_mod(x, r, l);
            if (x == l) return l;
            rem /= r;
        }
    if (rem > 1) x = prime_root_mod(x, rem, l);
    return x;
}

/// Is nonzero a an e-th power residue mod l?
inline bool is_power_residue(u64 a, u64 e, u64 l) {
    return powmod(a % l, (l - 1) / std::gcd(e, l - 1), l) == 1;
}

inline std::vector<u64> sieve_primes(u64 bound) {
    std::vector<u64> out;
    if (bound < 2) return out;
    std::vector<bool> comp(bound + 1, false);
    for (u64 i = 2; i * i <= bound; ++i)
        if (!comp[i])
            for (u64 j = i * i; j <= bound; j += i) comp[j] = true;
    for (u64 i = 2; i <= bound; ++i)
        if (!comp[i]) out.push_back(i);
    return out;
}

}  // namespace hf::f64
