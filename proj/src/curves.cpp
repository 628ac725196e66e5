#include "hasseforge/curves.hpp"

#include <algorithm>
#include <set>

#include "hasseforge/fast64.hpp"

namespace hf {

MordellCurve MordellCurve::kappa_form(Int p, unsigned n, Int kappa) {
    MordellCurve c;
    c.p = std::move(p);
    c.n = n;
    c.kappa = kappa;
    c.E = 27 * kappa * kappa * kappa;
    c.G = 1;
    return c;
}

FermatCurve FermatCurve::family_form(Int p, unsigned n, Int kappa, Int chi) {
    FermatCurve c;
    Int k3 = kappa * kappa * kappa;
    c.cx = 729 * k3 * k3;  // 3^6 kappa^6
    c.cy = -1;
    c.cz = -p * chi * chi;
    c.m = 12 * n;
    c.family = FermatCurve::FamilyTag{std::move(p), n, std::move(kappa), std::move(chi)};
    return c;
}

Int HyperellipticCurve::eval(const Int& x) const {
    Int acc = 0;
    for (auto it = f.rbegin(); it != f.rend(); ++it) acc = acc * x + *it;
    return acc;
}

unsigned HyperellipticCurve::degree() const {
    for (size_t i = f.size(); i-- > 0;)
        if (f[i] != 0) return (unsigned)i;
    return 0;
}

Int genus(const MordellCurve& c) {
    if (c.n == 0 || c.E == 0 || c.G == 0) throw std::invalid_argument("genus: degenerate curve");
    return Int(6ul * c.n - 1);
}

Int genus(const FermatCurve& c) {
    if (c.m < 3 || c.cx == 0 || c.cy == 0 || c.cz == 0)
        throw std::invalid_argument("genus: degenerate curve");
    return Int((unsigned long)(c.m - 1)) * (c.m - 2) / 2;
}

Int genus(const HyperellipticCurve& c) {
    unsigned d = c.degree();
    if (d < 3) return 0;
    return Int((d - 1) / 2);
}

const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::solvable: return "solvable";
        case Verdict::unsolvable: return "unsolvable";
        default: return "undecided";
    }
}

const char* method_name(Method m) {
    switch (m) {
        case Method::hensel_witness: return "hensel-witness";
        case Method::explicit_point: return "explicit-point";
        case Method::hasse_weil: return "hasse-weil";
        case Method::real_analysis: return "real-analysis";
        case Method::exhaustive_refutation: return "exhaustive-refutation";
        default: return "none";
    }
}

namespace {

void add_primes_of(std::set<Int>& out, const Int& v, const std::vector<Int>& hints,
                   const SearchCaps& caps, const char* what) {
    if (v == 0) throw std::invalid_argument(std::string("bad_primes: zero ") + what);
    if (v == 1 || v == -1) return;
    FactoredInteger f = factorize_with_hints(v, hints, caps);
    if (!f.complete)
        throw incomplete_factorization_error(
            std::string("bad_primes: could not finish factoring ") + what, f.cofactor);
    for (const auto& pp : f.factors) out.insert(pp.prime);
}

}  // namespace

std::vector<Int> bad_primes(const MordellCurve& c, const std::vector<Int>& hints,
                            const SearchCaps& caps) {
    std::set<Int> out{Int(2), Int(3), c.p};
    if (c.kappa) {
        add_primes_of(out, *c.kappa, hints, caps, "kappa");
    } else {
        add_primes_of(out, c.E, hints, caps, "E");
        add_primes_of(out, c.G, hints, caps, "G");
    }
    add_primes_of(out, Int((unsigned long)c.n), hints, caps, "n");
    return {out.begin(), out.end()};
}

std::vector<Int> bad_primes(const FermatCurve& c, const std::vector<Int>& hints,
                            const SearchCaps& caps) {
    std::set<Int> out{Int(2)};
    if (c.family) {
        out.insert(Int(3));
        out.insert(c.family->p);
        add_primes_of(out, c.family->kappa, hints, caps, "kappa");
        add_primes_of(out, c.family->chi, hints, caps, "chi");
        add_primes_of(out, Int((unsigned long)c.family->n), hints, caps, "n");
    } else {
        add_primes_of(out, c.cx, hints, caps, "cx");
        add_primes_of(out, c.cy, hints, caps, "cy");
        add_primes_of(out, c.cz, hints, caps, "cz");
        add_primes_of(out, Int((unsigned long)c.m), hints, caps, "m");
    }
    return {out.begin(), out.end()};
}

bool curves_distinct(const Int& kappa1, const Int& kappa2, unsigned n, const std::vector<Int>& hints,
                     const SearchCaps& caps) {
    if (kappa1 == 0 || kappa2 == 0)
        throw std::invalid_argument("curves_distinct: kappas must be nonzero");
    // (k1/k2)^6 is a 12n-th power iff 6(v_q(k1) - v_q(k2)) == 0 (mod 12n)
    // for every prime q (the ratio is positive, so no sign obstruction)
    FactoredInteger f1 = factorize_with_hints(kappa1, hints, caps);
    FactoredInteger f2 = factorize_with_hints(kappa2, hints, caps);
    if (!f1.complete || !f2.complete)
        throw incomplete_factorization_error("curves_distinct: factorization incomplete",
                                             f1.complete ? f2.cofactor : f1.cofactor);
    std::set<Int> qs;
    for (const auto& pp : f1.factors) qs.insert(pp.prime);
    for (const auto& pp : f2.factors) qs.insert(pp.prime);
    for (const Int& q : qs) {
        long v1 = kappa1 % q == 0 ? (long)valuation(kappa1, q) : 0;
        long v2 = kappa2 % q == 0 ? (long)valuation(kappa2, q) : 0;
        if ((6 * (v1 - v2)) % (12l * n) != 0) return true;
    }
    return false;
}

bool fermat_to_mordell_morphism_check(const FermatCurve& f, const MordellCurve& d,
                                      unsigned samples, std::uint64_t seed) {
    if (!f.family || !d.kappa)
        throw std::invalid_argument("morphism_check: family-form curves required");
    if (f.family->p != d.p || f.family->n != d.n || f.family->kappa != *d.kappa)
        throw std::invalid_argument("morphism_check: mismatched family parameters");
    const unsigned N = f.m;  // 12n
    const Int& chi = f.family->chi;

    // points of F over F_l map to points of the D* model p z^2 = E'^2 x^N - y^N
    // (kappa form: E' = 27 kappa^3) under (x : y : z) -> (x : y : chi z^(6n))
    std::uint64_t found = 0;
    std::uint64_t state = seed * 6364136223846793005ull + 1442695040888963407ull;
    auto next = [&state] {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        return state;
    };
    std::vector<std::uint64_t> good_ls;
    for (std::uint64_t l = 101; good_ls.size() < 8; l += 2) {
        if (!f64::is_prime(l)) continue;
        if (mpz_divisible_ui_p(f.cx.get_mpz_t(), l) || mpz_divisible_ui_p(f.cz.get_mpz_t(), l))
            continue;
        if (mpz_divisible_ui_p(d.p.get_mpz_t(), l)) continue;
        good_ls.push_back(l);
    }
    for (std::uint64_t l : good_ls) {
        using namespace f64;
        u64 c1 = mpz_fdiv_ui(f.cx.get_mpz_t(), l);
        u64 c2 = l - 1;  // cy = -1
        u64 c3 = mpz_fdiv_ui(f.cz.get_mpz_t(), l);
        u64 chil = mpz_fdiv_ui(chi.get_mpz_t(), l);
        u64 pl = mpz_fdiv_ui(d.p.get_mpz_t(), l);
        u64 E2 = mulmod(mpz_fdiv_ui(d.E.get_mpz_t(), l), mpz_fdiv_ui(d.E.get_mpz_t(), l), l);
        u64 G2 = mulmod(mpz_fdiv_ui(d.G.get_mpz_t(), l), mpz_fdiv_ui(d.G.get_mpz_t(), l), l);
        std::uint64_t tries = 0, got = 0;
        while (got < samples / good_ls.size() + 1 && tries < 40 * samples) {
            ++tries;
            u64 x = next() % l, z = next() % l;
            if (x == 0 && z == 0) continue;
            // need y with c1 x^N + c2 y^N + c3 z^N == 0
            u64 rhs = (l - (mulmod(c1, powmod(x, N, l), l) + mulmod(c3, powmod(z, N, l), l)) % l) % l;
            u64 yN = mulmod(rhs, invmod(c2, l), l);
            u64 y = yN == 0 ? 0 : nth_root_mod(yN, N, l);
            if (y == l) continue;
            // image point on the D* chart: p Z^2 == E^2/G^2-normalized model;
            // use the weighted form p (chi z^(6n))^2 == (E/G)^2 x^N - y^N with
            // E, G integral: G^2 p Z^2 == E^2 x^N - (G y)^N-scaled is kappa form
            // (G = 1 for kappa-form curves)
            u64 Z = mulmod(chil, powmod(z, 6 * d.n, l), l);
            u64 lhs = mulmod(pl, mulmod(Z, Z, l), l);
            u64 rhs2 = (mulmod(E2, powmod(x, N, l), l) + l - mulmod(G2, powmod(y, N, l), l)) % l;
            if (lhs != rhs2) return false;
            ++got;
            ++found;
        }
    }
    return found > 0;
}

}  // namespace hf
