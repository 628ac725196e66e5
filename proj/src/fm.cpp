#include "hasseforge/fm.hpp"

namespace hf {

namespace {

// cube roots of unity in F_p^x: {1} when p == 2 (mod 3), three roots otherwise
std::vector<Int> cube_roots_of_unity(const Int& p) {
    if (p % 3 == 2) return {Int(1)};
    // find a generator-like element: z = g^((p-1)/3) for g with z != 1
    Int e = (p - 1) / 3;
    for (Int g = 2; g < p; ++g) {
        Int z = pow_mod(g, e, p);
        if (z != 1) return {Int(1), z, z * z % p};
    }
    throw contradiction_error("cube_roots_of_unity: no generator found");
}

}  // namespace

std::optional<Int> find_a5_witness(const FmContext& ctx, const Septuple& s) {
    const Int& p = ctx.p;
    Int E = s.E % p, G = s.G % p, A = s.A % p, B = s.B % p;
    if (E < 0) E += p;
    if (G < 0) G += p;
    if (A < 0) A += p;
    if (B < 0) B += p;
    if (E == 0) throw std::invalid_argument("find_a5_witness: E == 0 (mod p)");
    auto zetas = cube_roots_of_unity(p);
    for (Int H = 1; H < p; ++H) {
        Int H2 = H * H % p;
        Int H4 = H2 * H2 % p;
        Int H6 = H4 * H2 % p;
        if (E * H6 % p != G) continue;
        bool ok = true;
        for (const Int& z : zetas) {
            Int t = (A + z * B % p * H4) % p;
            if (t == 0 || jacobi_symbol(t, p) != -1) {
                ok = false;
                break;
            }
        }
        if (ok) return H;
    }
    return std::nullopt;
}

FmReport verify_fm(const FmContext& ctx, const Septuple& s, const std::vector<Int>& hint_primes,
                   const SearchCaps& caps) {
    if (!s.any_nonzero()) throw std::invalid_argument("verify_fm: zero septuple");
    FmReport rep;
    const Int& p = ctx.p;
    const unsigned n = ctx.n;

    // A1
    if (!on_threefold(p, s)) rep.A1 = {Cond::fail, "point not on X_p", {}};

    // A3 first: several later checks assume E, G units mod p
    {
        Int g;
        mpz_gcd(g.get_mpz_t(), s.A.get_mpz_t(), s.D.get_mpz_t());
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), s.G.get_mpz_t());
        if (g != 1)
            rep.A3 = {Cond::fail, "gcd(A, D, G) = " + g.get_str(), {g}};
        else if (s.E == 0 || s.E % p == 0)
            rep.A3 = {Cond::fail, "E == 0 (mod p)", {}};
        else if (s.G == 0 || s.G % p == 0)
            rep.A3 = {Cond::fail, "G == 0 (mod p)", {}};
    }

    // A2: odd primes l with gcd(l, 3p) = 1 and l | E need p square in Q_l or
    // v_l(E) - v_l(G) < 6n
    if (s.E == 0) {
        rep.A2 = {Cond::fail, "E = 0", {}};
    } else {
        FactoredInteger fe = factorize_with_hints(s.E, hint_primes, caps);
        for (const auto& pp : fe.factors) {
            const Int& l = pp.prime;
            if (l == 2 || l == 3 || l == p) continue;
            if (is_square_in_local_field(p, Place::at(l))) continue;
            long vE = pp.exponent;
            long vG = (s.G == 0) ? -1 : (long)valuation(s.G, l);
            if (s.G == 0 || vE - vG >= 6 * (long)n) {
                rep.A2 = {Cond::fail,
                          "l = " + l.get_str() + ": v_l(E) - v_l(G) = " +
                              std::to_string(vE - vG) + " >= 6n",
                          {l}};
                break;
            }
        }
        if (rep.A2.verdict == Cond::pass && !fe.complete)
            rep.A2 = {Cond::undecided, "E has unfactored cofactor " + fe.cofactor.get_str(), {}};
    }

    // A4: odd primes l, gcd(l, 3p) = 1, dividing gcd(AC - BD, DE - CF, AE - BF)
    {
        Int g1 = s.A * s.C - s.B * s.D;
        Int g2 = s.D * s.E - s.C * s.F;
        Int g3 = s.A * s.E - s.B * s.F;
        Int g;
        mpz_gcd(g.get_mpz_t(), g1.get_mpz_t(), g2.get_mpz_t());
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), g3.get_mpz_t());
        if (g == 0) {
            // all primes divide 0: the quantification degenerates (see ledger)
            rep.A4 = {Cond::fail, "AC-BD, DE-CF, AE-BF all vanish", {}};
        } else {
            FactoredInteger fg = factorize_with_hints(g, hint_primes, caps);
            for (const auto& pp : fg.factors) {
                const Int& l = pp.prime;
                if (l == 2 || l == 3 || l == p) continue;
                if (!is_square_in_local_field(p, Place::at(l))) {
                    rep.A4 = {Cond::fail, "p not a square in Q_l for l = " + l.get_str(), {l}};
                    break;
                }
            }
            if (rep.A4.verdict == Cond::pass && !fg.complete)
                rep.A4 = {Cond::undecided, "gcd has unfactored cofactor " + fg.cofactor.get_str(), {}};
        }
    }

    // A5
    if (s.E != 0 && s.E % p != 0) {
        auto H = find_a5_witness(ctx, s);
        if (H) {
            rep.a5_witness = *H;
            rep.A5.note = "H = " + H->get_str();
            rep.A5.data.push_back(*H);
        } else {
            rep.A5 = {Cond::fail, "no H in [1, p-1] satisfies A5", {}};
        }
    } else {
        rep.A5 = {Cond::fail, "E == 0 (mod p), A5 ill-posed", {}};
    }

    // A6/A7 apply only when 3 is a quadratic non-residue mod p
    bool three_nonresidue = jacobi_symbol(Int(3), p) == -1;
    // cross-check against reciprocity: for p == 1 (mod 4), (3/p) = (p/3),
    // so non-residue <=> p == 2 (mod 3)
    if (three_nonresidue != (p % 3 == 2))
        throw contradiction_error("verify_fm: reciprocity cross-check failed");
    if (!three_nonresidue) {
        rep.A6 = {Cond::not_applicable, "3 is a quadratic residue mod p", {}};
        rep.A7 = {Cond::not_applicable, "3 is a quadratic residue mod p", {}};
    } else {
        if (s.E == 0 || s.G == 0) {
            rep.A6 = {Cond::fail, "E or G vanishes", {}};
        } else {
            long v3E = valuation(s.E, Int(3)), v3G = valuation(s.G, Int(3));
            if (v3E - v3G >= 6 * (long)n)
                rep.A6 = {Cond::fail,
                          "v_3(E) - v_3(G) = " + std::to_string(v3E - v3G) + " >= 6n", {}};
            else
                rep.A6.note = "v_3(E) - v_3(G) = " + std::to_string(v3E - v3G);
        }
        Int ab = (s.A + s.B) % 3;
        if (ab == 0)
            rep.A7 = {Cond::fail, "A + B == 0 (mod 3)", {}};
        else if (s.G % 3 != 0)
            rep.A7 = {Cond::fail, "G != 0 (mod 3)", {}};
    }

    rep.overall = Cond::pass;
    for (const ConditionReport* c : {&rep.A1, &rep.A2, &rep.A3, &rep.A4, &rep.A5, &rep.A6, &rep.A7}) {
        if (c->verdict == Cond::fail) {
            rep.overall = Cond::fail;
            break;
        }
        if (c->verdict == Cond::undecided) rep.overall = Cond::undecided;
    }

    // Hypothesis FM forces A, D, E, G nonzero
    if (rep.overall == Cond::pass && (s.A == 0 || s.D == 0 || s.E == 0 || s.G == 0))
        throw contradiction_error("verify_fm: FM passed but A*D*E*G == 0");
    return rep;
}

}  // namespace hf
