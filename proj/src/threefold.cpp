#include "hasseforge/threefold.hpp"

namespace hf {

bool on_threefold(const Int& p, const Septuple& s) {
    if (!s.any_nonzero()) throw std::invalid_argument("on_threefold: zero septuple");
    Int q1 = s.B * s.B - s.C * s.C + 2 * p * s.E * s.F;
    Int q2 = 2 * s.A * s.B - 2 * s.C * s.D + p * s.F * s.F;
    Int q3 = s.A * s.A - s.D * s.D + p * s.G * s.G;
    return q1 == 0 && q2 == 0 && q3 == 0;
}

Septuple family_one(const FamilyOneParams& params) {
    const Int &p = params.p, &a = params.alpha, &b = params.beta, &k = params.kappa;
    if (a == 0 || b == 0 || k == 0)
        throw std::invalid_argument("family_one: alpha, beta, kappa must be nonzero");
    Int minus = p * a * a - 9 * b * b;
    Int plus = p * a * a + 9 * b * b;
    if (mpz_odd_p(minus.get_mpz_t()))
        throw std::invalid_argument("family_one: p*alpha^2 - 9*beta^2 must be even");
    Septuple s;
    s.A = minus / 2;
    s.D = plus / 2;
    s.B = 18 * k * k * s.A;
    s.C = 18 * k * k * s.D;
    s.E = 81 * a * b * k * k * k;
    s.F = 18 * a * b * k;
    s.G = 3 * a * b;
    // postcondition: the point lies on X_p and satisfies the derived relations
    if (!on_threefold(p, s)) throw contradiction_error("family_one: output not on threefold");
    if (s.E != 27 * k * k * k * s.G || s.F != 6 * k * s.G)
        throw contradiction_error("family_one: E/F relations violated");
    return s;
}

bool FamilyOneReport::all_pass() const {
    return B1.ok() && B2.ok() && B3.ok() && B4.ok() && B5.ok();
}

bool FamilyOneReport::decided() const {
    for (const ConditionReport* c : {&B1, &B2, &B3, &B4, &B5})
        if (c->verdict == Cond::undecided) return false;
    return true;
}

namespace {

// "p is a square in Q_l^x" for each odd prime l != 3 dividing m; factorization
// driven, so an unfinished factorization leaves the condition undecided.
ConditionReport square_condition_over_divisors(const Int& p, const Int& m,
                                               const std::vector<Int>& hints,
                                               const SearchCaps& caps) {
    ConditionReport rep;
    FactoredInteger f = factorize_with_hints(m, hints, caps);
    for (const auto& pp : f.factors) {
        if (pp.prime == 2 || pp.prime == 3) continue;
        if (!is_square_in_local_field(p, Place::at(pp.prime))) {
            rep.verdict = Cond::fail;
            rep.note = "p is not a square in Q_l for l = " + pp.prime.get_str();
            rep.data.push_back(pp.prime);
            return rep;
        }
    }
    if (!f.complete) {
        rep.verdict = Cond::undecided;
        rep.note = "unfactored cofactor " + f.cofactor.get_str();
        return rep;
    }
    rep.verdict = Cond::pass;
    return rep;
}

}  // namespace

FamilyOneReport check_family_one_conditions(const Int& p, unsigned n, const FamilyOneParams& params,
                                            const std::vector<Int>& hint_primes,
                                            const SearchCaps& caps) {
    FamilyOneReport rep;
    const Int &a = params.alpha, &b = params.beta, &k = params.kappa;

    // B1: alpha, beta odd; gcd(alpha,3) = gcd(alpha,p) = gcd(alpha,beta) = gcd(beta,p) = 1
    {
        auto coprime = [](const Int& x, const Int& y) {
            Int g;
            mpz_gcd(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
            return g == 1;
        };
        if (mpz_even_p(a.get_mpz_t()) || mpz_even_p(b.get_mpz_t()))
            rep.B1 = {Cond::fail, "alpha or beta even", {}};
        else if (!coprime(a, Int(3)) || !coprime(a, p) || !coprime(a, b) || !coprime(b, p))
            rep.B1 = {Cond::fail, "coprimality violated", {}};
    }
    // B2: odd primes l != 3 dividing alpha*beta must have p a square in Q_l
    rep.B2 = square_condition_over_divisors(p, a * b, hint_primes, caps);
    // B3: v_3(kappa) odd, positive, < 2n - 1
    {
        unsigned v3 = valuation(k, Int(3));
        if (v3 == 0 || v3 % 2 == 0)
            rep.B3 = {Cond::fail, "v_3(kappa) = " + std::to_string(v3) + " not an odd positive integer", {}};
        else if (!(v3 < 2 * (unsigned long)n - 1))
            rep.B3 = {Cond::fail, "v_3(kappa) = " + std::to_string(v3) + " >= 2n - 1", {}};
        else
            rep.B3.note = "v_3(kappa) = " + std::to_string(v3);
    }
    // B4
    if (k % p == 0) rep.B4 = {Cond::fail, "kappa divisible by p", {}};
    // B5: odd primes l != 3 dividing kappa must have p a square in Q_l
    rep.B5 = square_condition_over_divisors(p, k, hint_primes, caps);
    return rep;
}

Septuple family_two(const FamilyTwoParams& q) {
    const Int &p = q.p, &l = q.lambda, &g = q.gamma;
    if (l == 0 || g == 0 || mpz_even_p(l.get_mpz_t()) || mpz_even_p(g.get_mpz_t()))
        throw std::invalid_argument("family_two: lambda and gamma must be odd and nonzero");
    if (p * l * l * q.eps0 + 9 * g * g * q.delta0 != 1)
        throw std::invalid_argument("family_two: Bezout relation p*l^2*e0 + 9*g^2*d0 = 1 violated");
    Septuple s;
    s.A = (p * l * l - 9 * g * g) / 2;
    s.D = (p * l * l + 9 * g * g) / 2;
    s.G = 3 * l * g;
    s.F = 2 * q.F0;
    s.B = 2 * p * q.F0 * q.F0 * (q.delta0 - q.eps0 - 2 * q.mu * s.D) + 2 * s.D * q.t0 * q.F0;
    s.C = 2 * p * q.F0 * q.F0 * (q.delta0 + q.eps0 - 2 * q.mu * s.A) + 2 * s.A * q.t0 * q.F0;
    s.E = q.F0 * (2 * p * q.F0 * (q.eps0 + 9 * q.mu * g * g) - 9 * g * g * q.t0) *
          (2 * q.F0 * (q.delta0 - p * q.mu * l * l) + l * l * q.t0);
    if (!on_threefold(p, s)) throw contradiction_error("family_two: output not on threefold");
    if (q.provenance) {
        // E = -4 F0^3 E1 E2 must hold identically for recipe-built parameters
        const auto& pv = *q.provenance;
        Int rhs = -4 * q.F0 * q.F0 * q.F0 * pv.E1 * pv.E2;
        if (s.E != rhs) throw contradiction_error("family_two: E != -4 F0^3 E1 E2");
    }
    return s;
}

}  // namespace hf
