#pragma once

#include <variant>

#include "hasseforge/fm.hpp"

namespace hf {

/// Generalized Mordell curve p z^2 = E^2 x^(12n) - G^2. The kappa form
/// (E, G) = (27 kappa^3, 1), i.e. p z^2 = 3^6 kappa^6 x^(12n) - 1.
struct MordellCurve {
    Int p;
    unsigned n = 1;
    Int E, G;
    std::optional<Int> kappa;

    static MordellCurve kappa_form(Int p, unsigned n, Int kappa);
    unsigned degree() const { return 12 * n; }
};

/// Generalized Fermat curve c_x X^m + c_y Y^m + c_z Z^m = 0 of signature
/// (m, m, m). Family form: (3^6 kappa^6) X^(12n) - Y^(12n) - p chi^2 Z^(12n).
struct FermatCurve {
    Int cx, cy, cz;
    unsigned m = 3;
    struct FamilyTag {
        Int p;
        unsigned n;
        Int kappa, chi;
    };
    std::optional<FamilyTag> family;

    static FermatCurve family_form(Int p, unsigned n, Int kappa, Int chi);
};

/// Smooth projective model of z^2 = f(x), f squarefree; used by the DCC
/// counterexample family and the Hasse-Weil validation suite.
struct HyperellipticCurve {
    std::vector<Int> f;  // coefficients, f[i] x^i

    Int eval(const Int& x) const;
    unsigned degree() const;
};

Int genus(const MordellCurve& c);      // 6n - 1
Int genus(const FermatCurve& c);       // (m-1)(m-2)/2
Int genus(const HyperellipticCurve&);  // floor((deg-1)/2), f squarefree

/// Primes of bad reduction. Mordell kappa-form: {2, 3, p} + primes(kappa n);
/// Fermat family: additionally primes(chi). Throws
/// incomplete_factorization_error when the needed factorizations exceed the
/// budget (pass recipe primes through hints).
std::vector<Int> bad_primes(const MordellCurve& c, const std::vector<Int>& hints = {},
                            const SearchCaps& caps = {});
std::vector<Int> bad_primes(const FermatCurve& c, const std::vector<Int>& hints = {},
                            const SearchCaps& caps = {});

enum class Verdict { solvable, unsolvable, undecided };
enum class Method {
    hensel_witness,
    explicit_point,
    hasse_weil,
    real_analysis,
    exhaustive_refutation,
    none
};

const char* verdict_name(Verdict v);
const char* method_name(Method m);

/// Evidence of local solvability (or refutation) at one place.
struct PlaceCertificate {
    Place place;
    Verdict verdict = Verdict::undecided;
    Method method = Method::none;
    // hensel-witness / explicit-point payload
    std::string chart;               // "affine", "inverted", "z=1", ...
    std::vector<Int> coords;         // residues mod l^k
    unsigned precision = 0;          // k
    unsigned derivative_valuation = 0;  // t, with value valuation >= 2t+1
    long value_valuation = -1;          // v_l(F(witness)), -1 = exact zero
    unsigned depth = 0;              // residue depth exhausted (refutations)
    std::string note;
};

PlaceCertificate local_solvable_at(const MordellCurve& c, const Place& place,
                                   const SearchCaps& caps = {});
PlaceCertificate local_solvable_at(const FermatCurve& c, const Place& place,
                                   const SearchCaps& caps = {});

struct EverywhereLocalReport {
    std::vector<PlaceCertificate> places;  // inf, special, bad, and swept good primes
    Int sweep_bound;                       // explicit certificates up to 4 g^2
    bool all_solvable = false;
    std::optional<Place> offending;
    bool undecided = false;
};

/// Certificates for infinity, 2, 3, p, every bad prime, and every good prime
/// up to 4*genus^2; larger good primes are covered by the Hasse-Weil bound
/// after a good-reduction check.
EverywhereLocalReport certify_everywhere_local(const MordellCurve& c,
                                               const std::vector<Int>& hints = {},
                                               const SearchCaps& caps = {});
EverywhereLocalReport certify_everywhere_local(const FermatCurve& c,
                                               const std::vector<Int>& hints = {},
                                               const SearchCaps& caps = {});

// ------------------------------------------------------------- Brauer ----

/// l-adic point of the septuple-model curve p z^2 = E^2 x^(12n) - G^2,
/// stored to finite precision.
struct LocalPoint {
    Place place;
    PadicApprox x, z;
};

/// Local invariant of the quaternion class (p, A + B x^(4n) + p z) at a point:
/// 0 or 1/2. Evaluates the three representatives t1, t2, t3 = t1/x^(6n) and
/// uses any whose valuation the point's precision determines.
Rat brauer_invariant_at(const FmContext& ctx, const Septuple& s, const MordellCurve& curve,
                        const Place& place, const LocalPoint& pt);

struct BrauerSample {
    Place place;
    LocalPoint point;
    Rat invariant;
    int representative = 1;  // which of t1/t2/t3 decided
};

/// Deterministic l-adic points on the septuple-model curve, precision
/// 2 v_l(den) + 6.
std::vector<LocalPoint> sample_local_points(const Septuple& s, const Int& p, unsigned n,
                                            const Place& place, unsigned count,
                                            std::uint64_t seed);

struct CounterexampleCertificate {
    std::variant<MordellCurve, FermatCurve> curve;
    Septuple septuple;
    FmReport fm;
    EverywhereLocalReport local;
    std::vector<BrauerSample> brauer;
    Rat sample_sum;  // == 1/2 (mod 1) for a valid certificate
    std::vector<Int> hint_primes;
    std::uint64_t seed = 0;
    std::uint64_t gstar_override = 0;  // nonzero only for reduced-scale runs
};

/// Assemble the machine-checkable counterexample certificate. Preconditions:
/// verify_fm passes and the curve is everywhere locally solvable; the Brauer
/// samples must then match the proven profile (1/2 at p, 0 elsewhere) or the
/// certificate is refuted (an implementation bug, reported as an exception).
CounterexampleCertificate certify_counterexample(const FmContext& ctx, const Septuple& s,
                                                 const MordellCurve& curve,
                                                 const std::vector<Int>& hints = {},
                                                 const SearchCaps& caps = {});
CounterexampleCertificate certify_counterexample(const FmContext& ctx, const Septuple& s,
                                                 const FermatCurve& curve,
                                                 const std::vector<Int>& hints = {},
                                                 const SearchCaps& caps = {});

/// Are the kappa-form curves for kappa1, kappa2 non-isomorphic, i.e. is
/// (kappa1/kappa2)^6 not a rational 12n-th power?
bool curves_distinct(const Int& kappa1, const Int& kappa2, unsigned n,
                     const std::vector<Int>& hints = {}, const SearchCaps& caps = {});

/// Sample-based functoriality check of (x : y : z) -> (x : y : chi z^(6n))
/// from the family Fermat curve to the Mordell curve over small prime fields.
bool fermat_to_mordell_morphism_check(const FermatCurve& f, const MordellCurve& d,
                                      unsigned samples = 100, std::uint64_t seed = 0);

}  // namespace hf
