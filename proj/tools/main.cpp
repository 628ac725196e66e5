// hasse-forge: generation, verification, and certification of generalized
// Mordell / Fermat curves violating the Hasse principle, with JSON output.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "hasseforge/jsonio.hpp"

namespace {

using namespace hf;

constexpr int kOk = 0, kFail = 1, kUndecided = 2, kUsage = 3;

std::vector<Int> parse_ints(const std::string& csv) {
    std::vector<Int> out;
    std::string cur;
    for (char ch : csv + ",") {
        if (ch == ',') {
            if (!cur.empty()) out.push_back(Int(cur));
            cur.clear();
        } else if (!isspace((unsigned char)ch)) {
            cur += ch;
        }
    }
    return out;
}

struct CurveSpec {
    bool fermat = false;
    MordellCurve mc;
    FermatCurve fc;
};

CurveSpec parse_curve(const std::string& spec) {
    auto colon = spec.find(':');
    if (colon == std::string::npos) throw std::invalid_argument("curve spec needs kind:args");
    std::string kind = spec.substr(0, colon);
    std::vector<Int> v = parse_ints(spec.substr(colon + 1));
    CurveSpec out;
    if (kind == "mordell") {
        if (v.size() != 3) throw std::invalid_argument("mordell:p,n,kappa");
        out.mc = MordellCurve::kappa_form(v[0], (unsigned)v[1].get_ui(), v[2]);
    } else if (kind == "mordell-raw") {
        if (v.size() != 4) throw std::invalid_argument("mordell-raw:p,n,E,G");
        out.mc.p = v[0];
        out.mc.n = (unsigned)v[1].get_ui();
        out.mc.E = v[2];
        out.mc.G = v[3];
    } else if (kind == "fermat") {
        if (v.size() != 4) throw std::invalid_argument("fermat:p,n,kappa,chi");
        out.fermat = true;
        out.fc = FermatCurve::family_form(v[0], (unsigned)v[1].get_ui(), v[2], v[3]);
    } else if (kind == "fermat-raw") {
        if (v.size() != 4) throw std::invalid_argument("fermat-raw:cx,cy,cz,m");
        out.fermat = true;
        out.fc.cx = v[0];
        out.fc.cy = v[1];
        out.fc.cz = v[2];
        out.fc.m = (unsigned)v[3].get_ui();
    } else {
        throw std::invalid_argument("unknown curve kind " + kind);
    }
    return out;
}

int emit(const Json& j, const std::string& out_path, bool pretty) {
    std::string text = pretty ? j.dump(2) : j.dump();
    if (out_path.empty() || out_path == "-") {
        std::cout << text << "\n";
    } else {
        std::ofstream f(out_path);
        f << text << "\n";
    }
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"hasse-forge: certified Hasse-principle counterexample toolkit"};
    app.require_subcommand(1);

    SearchCaps caps = SearchCaps::from_env();
    std::string out_path;
    bool pretty = false;
    app.add_option("--out", out_path, "output file (default stdout)");
    app.add_flag("--pretty", pretty, "pretty-print JSON");
    app.add_option("--jobs", caps.jobs, "worker threads for sweeps and scans");
    app.add_option("--seed", caps.seed, "seed for Brauer point sampling (default 0)");
    app.add_option("--cap-scan", caps.progression_test_cap, "primality tests per progression scan");
    app.add_option("--cap-sieve", caps.sieve_bound, "sieve depth for progression scans");
    app.add_option("--cap-modbits", caps.max_modulus_bits, "max CRT modulus size in bits");
    app.add_option("--cap-schinzel", caps.schinzel_scan_cap, "mu_1 scan cap for gen-family-two");
    app.add_option("--cap-maxn", caps.max_n, "largest n the generators accept");
    app.add_option("--cap-trial", caps.trial_division_bound, "trial division bound");
    app.add_option("--cap-rho", caps.rho_iterations, "Pollard rho iteration budget");
    app.add_option("--cap-hensel", caps.hensel_node_cap, "residue-class node budget");
    app.add_option("--gstar-override", caps.gstar_bound_override,
                   "reduced-scale G* bound override (testing; recorded in output)");

    // verify-fm
    auto* vfm = app.add_subcommand("verify-fm", "verify Hypothesis FM for a septuple");
    Int p;
    unsigned n = 2, m = 1, r = 1;
    std::string septuple_csv, hints_csv, curve_spec, place_str, in_path;
    vfm->add_option("--p", p, "prime p == 1 (mod 8)")->required();
    vfm->add_option("--n", n, "exponent parameter n")->required();
    vfm->add_option("--septuple", septuple_csv, "A,B,C,D,E,F,G")->required();
    vfm->add_option("--hints", hints_csv, "known prime factors (comma separated)");

    // gen-mordell
    auto* gm = app.add_subcommand("gen-mordell", "kappa recipe + Mordell counterexample certificate");
    gm->add_option("--p", p, "prime p == 1 (mod 8), == 2 (mod 3)")->required();
    gm->add_option("--n", n, "degree parameter (curve degree 12n)")->required();
    gm->add_option("--m", m, "3-valuation parameter (v_3(kappa) = 2m-1)")->required();
    gm->add_option("--r", r, "kappa_* exponent, r | m")->required();

    // gen-fermat
    auto* gf = app.add_subcommand("gen-fermat", "kappa-chi recipe + Fermat counterexample certificate");
    gf->add_option("--p", p, "prime p == 1 (mod 8), == 2 (mod 3)")->required();
    gf->add_option("--n", n, "signature parameter (signature 12n)")->required();
    gf->add_option("--m", m, "3-valuation parameter")->required();
    gf->add_option("--r", r, "kappa_* exponent, r | m")->required();

    // gen-family-two
    auto* g2 = app.add_subcommand("gen-family-two", "second parameterization recipe");
    bool schinzel = false;
    Int lambda = 1, gamma = 1, F1 = 1;
    std::string pi_str;
    g2->add_option("--p", p, "prime p == 1 (mod 8), == 2 (mod 3)")->required();
    g2->add_flag("--schinzel", schinzel, "scan for simultaneously prime factors");
    g2->add_option("--lambda", lambda, "odd seed lambda (default 1)");
    g2->add_option("--gamma", gamma, "odd seed gamma (default 1)");
    g2->add_option("--pi", pi_str, "quadratic residue mod p (default smallest > 1)");
    g2->add_option("--F1", F1, "F1 seed (default 1)");

    // local-solve
    auto* ls = app.add_subcommand("local-solve", "local solvability certificate at one place");
    ls->add_option("--curve", curve_spec,
                   "mordell:p,n,kappa | mordell-raw:p,n,E,G | fermat:p,n,kappa,chi | "
                   "fermat-raw:cx,cy,cz,m")
        ->required();
    ls->add_option("--place", place_str, "prime or 'inf'")->required();

    // certify
    auto* ce = app.add_subcommand("certify", "assemble a counterexample certificate");
    ce->add_option("--curve", curve_spec, "curve spec (family forms only)")->required();
    ce->add_option("--p", p, "prime of the FM context")->required();
    ce->add_option("--n", n, "exponent parameter")->required();
    ce->add_option("--septuple", septuple_csv, "A,B,C,D,E,F,G")->required();
    ce->add_option("--hints", hints_csv, "known prime factors");

    // dcc
    auto* dc = app.add_subcommand("dcc", "build and verify a DCC curve sequence");
    dc->set_help_flag("--help", "print help");  // frees -h/--h for the length flag
    std::string family = "mordell";
    unsigned n0 = 3, n1 = 1, h = 2, eps = 1, nonds_n = 2, nonds_m = 2;
    std::string F_csv = "-1,0,1";
    dc->add_option("--family", family, "mordell | fermat | non-dcc")->required();
    dc->add_option("--p", p, "base prime (mordell/fermat)");
    dc->add_option("--n0", n0, "schedule base");
    dc->add_option("--n1", n1, "schedule multiplier");
    dc->add_option("--h", h, "declared DCC length");
    dc->add_option("--eps", eps, "Mordell schedule offset (n0^eps > 2)");
    dc->add_option("--nd-n", nonds_n, "non-dcc: degree of F");
    dc->add_option("--nd-m", nonds_m, "non-dcc: exponent step m");
    dc->add_option("--nd-F", F_csv, "non-dcc: F coefficients c0,c1,...");

    // check-cert
    auto* cc = app.add_subcommand("check-cert", "re-verify a certificate file offline");
    cc->add_option("--in", in_path, "certificate JSON file")->required();

    for (CLI::App* sub : app.get_subcommands([](const CLI::App*) { return true; }))
        sub->fallthrough();
    CLI11_PARSE(app, argc, argv);

    try {
        if (vfm->parsed()) {
            auto v = parse_ints(septuple_csv);
            if (v.size() != 7) throw std::invalid_argument("septuple needs seven integers");
            Septuple s{v[0], v[1], v[2], v[3], v[4], v[5], v[6]};
            FmContext ctx(p, n);
            FmReport rep = verify_fm(ctx, s, parse_ints(hints_csv), caps);
            emit(to_json(rep), out_path, pretty);
            if (rep.overall == Cond::pass) return kOk;
            return rep.overall == Cond::undecided ? kUndecided : kFail;
        }
        if (gm->parsed()) {
            KappaRecipe rec = gen_kappa(p, n, m, r, caps);
            Septuple s = family_one({p, 1, 1, rec.kappa});
            MordellCurve curve = MordellCurve::kappa_form(p, n, rec.kappa);
            FmContext ctx(p, n);
            auto cert = certify_counterexample(ctx, s, curve, rec.hint_primes(), caps);
            Json j;
            j["schema"] = kSchema;
            j["recipe"] = to_json(rec);
            j["check_C"] = to_json(check_C(p, n, rec.kappa, rec.hint_primes(), caps));
            j["certificate"] = to_json(cert);
            return emit(j, out_path, pretty);
        }
        if (gf->parsed()) {
            KappaChiRecipe rec = gen_kappa_chi(p, n, m, r, caps);
            Septuple s = family_one({p, 1, 1, rec.kappa_half.kappa});
            FermatCurve curve = FermatCurve::family_form(p, n, rec.kappa_half.kappa, rec.chi);
            FmContext ctx(p, n);
            auto cert = certify_counterexample(ctx, s, curve, rec.hint_primes(), caps);
            Json j;
            j["schema"] = kSchema;
            j["recipe"] = to_json(rec);
            j["check_D"] = to_json(check_D(p, n, rec.kappa_half.kappa, rec.chi,
                                           rec.kappa_half.hint_primes(), {rec.chi}, caps));
            j["certificate"] = to_json(cert);
            return emit(j, out_path, pretty);
        }
        if (g2->parsed()) {
            FamilyTwoSeeds seeds;
            seeds.lambda = lambda;
            seeds.gamma = gamma;
            seeds.F1 = F1;
            if (!pi_str.empty()) seeds.pi = Int(pi_str);
            FamilyTwoRecipe rec = gen_family_two(p, caps, schinzel, seeds);
            return emit(to_json(rec), out_path, pretty);
        }
        if (ls->parsed()) {
            CurveSpec cs = parse_curve(curve_spec);
            Place place = place_str == "inf" ? Place::infinity() : Place::at(Int(place_str));
            PlaceCertificate pc = cs.fermat ? local_solvable_at(cs.fc, place, caps)
                                            : local_solvable_at(cs.mc, place, caps);
            emit(to_json(pc), out_path, pretty);
            if (pc.verdict == Verdict::solvable) return kOk;
            return pc.verdict == Verdict::unsolvable ? kFail : kUndecided;
        }
        if (ce->parsed()) {
            auto v = parse_ints(septuple_csv);
            if (v.size() != 7) throw std::invalid_argument("septuple needs seven integers");
            Septuple s{v[0], v[1], v[2], v[3], v[4], v[5], v[6]};
            CurveSpec cs = parse_curve(curve_spec);
            FmContext ctx(p, n);
            auto hints = parse_ints(hints_csv);
            auto cert = cs.fermat ? certify_counterexample(ctx, s, cs.fc, hints, caps)
                                  : certify_counterexample(ctx, s, cs.mc, hints, caps);
            return emit(to_json(cert), out_path, pretty);
        }
        if (dc->parsed()) {
            CurveSequence seq;
            if (family == "mordell")
                seq = build_mordell_sequence(p, n0, n1, h, eps, caps);
            else if (family == "fermat")
                seq = build_fermat_sequence(p, n0, n1, h, caps);
            else if (family == "non-dcc")
                seq = build_non_dcc(nonds_n, nonds_m, parse_ints(F_csv), 4);
            else
                throw std::invalid_argument("unknown family " + family);
            DccReport rep = verify_dcc(seq, caps);
            Json j;
            j["schema"] = kSchema;
            j["sequence"] = to_json(seq);
            j["report"] = to_json(rep);
            emit(j, out_path, pretty);
            if (family == "non-dcc") return kOk;  // expected non-DCC verdict
            return rep.dcc_satisfied ? kOk : kFail;
        }
        if (cc->parsed()) {
            std::ifstream f(in_path);
            if (!f) throw std::invalid_argument("cannot open " + in_path);
            Json j = Json::parse(f);
            std::string why;
            bool ok = check_certificate(j.contains("certificate") ? j.at("certificate") : j, why,
                                        caps);
            Json outj;
            outj["schema"] = kSchema;
            outj["valid"] = ok;
            if (!ok) outj["reason"] = why;
            emit(outj, out_path, pretty);
            return ok ? kOk : kFail;
        }
    } catch (const budget_error& e) {
        Json j;
        j["schema"] = kSchema;
        j["error"] = "search-budget";
        j["stage"] = e.stage;
        j["detail"] = e.what();
        emit(j, out_path, pretty);
        return kUndecided;
    } catch (const incomplete_factorization_error& e) {
        Json j;
        j["schema"] = kSchema;
        j["error"] = "incomplete-factorization";
        j["detail"] = e.what();
        emit(j, out_path, pretty);
        return kUndecided;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kFail;
    }
    return kUsage;
}
