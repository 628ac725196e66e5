#include "hasseforge/jsonio.hpp"

namespace hf {

namespace {

std::string dec(const Int& v) { return v.get_str(); }

std::string dec(const Rat& v) {
    return v.get_den() == 1 ? v.get_num().get_str() : v.get_num().get_str() + "/" + v.get_den().get_str();
}

Json cond(const ConditionReport& c) {
    Json j;
    j["verdict"] = cond_name(c.verdict);
    if (!c.note.empty()) j["note"] = c.note;
    if (!c.data.empty()) {
        Json d = Json::array();
        for (const Int& v : c.data) d.push_back(dec(v));
        j["data"] = d;
    }
    return j;
}

Json scan_json(const ScanStats& s) {
    Json j;
    j["tests_run"] = s.tests_run;
    j["candidates"] = s.candidates;
    j["sieve_bound"] = s.sieve_bound;
    j["x_index"] = dec(s.x_index);
    return j;
}

Json targets_json(const std::vector<CrtTarget>& ts) {
    Json arr = Json::array();
    for (const auto& t : ts) {
        Json j;
        j["modulus"] = dec(t.modulus);
        j["residue"] = dec(t.residue);
        j["label"] = t.label;
        arr.push_back(j);
    }
    return arr;
}

}  // namespace

Json to_json(const Septuple& s) {
    return Json::array({dec(s.A), dec(s.B), dec(s.C), dec(s.D), dec(s.E), dec(s.F), dec(s.G)});
}

Septuple septuple_from_json(const Json& j) {
    if (!j.is_array() || j.size() != 7)
        throw std::invalid_argument("septuple: expected array of seven decimal strings");
    Septuple s;
    Int* slot[7] = {&s.A, &s.B, &s.C, &s.D, &s.E, &s.F, &s.G};
    for (size_t i = 0; i < 7; ++i) *slot[i] = Int(j[i].get<std::string>());
    return s;
}

Json to_json(const FmReport& r) {
    Json j;
    const ConditionReport* all[] = {&r.A1, &r.A2, &r.A3, &r.A4, &r.A5, &r.A6, &r.A7};
    for (int i = 0; i < 7; ++i) j["A" + std::to_string(i + 1)] = cond(*all[i]);
    j["overall"] = cond_name(r.overall);
    if (r.a5_witness) j["a5_witness"] = dec(*r.a5_witness);
    return j;
}

Json to_json(const MordellCurve& c) {
    Json j;
    j["type"] = "mordell";
    j["p"] = dec(c.p);
    j["n"] = c.n;
    j["E"] = dec(c.E);
    j["G"] = dec(c.G);
    if (c.kappa) j["kappa"] = dec(*c.kappa);
    return j;
}

Json to_json(const FermatCurve& c) {
    Json j;
    j["type"] = "fermat";
    j["cx"] = dec(c.cx);
    j["cy"] = dec(c.cy);
    j["cz"] = dec(c.cz);
    j["m"] = c.m;
    if (c.family) {
        j["p"] = dec(c.family->p);
        j["n"] = c.family->n;
        j["kappa"] = dec(c.family->kappa);
        j["chi"] = dec(c.family->chi);
    }
    return j;
}

Json to_json(const PlaceCertificate& c) {
    Json j;
    j["place"] = c.place.str();
    j["verdict"] = verdict_name(c.verdict);
    j["method"] = method_name(c.method);
    if (!c.coords.empty()) {
        Json w;
        w["chart"] = c.chart;
        Json coords = Json::array();
        for (const Int& v : c.coords) coords.push_back(dec(v));
        w["coords"] = coords;
        w["precision"] = c.precision;
        w["derivative_valuation"] = c.derivative_valuation;
        w["value_valuation"] = c.value_valuation;
        j["witness"] = w;
    }
    if (c.depth) j["depth"] = c.depth;
    if (!c.note.empty()) j["note"] = c.note;
    return j;
}

Json to_json(const EverywhereLocalReport& r) {
    Json j;
    j["all_solvable"] = r.all_solvable;
    j["sweep_bound"] = dec(r.sweep_bound);
    j["hasse_weil"] = {{"beyond", dec(r.sweep_bound)},
                       {"method", "hasse-weil"},
                       {"note", "good primes above the bound have points by the Hasse-Weil bound"}};
    if (r.offending) j["offending"] = r.offending->str();
    Json places = Json::array();
    for (const auto& pc : r.places) places.push_back(to_json(pc));
    j["places"] = places;
    return j;
}

Json to_json(const BrauerSample& s) {
    Json j;
    j["place"] = s.place.str();
    j["point"] = {{"x", dec(s.point.x.residue)},
                  {"z", dec(s.point.z.residue)},
                  {"precision", s.point.x.precision}};
    j["invariant"] = dec(s.invariant);
    return j;
}

Json to_json(const CounterexampleCertificate& c) {
    Json j;
    j["schema"] = kSchema;
    j["kind"] = "counterexample-certificate";
    std::visit([&](const auto& cur) { j["curve"] = to_json(cur); }, c.curve);
    j["septuple"] = to_json(c.septuple);
    j["fm"] = to_json(c.fm);
    j["places"] = to_json(c.local);
    Json samples = Json::array();
    for (const auto& s : c.brauer) samples.push_back(to_json(s));
    j["brauer_samples"] = samples;
    j["sample_sum"] = dec(c.sample_sum);
    Json hints = Json::array();
    for (const Int& h : c.hint_primes) hints.push_back(dec(h));
    j["metadata"] = {{"hint_primes", hints},
                     {"seed", c.seed},
                     {"gstar_bound_override", c.gstar_override}};
    return j;
}

Json to_json(const KappaRecipe& r) {
    Json j;
    j["schema"] = kSchema;
    j["kind"] = "kappa-recipe";
    j["p"] = dec(r.p);
    j["n"] = r.n;
    j["m"] = r.m;
    j["r"] = r.r;
    j["s"] = r.s;
    Json a = Json::array(), b = Json::array();
    for (const Int& l : r.setA) a.push_back(dec(l));
    j["setA"] = a;
    j["setB_size"] = r.setB.size();
    if (r.setB.size() <= 64) {
        for (const Int& l : r.setB) b.push_back(dec(l));
        j["setB"] = b;
    }
    j["crt_targets"] = targets_json(r.targets);
    j["modulus"] = dec(r.modulus);
    j["kappa0"] = dec(r.kappa0);
    j["kappa_star"] = dec(r.kappa_star);
    j["kappa_star_probable"] = r.probable;
    j["kappa"] = dec(r.kappa);
    j["scan"] = scan_json(r.scan);
    return j;
}

Json to_json(const CReport& r) {
    Json j;
    j["C1"] = cond(r.C1);
    j["C2"] = cond(r.C2);
    j["C3"] = cond(r.C3);
    j["all_pass"] = r.all_pass();
    return j;
}

Json to_json(const KappaChiRecipe& r) {
    Json j = to_json(r.kappa_half);
    j["kind"] = "kappa-chi-recipe";
    j["gamma2"] = {{"prime", "2"}, {"precision", r.gamma2.precision}, {"residue", dec(r.gamma2.residue)}};
    j["gamma3"] = {{"prime", "3"}, {"precision", r.gamma3.precision}, {"residue", dec(r.gamma3.residue)}};
    j["gamma_kappa_star"] = {{"prime", dec(r.gamma_kstar.prime)},
                             {"precision", r.gamma_kstar.precision},
                             {"residue", dec(r.gamma_kstar.residue)}};
    j["delta2"] = r.delta2;
    j["delta3"] = r.delta3;
    j["delta_kappa_star"] = r.delta_kstar;
    j["theta2"] = dec(r.theta2);
    j["theta3"] = dec(r.theta3);
    j["theta_kappa_star"] = dec(r.theta_kstar);
    Json h = Json::array();
    for (const Int& l : r.setH) h.push_back(dec(l));
    j["setH"] = h;
    j["chi_targets"] = targets_json(r.chi_targets);
    j["upsilon"] = dec(r.upsilon);
    j["chi_star"] = dec(r.chi_star);
    j["chi"] = dec(r.chi);
    j["chi_probable"] = r.chi_probable;
    j["n_star"] = dec(r.n_star);
    j["sigma"] = dec(r.sigma);
    j["chi_scan"] = scan_json(r.scan);
    j["gstar_bound_used"] = r.gstar_bound_used;
    return j;
}

Json to_json(const DReport& r) {
    Json j;
    const ConditionReport* all[] = {&r.D1, &r.D2, &r.D3, &r.D4, &r.D5, &r.D6, &r.D7};
    for (int i = 0; i < 7; ++i) j["D" + std::to_string(i + 1)] = cond(*all[i]);
    j["gstar_bound_used"] = r.gstar_bound_used;
    j["all_pass"] = r.all_pass();
    return j;
}

Json to_json(const FamilyTwoRecipe& r) {
    Json j;
    j["schema"] = kSchema;
    j["kind"] = "family-two-recipe";
    j["p"] = dec(r.params.p);
    j["lambda"] = dec(r.params.lambda);
    j["gamma"] = dec(r.params.gamma);
    j["eps0"] = dec(r.params.eps0);
    j["delta0"] = dec(r.params.delta0);
    j["mu"] = dec(r.params.mu);
    j["t0"] = dec(r.params.t0);
    j["F0"] = dec(r.params.F0);
    if (r.params.provenance) {
        const auto& pv = *r.params.provenance;
        Json q;
        q["eps_star"] = dec(pv.eps_star);
        q["delta_star"] = dec(pv.delta_star);
        q["s_star"] = dec(pv.s_star);
        q["t1"] = dec(pv.t1);
        q["t2"] = dec(pv.t2);
        q["t3"] = dec(pv.t3);
        q["t4"] = dec(pv.t4);
        q["t5"] = dec(pv.t5);
        q["pi"] = dec(pv.pi);
        q["u"] = pv.u;
        q["F1"] = dec(pv.F1);
        q["H"] = dec(pv.H);
        q["P2_star"] = dec(pv.P2_star);
        q["R2_star"] = dec(pv.R2_star);
        q["Q1_star"] = dec(pv.Q1_star);
        q["mu1"] = dec(pv.mu1);
        q["E1"] = dec(pv.E1);
        q["E2"] = dec(pv.E2);
        q["E1_odd"] = dec(pv.E1_odd);
        q["E2_odd"] = dec(pv.E2_odd);
        q["E1_two_val"] = pv.E1_two_val;
        q["E2_two_val"] = pv.E2_two_val;
        j["provenance"] = q;
    }
    j["septuple"] = to_json(r.septuple);
    j["n_EG"] = dec(r.n_EG);
    j["schinzel_path"] = r.schinzel_path;
    j["scan"] = scan_json(r.scan);
    return j;
}

Json to_json(const CurveSequence& s) {
    Json j;
    j["schema"] = kSchema;
    j["kind"] = "curve-sequence";
    switch (s.family) {
        case SequenceFamily::mordell: j["family"] = "mordell"; break;
        case SequenceFamily::fermat: j["family"] = "fermat"; break;
        default: j["family"] = "generic-hyperelliptic";
    }
    if (s.p != 0) j["p"] = dec(s.p);
    j["n0"] = s.n0;
    j["n1"] = s.n1;
    j["h"] = s.h;
    if (s.eps) j["eps"] = s.eps;
    if (s.kappa != 0) {
        j["kappa"] = dec(s.kappa);
        j["kappa_star"] = dec(s.kappa_star);
    }
    if (s.chi != 0) j["chi"] = dec(s.chi);
    if (!s.F.empty()) {
        Json f = Json::array();
        for (const Int& c : s.F) f.push_back(dec(c));
        j["F"] = f;
        j["m"] = s.mexp;
    }
    Json lv = Json::array();
    for (const auto& l : s.levels) {
        lv.push_back({{"level", l.index},
                      {"exponent_n", dec(l.exponent_n)},
                      {"morphism_exponent", dec(l.morphism_exp_to_prev)}});
    }
    j["levels"] = lv;
    return j;
}

Json to_json(const DccReport& r) {
    Json j;
    j["schema"] = kSchema;
    j["kind"] = "dcc-report";
    j["dcc_satisfied"] = r.dcc_satisfied;
    j["morphisms_checked"] = r.morphisms_checked;
    if (!r.note.empty()) j["note"] = r.note;
    Json lv = Json::array();
    for (const auto& l : r.levels) {
        Json e;
        e["level"] = l.level;
        e["genus"] = dec(l.genus);
        e["verdict"] = verdict_name(l.verdict);
        e["evidence"] = l.evidence;
        lv.push_back(e);
    }
    j["levels"] = lv;
    if (r.counterexample) j["counterexample"] = to_json(*r.counterexample);
    return j;
}

// ------------------------------------------------------------ check-cert --

namespace {

bool reverify_place(const Json& pj, const Int& p, unsigned n, const Int& E, const Int& G,
                    bool fermat, const Int& cx, const Int& cy, const Int& cz, unsigned m,
                    std::string& why) {
    std::string verdict = pj.at("verdict");
    if (verdict != "solvable") {
        why = "place " + pj.at("place").get<std::string>() + " not marked solvable";
        return false;
    }
    std::string method = pj.at("method");
    if (pj.at("place") == "inf" || method == "hasse-weil" || method == "real-analysis") return true;
    Int l(pj.at("place").get<std::string>());
    if (!pj.contains("witness")) {
        why = "finite place without witness";
        return false;
    }
    const Json& w = pj.at("witness");
    unsigned t = w.at("derivative_valuation");
    long vv = w.at("value_valuation");
    unsigned need = 2 * t + 1;
    if (method == "hensel-witness" && vv >= 0 && (unsigned)vv < need) {
        why = "witness margin below 2t+1 at place " + l.get_str();
        return false;
    }
    std::vector<Int> coords;
    for (const auto& cj : w.at("coords")) coords.push_back(Int(cj.get<std::string>()));
    Int mod = pow_ui(l, std::max<unsigned>(need, 1));
    std::string chart = w.at("chart");
    Int value;
    if (!fermat) {
        if (coords.size() != 2) {
            why = "bad witness arity";
            return false;
        }
        const Int &x = coords[0], &z = coords[1];
        if (chart == "affine")
            value = (p * z % mod * z - E % mod * E % mod * pow_mod(x, Int(12ul * n), mod) +
                     G % mod * G) %
                    mod;
        else
            value = (p * z % mod * z - E % mod * E + G % mod * G % mod * pow_mod(x, Int(12ul * n), mod)) %
                    mod;
    } else {
        Int x, y, z;
        if (chart == "projective" && coords.size() == 3) {
            x = coords[0];
            y = coords[1];
            z = coords[2];
        } else if (coords.size() == 2) {
            if (chart == "z=1") {
                x = coords[0];
                y = coords[1];
                z = 1;
            } else if (chart == "y=1") {
                x = coords[0];
                z = coords[1];
                y = 1;
            } else {
                y = coords[0];
                z = coords[1];
                x = 1;
            }
        } else {
            why = "bad witness arity";
            return false;
        }
        value = (cx % mod * pow_mod(x, Int((unsigned long)m), mod) +
                 cy % mod * pow_mod(y, Int((unsigned long)m), mod) +
                 cz % mod * pow_mod(z, Int((unsigned long)m), mod)) %
                mod;
    }
    if (value % mod != 0) {
        why = "witness does not satisfy the curve to margin at place " + l.get_str();
        return false;
    }
    return true;
}

}  // namespace

bool check_certificate(const Json& j, std::string& why, const SearchCaps& caps) {
    if (j.value("schema", "") != kSchema) {
        why = "unknown schema";
        return false;
    }
    if (j.value("kind", "") != "counterexample-certificate") {
        why = "not a counterexample certificate";
        return false;
    }
    const Json& curve = j.at("curve");
    Septuple s = septuple_from_json(j.at("septuple"));
    Int p(curve.at("p").get<std::string>());
    unsigned n = curve.at("n");
    std::vector<Int> hints;
    for (const auto& hj : j.at("metadata").at("hint_primes")) hints.push_back(Int(hj.get<std::string>()));

    FmContext ctx(p, n);
    FmReport fm = verify_fm(ctx, s, hints, caps);
    if (!fm.pass()) {
        why = "Hypothesis FM re-verification failed";
        return false;
    }

    bool fermat = curve.at("type") == "fermat";
    Int E = fermat ? Int(0) : Int(curve.at("E").get<std::string>());
    Int G = fermat ? Int(0) : Int(curve.at("G").get<std::string>());
    Int cx = fermat ? Int(curve.at("cx").get<std::string>()) : Int(0);
    Int cy = fermat ? Int(curve.at("cy").get<std::string>()) : Int(0);
    Int cz = fermat ? Int(curve.at("cz").get<std::string>()) : Int(0);
    unsigned m = fermat ? (unsigned)curve.at("m") : 0;

    const Json& places = j.at("places");
    if (!places.at("all_solvable").get<bool>()) {
        why = "certificate does not claim everywhere-local solvability";
        return false;
    }
    for (const auto& pj : places.at("places"))
        if (!reverify_place(pj, p, n, E, G, fermat, cx, cy, cz, m, why)) return false;

    // recompute the sampled invariants
    MordellCurve model;
    model.p = p;
    model.n = n;
    model.E = s.E;
    model.G = s.G;
    Rat sum(0);
    std::vector<std::string> seen;
    for (const auto& sj : j.at("brauer_samples")) {
        Place pl = sj.at("place") == "inf" ? Place::infinity()
                                           : Place::at(Int(sj.at("place").get<std::string>()));
        LocalPoint pt;
        pt.place = pl;
        unsigned prec = sj.at("point").at("precision");
        pt.x = PadicApprox{pl.l, prec, Int(sj.at("point").at("x").get<std::string>())};
        pt.z = PadicApprox{pl.l, prec, Int(sj.at("point").at("z").get<std::string>())};
        Rat inv = brauer_invariant_at(ctx, s, model, pl, pt);
        std::string stated = sj.at("invariant");
        std::string got = inv.get_den() == 1 ? inv.get_num().get_str()
                                             : inv.get_num().get_str() + "/" + inv.get_den().get_str();
        if (got != stated) {
            why = "invariant mismatch at place " + pl.str();
            return false;
        }
        if (std::find(seen.begin(), seen.end(), pl.str()) == seen.end()) {
            seen.push_back(pl.str());
            sum += inv;
        }
    }
    mpz_fdiv_r(sum.get_num_mpz_t(), sum.get_num_mpz_t(), sum.get_den_mpz_t());
    sum.canonicalize();
    if (sum != Rat(1, 2)) {
        why = "sampled invariant sum is not 1/2 mod 1";
        return false;
    }
    why.clear();
    return true;
}

}  // namespace hf
