#include "splitred/scenario.hpp"

#include <map>
#include <sstream>

#include "splitred/conductor.hpp"
#include "splitred/parser.hpp"
#include "splitred/tamebase.hpp"
#include "splitred/tatesplit.hpp"
#include "splitred/weierstrass.hpp"

namespace splitred {

namespace {

using nlohmann::json;

[[noreturn]] void bad(const std::string& what) { throw schema_error(what); }

const json& need(const json& j, const char* key, const char* ctx) {
    auto it = j.find(key);
    if (it == j.end()) bad(std::string(ctx) + ": missing required field '" + key + "'");
    return *it;
}

long need_int(const json& j, const char* key, const char* ctx) {
    const json& v = need(j, key, ctx);
    if (!v.is_number_integer())
        bad(std::string(ctx) + ": field '" + key + "' must be an integer");
    return v.get<long>();
}

std::string need_str(const json& j, const char* key, const char* ctx) {
    const json& v = need(j, key, ctx);
    if (!v.is_string()) bad(std::string(ctx) + ": field '" + key + "' must be a string");
    return v.get<std::string>();
}

long opt_int(const json& j, const char* key, long dflt) {
    auto it = j.find(key);
    if (it == j.end()) return dflt;
    if (!it->is_number_integer()) bad(std::string("field '") + key + "' must be an integer");
    return it->get<long>();
}

// replaces every ${name} in s from the integer variable map
std::string substitute(const std::string& s, const std::map<std::string, long>& vars) {
    std::string out;
    std::size_t i = 0;
    while (i < s.size()) {
        if (s[i] == '$' && i + 1 < s.size() && s[i + 1] == '{') {
            std::size_t close = s.find('}', i + 2);
            if (close == std::string::npos) bad("unterminated ${...} substitution");
            std::string name = s.substr(i + 2, close - i - 2);
            auto it = vars.find(name);
            if (it == vars.end()) bad("unknown substitution variable '" + name + "'");
            out += std::to_string(it->second);
            i = close + 1;
        } else {
            out += s[i++];
        }
    }
    return out;
}

void substitute_tree(json& j, const std::map<std::string, long>& vars) {
    if (j.is_string()) {
        j = substitute(j.get<std::string>(), vars);
    } else if (j.is_object() || j.is_array()) {
        for (auto& child : j) substitute_tree(child, vars);
    }
}

search_budget budget_from(const json& analysis) {
    search_budget b;
    auto it = analysis.find("budget");
    if (it == analysis.end()) return b;
    if (!it->is_object()) bad("'budget' must be an object");
    b.s_max = static_cast<unsigned>(opt_int(*it, "s_max", b.s_max));
    b.max_enumeration =
        static_cast<std::uint64_t>(opt_int(*it, "max_enumeration",
                                           static_cast<long>(b.max_enumeration)));
    auto par = it->find("parallel");
    if (par != it->end()) b.parallel = par->get<bool>();
    return b;
}

elem parse_integral(const std::string& expr, const tower& tw, int lvl) {
    fe v = parse_element(expr, tw, lvl);
    return v.as_integral();
}

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += "\"";
    return out;
}

} // namespace

scenario parse_scenario(const json& doc) {
    if (!doc.is_object()) bad("scenario document must be a JSON object");
    long ver = need_int(doc, "schema_version", "scenario");
    if (ver != scenario_schema_version)
        bad("unsupported schema_version " + std::to_string(ver));

    scenario sc;
    sc.id = need_str(doc, "id", "scenario");

    std::map<std::string, long> vars;
    if (auto it = doc.find("vars"); it != doc.end()) {
        if (!it->is_object()) bad("'vars' must be an object of integers");
        for (auto& [k, v] : it->items()) {
            if (!v.is_number_integer()) bad("variable '" + k + "' must be an integer");
            vars[k] = v.get<long>();
        }
    }

    sc.id = substitute(sc.id, vars);

    json tw = need(doc, "tower", "scenario");
    json an = need(doc, "analysis", "scenario");
    substitute_tree(tw, vars);
    substitute_tree(an, vars);

    if (!tw.is_object()) bad("'tower' must be an object");
    sc.tspec.characteristic = static_cast<unsigned>(need_int(tw, "characteristic", "tower"));
    sc.tspec.p = static_cast<unsigned>(need_int(tw, "p", "tower"));
    sc.tspec.residue_degree = static_cast<unsigned>(opt_int(tw, "residue_degree", 1));
    sc.tspec.precision = static_cast<unsigned>(opt_int(tw, "precision", 40));
    if (auto it = tw.find("base_name"); it != tw.end()) sc.tspec.base_name = *it;
    if (auto it = tw.find("residue_poly"); it != tw.end()) {
        if (!it->is_array()) bad("'residue_poly' must be an array");
        for (const auto& c : *it) sc.tspec.residue_poly.push_back(c.get<unsigned>());
    }
    const json& levels = need(tw, "levels", "tower");
    if (!levels.is_array() || levels.empty()) bad("'levels' must be a non-empty array");
    for (const auto& l : levels) {
        level_spec ls;
        ls.name = need_str(l, "name", "level");
        ls.degree = static_cast<unsigned>(need_int(l, "degree", "level"));
        if (auto bc = l.find("binomial_const"); bc != l.end()) {
            // shorthand for the Eisenstein binomial t^degree + const
            if (!bc->is_string()) bad("'binomial_const' must be a string");
            ls.poly.assign(ls.degree + 1, "0");
            ls.poly[0] = bc->get<std::string>();
            ls.poly[ls.degree] = "1";
        } else {
            const json& poly = need(l, "poly", "level");
            if (!poly.is_array() || poly.size() != ls.degree + 1)
                bad("level '" + ls.name + "': 'poly' must list degree+1 coefficients");
            for (const auto& c : poly) {
                if (!c.is_string()) bad("polynomial coefficients must be strings");
                ls.poly.push_back(c.get<std::string>());
            }
        }
        sc.tspec.levels.push_back(std::move(ls));
    }

    if (!an.is_object()) bad("'analysis' must be an object");
    sc.kind = need_str(an, "kind", "analysis");
    static const char* kinds[] = {"tate_restriction", "type_iv", "type_i0star", "conductor",
                                  "tame_base"};
    bool known = false;
    for (const char* k : kinds)
        if (sc.kind == k) known = true;
    if (!known) bad("unknown analysis kind '" + sc.kind + "'");
    sc.analysis = std::move(an);
    return sc;
}

scenario_result run_scenario(const scenario& sc, unsigned precision_override) {
    tower_spec spec = sc.tspec;
    if (precision_override) spec.precision = precision_override;
    const json& an = sc.analysis;

    scenario_result out;
    out.id = sc.id;
    out.p = std::to_string(spec.p);
    if (auto it = an.find("d"); it != an.end() && it->is_number_integer())
        out.d = std::to_string(it->get<long>());
    else if (!spec.levels.empty())
        out.d = std::to_string(spec.levels.back().degree);

    auto tw = make_tower(spec);
    int top = tw->top_level();

    if (sc.kind == "tate_restriction") {
        elem q = parse_integral(need_str(an, "q", "tate_restriction"), *tw, top);
        auto E = make_tate_curve(*tw, top - 1, top, q);
        auto rep = split_status(E, budget_from(an));
        out.report = report_to_json(rep);
        out.inconclusive = rep.status == split_status_kind::Inconclusive;
        out.n = std::to_string(rep.n);
        out.v_p_n = std::to_string(rep.r);
        if (rep.lifting_exponent) out.lifting_exponent = std::to_string(*rep.lifting_exponent);
        out.status = to_string(rep.status);
        if (!rep.verdicts.empty())
            out.certificate = out.report["verdicts"].back()["certificate"].get<std::string>();
    } else if (sc.kind == "type_iv") {
        unsigned d = static_cast<unsigned>(need_int(an, "d", "type_iv"));
        elem z0 = tw->zero(top);
        auto E = make_curve(*tw, top, z0,
                            parse_integral(need_str(an, "a2", "type_iv"), *tw, top), z0,
                            parse_integral(need_str(an, "a4", "type_iv"), *tw, top),
                            parse_integral(need_str(an, "a6", "type_iv"), *tw, top));
        auto rep = analyze_type_IV(E, d);
        out.report = type_iv_to_json(rep);
        out.status = rep.res_split ? "Split" : "NotSplit";
        out.certificate = "ClosedForm";
    } else if (sc.kind == "type_i0star") {
        unsigned d = static_cast<unsigned>(need_int(an, "d", "type_i0star"));
        auto E = make_curve(*tw, top,
                            parse_integral(need_str(an, "a1", "type_i0star"), *tw, top),
                            parse_integral(need_str(an, "a2", "type_i0star"), *tw, top),
                            parse_integral(need_str(an, "a3", "type_i0star"), *tw, top),
                            parse_integral(need_str(an, "a4", "type_i0star"), *tw, top),
                            parse_integral(need_str(an, "a6", "type_i0star"), *tw, top));
        auto rep = analyze_type_I0star(E, d);
        out.report = type_i0star_to_json(rep);
        out.status = to_string(rep.status_Res);
        out.certificate = "ClosedForm";
    } else if (sc.kind == "conductor") {
        conductor_report rep;
        long delta_E = opt_int(an, "delta_E", 0);
        long v_diff;
        if (auto it = an.find("v_different"); it != an.end()) {
            v_diff = it->get<long>();
        } else {
            int lvl = static_cast<int>(opt_int(an, "different_level", top));
            v_diff = different_valuation(*tw, lvl);
        }
        rep.differents.emplace_back("L/K", v_diff);
        unsigned ext_deg =
            static_cast<unsigned>(opt_int(an, "extension_degree", static_cast<long>(spec.p)));
        bool unsafe = false;
        if (auto it = an.find("unsafe_degree"); it != an.end()) unsafe = it->get<bool>();
        long delta_A = swan_weil_restriction(delta_E, v_diff, spec.p, ext_deg, unsafe);
        rep.deltas.emplace_back("curve", delta_E);
        rep.deltas.emplace_back("restriction", delta_A);
        out.delta_swan = std::to_string(delta_A);
        if (an.contains("d_t")) {
            long d_t = need_int(an, "d_t", "conductor");
            long two_da = opt_int(an, "two_da", 0);
            long vKp = need_int(an, "vKp", "conductor");
            long bound = bk_bound(spec.p, vKp, d_t, two_da);
            rep.bk = bound;
            rep.lambdas.emplace_back("lambda_p(d_t)", lambda_p(d_t, spec.p));
            rep.lambdas.emplace_back("lambda_p(2d_a)", lambda_p(two_da, spec.p));
            out.bk_bound = std::to_string(bound);
        }
        out.report = conductor_report_to_json(rep);
        out.certificate = "Identity";
    } else { // tame_base
        reduction_datum datum;
        if (auto it = an.find("type"); it != an.end())
            datum.type = parse_kodaira(it->get<std::string>());
        if (auto it = an.find("e"); it != an.end()) datum.e = it->get<long>();
        if (auto it = an.find("toric_rank"); it != an.end())
            datum.toric_rank = it->get<long>();
        if (auto it = an.find("phi_order"); it != an.end())
            datum.phi_order = it->get<long>();
        if (auto it = an.find("tame"); it != an.end()) datum.tame = it->get<bool>();
        if (auto it = an.find("semiabelian"); it != an.end())
            datum.semiabelian = it->get<bool>();
        auto certs = tame_split_certificates(datum, spec.p);
        out.report = tame_report_to_json(datum, certs);
        if (an.contains("d")) {
            long d = need_int(an, "d", "tame_base");
            if (datum.type && an.contains("L_degree")) {
                auto dec = elliptic_split_after(*datum.type,
                                                need_int(an, "L_degree", "tame_base"),
                                                opt_int(an, "delta", 0),
                                                opt_int(an, "v_disc", 0), d, spec.p);
                out.status = dec.split ? "Split" : "NotSplit";
                out.certificate = dec.branch;
                out.report["decision"] = {{"split", dec.split}, {"branch", dec.branch}};
            } else if (datum.e) {
                auto g = jacobian_split_certificate(*datum.e, d, spec.p);
                out.status = g == split_guarantee::SplitGuaranteed ? "SplitGuaranteed"
                                                                   : "NoGuarantee";
                out.certificate = "JacobianTameBound";
                out.report["guarantee"] = out.status;
            }
        }
        if (out.certificate.empty() && !certs.empty()) out.certificate = certs.front().name;
    }

    out.report["scenario_id"] = sc.id;
    out.report["kind"] = sc.kind;
    return out;
}

std::string csv_header() {
    return "scenario_id,p,d,n,v_p_n,lifting_exponent,status,delta_swan,bk_bound,"
           "certificate,runtime_ms";
}

std::string csv_row(const scenario_result& r) {
    std::ostringstream os;
    // runtime_ms is pinned to 0 so that sweep output is byte-identical across
    // runs and thread counts
    os << csv_escape(r.id) << ',' << r.p << ',' << r.d << ',' << r.n << ',' << r.v_p_n << ','
       << r.lifting_exponent << ',' << r.status << ',' << r.delta_swan << ',' << r.bk_bound
       << ',' << csv_escape(r.certificate) << ",0";
    return os.str();
}

} // namespace splitred
