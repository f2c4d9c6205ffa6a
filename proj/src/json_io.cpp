#include "cy3/json_io.hpp"

#include "cy3/error.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <sstream>
#include <thread>

namespace cy3 {

namespace {

const Z kSafeMax = (Z(1) << 53) - 1;

Json ray_list(const std::vector<Ray2>& rays) {
    Json a = Json::array();
    for (const auto& r : rays) a.push_back(to_json(r));
    return a;
}

template <class T>
Json optional_json(const std::optional<T>& v) {
    return v ? to_json(*v) : Json(nullptr);
}

std::string kind_text(FormMode m) { return m == FormMode::Topological ? "topological" : "normal_form"; }

const Json& member(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw DomainError("schema", std::string("missing field \"") + key + "\"");
    return j.at(key);
}

}  // namespace

Json to_json(const Z& z) {
    if (abs(z) <= kSafeMax) return Json(z.get_si());
    return Json(z.get_str());
}

Json to_json(const Q& q) { return Json(to_string(q)); }

Json to_json(const DivisorClass& d) {
    Json a = Json::array();
    for (const auto& x : d.coords()) a.push_back(to_json(x));
    return a;
}

Json to_json(const RealAlgebraic& a) {
    Json poly = Json::array();
    for (const auto& c : a.poly()) poly.push_back(to_json(c));
    return Json{{"poly", poly}, {"interval", Json::array({to_json(a.lo()), to_json(a.hi())})}};
}

Json to_json(const Ray2& r) {
    if (r.is_integral()) return Json{{"int", Json::array({to_json(r.x()), to_json(r.y())})}};
    return Json{{"alg", Json{{"chart", r.xsign()}, {"slope", to_json(r.slope())}}}};
}

Json to_json(const Cone2& c) { return Json{{"lo", to_json(c.lo())}, {"hi", to_json(c.hi())}}; }

Json to_json(const CubicCase& c) {
    const char* letter = c.tag == CubicTag::ThreeDistinctReal ? "a" : c.tag == CubicTag::DoubleRoot ? "b" : "c";
    return Json{{"case", to_string(c.tag)},
                {"label", letter},
                {"discriminant", to_json(c.discriminant)},
                {"vanishing_rays", ray_list(c.vanishing_rays)}};
}

Json to_json(const ComponentSet& s) {
    Json a = Json::array();
    for (const auto& c : s.components) a.push_back(to_json(c));
    return a;
}

Json to_json(const DeltaResult& d) {
    return Json{{"ray", to_json(d.ray)}, {"e_dot_delta_trivial", d.e_dot_delta_trivial}};
}

Json to_json(const MovBound& m) {
    return Json{{"r", to_json(m.r)},
                {"branch", to_string(m.branch)},
                {"alpha_bound", optional_json(m.alpha_bound)},
                {"beta_star", optional_json(m.beta_star)},
                {"base", to_json(m.base)}};
}

Json to_json(const RelevantM& c) {
    return Json{{"m", c.m}, {"floor", to_json(c.floor)}, {"lo", to_json(c.lo)}, {"hi", to_json(c.hi)}};
}

Json to_json(const EffectivityResult& e) {
    Json j{{"m", e.m ? Json(*e.m) : Json(nullptr)}, {"chi", e.m ? to_json(e.chi_at_m) : Json(nullptr)}};
    if (e.ceil_coeff) j["ceil_coeff"] = to_json(*e.ceil_coeff);
    if (e.certificate) j["certificate"] = to_json(*e.certificate);
    return j;
}

Json to_json(const SurfacePairCandidate& p) {
    Json corr = Json::array();
    for (const auto& f : p.corrections) {
        Json counts = Json::object();
        for (const auto& [d, n] : f.counts) counts[d.get_str()] = to_json(n);
        corr.push_back(Json{{"eta_pairing", to_json(f.eta_pairing)}, {"counts", counts}});
    }
    return Json{{"e_cubed", to_json(p.e_cubed)},
                {"c2_e", to_json(p.c2_e)},
                {"kind", to_string(p.kind)},
                {"root", Json::array({to_json(p.root_e3), to_json(p.root_c2e)})},
                {"corrections", corr},
                {"neg18", neg18_filter(p)}};
}

Json to_json(const SurfaceClassCandidate& s) {
    Json j{{"class", to_json(s.cls)},
           {"e_cubed", to_json(s.e_cubed)},
           {"c2_e", to_json(s.c2_e)},
           {"degenerate", s.degenerate}};
    if (s.family_direction) j["family_direction"] = to_json(*s.family_direction);
    return j;
}

Json to_json(const SlopeBound& s) {
    Json ex = Json::array();
    for (const auto& [a, b] : s.exceptional) ex.push_back(Json::array({to_json(a), to_json(b)}));
    return Json{{"c", to_json(s.c)}, {"c_prime", to_json(s.c_prime)}, {"exceptional", ex}};
}

Json to_json(const MovableCandidate& m) {
    Json co = Json::array();
    for (const auto& a : m.coeffs) co.push_back(to_json(a));
    return Json{{"l", to_json(m.l)}, {"coeffs", co}};
}

Json to_json(const C2LineRelation& r) {
    Json per = Json::array();
    for (const auto& p : r.per_component) {
        Json j{{"component", p.component}, {"relation", to_string(p.relation)}};
        if (p.sector) j["sector"] = *p.sector;
        per.push_back(j);
    }
    return Json{{"direction", to_json(r.direction)},
                {"on_cubic_root", r.on_cubic_root},
                {"on_hessian_root", r.on_hessian_root},
                {"per_component", per}};
}

Json forms_to_json(const TrilinearForm& t, const LinearFormC2& c) {
    Json tri = Json::object();
    const int n = t.rank();
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j)
            for (int k = j; k < n; ++k) {
                std::string key = std::to_string(i + 1) + std::to_string(j + 1) + std::to_string(k + 1);
                if (n > 9) key = std::to_string(i + 1) + "," + std::to_string(j + 1) + "," + std::to_string(k + 1);
                tri[key] = to_json(t.at(i, j, k));
            }
    Json c2 = Json::array();
    for (const auto& x : c.coeffs()) c2.push_back(to_json(x));
    return Json{{"rank", n}, {"mode", kind_text(t.mode())}, {"trilinear", tri}, {"c2", c2}};
}

Z integer_from_json(const Json& j) {
    if (j.is_number_integer()) return j.is_number_unsigned() ? Z(std::to_string(j.get<unsigned long long>()))
                                                             : Z(std::to_string(j.get<long long>()));
    if (j.is_string()) return parse_integer(j.get<std::string>());
    throw DomainError("schema", "expected an integer");
}

Q rational_from_json(const Json& j) {
    if (j.is_number_integer()) return Q(integer_from_json(j));
    if (j.is_string()) return parse_rational(j.get<std::string>());
    throw DomainError("schema", "expected an exact rational (integer or \"p/q\" string)");
}

DivisorClass class_from_json(const Json& j) {
    if (!j.is_array()) throw DomainError("schema", "expected a class as an integer array");
    std::vector<Z> v;
    for (const auto& x : j) v.push_back(integer_from_json(x));
    return DivisorClass(std::move(v));
}

RealAlgebraic algebraic_from_json(const Json& j) {
    const Json& poly = member(j, "poly");
    const Json& iv = member(j, "interval");
    if (!poly.is_array() || !iv.is_array() || iv.size() != 2) throw DomainError("schema", "malformed algebraic number");
    std::vector<Z> coeffs;
    for (const auto& c : poly) coeffs.push_back(integer_from_json(c));
    return RealAlgebraic::from_root(coeffs, rational_from_json(iv[0]), rational_from_json(iv[1]));
}

Ray2 ray_from_json(const Json& j) {
    if (j.is_object() && j.contains("int")) {
        const Json& v = j.at("int");
        if (!v.is_array() || v.size() != 2) throw DomainError("schema", "malformed integral ray");
        return Ray2::integral(integer_from_json(v[0]), integer_from_json(v[1]));
    }
    const Json& a = member(j, "alg");
    const Json& chart = member(a, "chart");
    if (!chart.is_number_integer()) throw DomainError("schema", "ray chart must be 1 or -1");
    return Ray2::sloped(chart.get<int>(), algebraic_from_json(member(a, "slope")));
}

FormsState forms_from_json(const Json& j) {
    if (!j.is_object()) throw DomainError("schema", "forms instance must be a JSON object");
    const Json& rank_j = member(j, "rank");
    if (!rank_j.is_number_integer() || rank_j.get<long long>() < 1 || rank_j.get<long long>() > 64)
        throw DomainError("schema", "rank must be a positive integer");
    const int rank = rank_j.get<int>();
    FormMode mode = FormMode::Topological;
    if (j.contains("mode")) {
        const Json& m = j.at("mode");
        if (m == "topological") mode = FormMode::Topological;
        else if (m == "normal_form") mode = FormMode::NormalForm;
        else throw DomainError("schema", "mode must be \"topological\" or \"normal_form\"");
    }
    const Json& tri = member(j, "trilinear");
    if (!tri.is_object()) throw DomainError("schema", "trilinear must be an object");
    std::map<TrilinearForm::Key, Q> entries;
    for (const auto& [key, value] : tri.items()) {
        std::vector<int> idx;
        std::string cur;
        auto flush = [&] {
            if (cur.empty()) throw DomainError("schema", "bad trilinear key \"" + key + "\"");
            idx.push_back(std::stoi(cur) - 1);
            cur.clear();
        };
        if (key.find(',') != std::string::npos) {
            for (char ch : key) {
                if (ch == ',') flush();
                else if (std::isdigit(static_cast<unsigned char>(ch))) cur += ch;
                else throw DomainError("schema", "bad trilinear key \"" + key + "\"");
            }
            flush();
        } else {
            for (char ch : key) {
                if (!std::isdigit(static_cast<unsigned char>(ch)))
                    throw DomainError("schema", "bad trilinear key \"" + key + "\"");
                cur = std::string(1, ch);
                flush();
            }
        }
        if (idx.size() != 3) throw DomainError("schema", "trilinear keys need three indices: \"" + key + "\"");
        for (int i : idx)
            if (i < 0 || i >= rank) throw DomainError("index", "trilinear index out of range in \"" + key + "\"");
        TrilinearForm::Key k{idx[0], idx[1], idx[2]};
        std::sort(k.begin(), k.end());
        Q v = rational_from_json(value);
        auto [it, inserted] = entries.emplace(k, v);
        if (!inserted && it->second != v) throw DomainError("symmetry", "conflicting entries for \"" + key + "\"");
    }
    const Json& c2j = member(j, "c2");
    if (!c2j.is_array() || c2j.size() != static_cast<std::size_t>(rank))
        throw DomainError("dimension", "c2 must list one integer per basis class");
    std::vector<Z> c2;
    for (const auto& x : c2j) c2.push_back(integer_from_json(x));
    return {TrilinearForm(rank, entries, mode), LinearFormC2(std::move(c2))};
}

Json parse_json(const std::string& text) {
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw DomainError("parse", e.what());
    }
}

namespace {

Json params_json(const AnalysisParams& p) {
    return Json{{"mu0", p.mu0 ? to_json(*p.mu0) : Json(nullptr)},
                {"r", p.r},
                {"m_cap", p.m_cap},
                {"n_cap", p.n_cap},
                {"node_cap", p.node_cap},
                {"c2e_upper", to_json(p.c2e_upper)},
                {"l_hint", p.l_hint ? to_json(*p.l_hint) : Json(nullptr)}};
}

Json strings(const std::vector<std::string>& v) {
    Json a = Json::array();
    for (const auto& s : v) a.push_back(s);
    return a;
}

Json candidate_json(const CandidateReport& c) {
    Json kinds = Json::array();
    for (auto k : c.kinds) kinds.push_back(to_string(k));
    Json j{{"class", to_json(c.cls)},
           {"e_cubed", to_json(c.e_cubed)},
           {"c2_e", to_json(c.c2_e)},
           {"kinds", kinds},
           {"delta", optional_json(c.delta)},
           {"mov_bound", optional_json(c.mov)},
           {"delta_effectivity", optional_json(c.delta_effectivity)}};
    if (c.roundup) {
        const auto& r = *c.roundup;
        Json rj{{"d0", to_json(r.d0)}, {"e1", to_json(r.e1)}, {"lambda", to_json(r.lambda)},
                {"result", optional_json(r.result)}};
        if (!r.error.empty()) rj["error"] = r.error;
        j["roundup"] = rj;
    } else {
        j["roundup"] = nullptr;
    }
    if (c.fixed_part) {
        Json fp = Json::array();
        for (const auto& m : *c.fixed_part) fp.push_back(to_json(m));
        j["fixed_part"] = fp;
    } else {
        j["fixed_part"] = nullptr;
    }
    j["diagnostics"] = strings(c.diagnostics);
    return j;
}

Json component_json(const ComponentReport& c) {
    Json cands = Json::array();
    for (const auto& x : c.candidates) cands.push_back(candidate_json(x));
    Json excl = Json::array();
    for (const auto& x : c.excluded)
        excl.push_back(Json{{"class", to_json(x.cls)},
                            {"e_cubed", to_json(x.e_cubed)},
                            {"c2_e", to_json(x.c2_e)},
                            {"reason", x.reason}});
    Json fam = Json::array();
    for (const auto& f : c.families)
        fam.push_back(Json{{"base", to_json(f.base)},
                           {"direction", to_json(f.direction)},
                           {"e_cubed", to_json(f.e_cubed)},
                           {"c2_e", to_json(f.c2_e)}});
    Json subs = Json::array();
    for (const auto& s : c.subcones)
        subs.push_back(Json{{"cone", to_json(s.cone)}, {"d", to_json(s.d)}, {"effectivity", to_json(s.effectivity)}});
    Json scen = Json::array();
    for (const auto& s : c.scenarios) {
        Json idx = Json::array();
        for (auto i : s.candidates) idx.push_back(i);
        scen.push_back(Json{{"tag", to_string(s.tag)},
                            {"summary", s.summary},
                            {"candidates", idx},
                            {"assumptions", strings(s.assumptions)}});
    }
    Json line = nullptr;
    if (c.c2_line) {
        line = Json{{"relation", to_string(c.c2_line->relation)}};
        if (c.c2_line->sector) line["sector"] = *c.c2_line->sector;
    }
    return Json{{"index", c.index},
                {"cone", to_json(c.cone)},
                {"canonical_d", to_json(c.canonical_d)},
                {"effectivity", to_json(c.effectivity)},
                {"candidates", cands},
                {"excluded", excl},
                {"families", fam},
                {"parametric", Json{{"marker", "parametric"},
                                    {"condition", "c2.E > 0 and E^3 < 0"},
                                    {"constraints", Json::array({"b <= c a / 2 + 18 / (k1 a)",
                                                                 "E^3 + (c2.E / 2)^3 >= -18"})}}},
                {"subcones", subs},
                {"c2_line", line},
                {"scenarios", scen},
                {"notes", strings(c.notes)}};
}

}  // namespace

Json report_to_json(const AnalysisReport& r, const TrilinearForm& t, const LinearFormC2& c) {
    Json validation{{"ok", r.validation.ok},
                    {"waived", r.validation_waived},
                    {"witness", optional_json(r.validation.witness)},
                    {"message", r.validation.message}};
    Json per = Json::array();
    for (const auto& comp : r.per_component) per.push_back(component_json(comp));
    Json verdict = nullptr;
    if (r.verdict) verdict = Json{{"code", r.verdict->code}, {"message", r.verdict->message}};
    return Json{{"schema", "cy3-report/1"},
                {"input", forms_to_json(t, c)},
                {"params", params_json(r.params)},
                {"validation", validation},
                {"cubic_case", optional_json(r.cubic)},
                {"components", optional_json(r.components)},
                {"verdict", verdict},
                {"c2_line", optional_json(r.c2_line)},
                {"per_component", per},
                {"metadata", Json{{"very_ampleness_constants", Json::array({10, 14})},
                                  {"out_of_scope", Json::array({"h0", "kahler_component_selection",
                                                                "realization_of_candidates"})},
                                  {"notes", strings(r.notes)}}}};
}

std::string report_text(const AnalysisReport& r) {
    std::ostringstream o;
    o << "mode: " << kind_text(r.mode) << (r.validation_waived ? " (validation waived)" : "") << "\n";
    if (r.cubic) o << "cubic: " << to_string(r.cubic->tag) << " (discriminant " << to_string(r.cubic->discriminant) << ")\n";
    if (r.components) o << "components: " << r.components->components.size() << "\n";
    if (r.verdict) {
        o << "verdict: " << r.verdict->code << ": " << r.verdict->message << "\n";
        return o.str();
    }
    for (const auto& c : r.per_component) {
        o << "component " << c.index << ": [" << c.cone.lo().to_string() << ", " << c.cone.hi().to_string() << "]\n";
        o << "  canonical D " << to_string(c.canonical_d) << ", m = "
          << (c.effectivity.m ? std::to_string(*c.effectivity.m) : std::string("none")) << "\n";
        if (c.c2_line) o << "  c2 = 0 line: " << to_string(c.c2_line->relation) << "\n";
        o << "  candidates: " << c.candidates.size() << ", excluded: " << c.excluded.size() << "\n";
        for (const auto& cand : c.candidates) {
            o << "    E = " << to_string(cand.cls) << " (E^3 = " << cand.e_cubed << ", c2.E = " << cand.c2_e << ")";
            if (cand.delta) o << " Delta " << cand.delta->ray.to_string();
            if (cand.mov) o << " R " << cand.mov->r.to_string();
            o << "\n";
        }
        for (const auto& s : c.scenarios) o << "  [" << to_string(s.tag) << "] " << s.summary << "\n";
        for (const auto& n : c.notes) o << "  note: " << n << "\n";
    }
    return o.str();
}

namespace {

void flatten(const Json& j, const std::string& path, std::ostringstream& o) {
    if (j.is_object()) {
        for (const auto& [k, v] : j.items()) flatten(v, path.empty() ? k : path + "." + k, o);
    } else if (j.is_array() && !j.empty() && (j.front().is_object() || j.front().is_array())) {
        for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], path + "[" + std::to_string(i) + "]", o);
    } else {
        o << path << ": " << (j.is_string() ? j.get<std::string>() : j.dump()) << "\n";
    }
}

}  // namespace

std::string json_text(const Json& j) {
    std::ostringstream o;
    flatten(j, "", o);
    return o.str();
}

std::vector<JsonlRecord> ingest_jsonl(std::istream& in) {
    std::vector<JsonlRecord> out;
    std::string line;
    std::size_t n = 0;
    while (std::getline(in, line)) {
        ++n;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        JsonlRecord rec;
        rec.line = n;
        try {
            rec.forms = forms_from_json(parse_json(line));
        } catch (const DomainError& e) {
            rec.error_code = e.code();
            rec.error_message = e.what();
        }
        out.push_back(std::move(rec));
    }
    return out;
}

std::vector<std::string> analyze_batch(const std::vector<JsonlRecord>& records, const AnalysisParams& params,
                                       int jobs) {
    std::vector<std::string> out(records.size());
    auto work = [&](std::size_t i) {
        const auto& rec = records[i];
        Json j{{"line", rec.line}};
        if (!rec.forms) {
            j["error"] = Json{{"code", rec.error_code}, {"message", rec.error_message}};
        } else {
            try {
                auto rep = analyze(rec.forms->trilinear, rec.forms->c2, params);
                j["report"] = report_to_json(rep, rec.forms->trilinear, rec.forms->c2);
            } catch (const DomainError& e) {
                j["error"] = Json{{"code", e.code()}, {"message", e.what()}};
            } catch (const std::exception& e) {
                j["error"] = Json{{"code", "internal"}, {"message", e.what()}};
            }
        }
        out[i] = j.dump();
    };
    const std::size_t workers = std::max<std::size_t>(1, std::min<std::size_t>(jobs < 1 ? 1 : jobs, records.size()));
    if (workers <= 1) {
        for (std::size_t i = 0; i < records.size(); ++i) work(i);
        return out;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (std::size_t i; (i = next.fetch_add(1)) < records.size();) work(i);
        });
    pool.clear();
    return out;
}

}  // namespace cy3
