#include "cy3/cli.hpp"

#include "cy3/error.hpp"
#include "cy3/json_io.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

namespace cy3 {

namespace {

// Reads --config files written as JSON; nested objects select subcommands.
class JsonConfig : public CLI::Config {
public:
    std::string to_config(const CLI::App*, bool, bool, std::string) const override { return "{}\n"; }

    std::vector<CLI::ConfigItem> from_config(std::istream& input) const override {
        std::stringstream ss;
        ss << input.rdbuf();
        Json j;
        try {
            j = Json::parse(ss.str());
        } catch (const nlohmann::json::parse_error& e) {
            throw CLI::ConversionError(std::string("config: ") + e.what());
        }
        if (!j.is_object()) throw CLI::ConversionError("config: top level must be an object");
        std::vector<CLI::ConfigItem> items;
        collect(j, {}, items);
        return items;
    }

private:
    static std::string scalar(const Json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

    static void collect(const Json& j, const std::vector<std::string>& parents, std::vector<CLI::ConfigItem>& items) {
        for (const auto& [key, value] : j.items()) {
            if (value.is_object()) {
                auto next = parents;
                next.push_back(key);
                collect(value, next, items);
                continue;
            }
            CLI::ConfigItem item;
            item.parents = parents;
            item.name = key;
            if (value.is_array()) {
                for (const auto& v : value) item.inputs.push_back(scalar(v));
            } else {
                item.inputs.push_back(scalar(value));
            }
            items.push_back(std::move(item));
        }
    }
};

struct Caps {
    long m_cap = 10000;
    long n_cap = 10000;
    long node_cap = kDefaultNodeCap;
    long c2e_cap = 10000;
};

// CY3_DEFAULT_CAPS="m_cap=N,n_cap=N,node_cap=N,c2e_cap=N" (any subset).
Caps caps_from_env() {
    Caps caps;
    const char* env = std::getenv("CY3_DEFAULT_CAPS");
    if (!env) return caps;
    std::stringstream ss(env);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        auto eq = item.find('=');
        if (eq == std::string::npos) throw UsageError("CY3_DEFAULT_CAPS: expected key=value, got \"" + item + "\"");
        std::string key = item.substr(0, eq);
        long v = 0;
        try {
            std::size_t used = 0;
            v = std::stol(item.substr(eq + 1), &used);
            if (used != item.size() - eq - 1) throw std::invalid_argument("trailing");
        } catch (const std::exception&) {
            throw UsageError("CY3_DEFAULT_CAPS: bad value in \"" + item + "\"");
        }
        if (v < 1) throw UsageError("CY3_DEFAULT_CAPS: caps must be positive");
        if (key == "m_cap") caps.m_cap = v;
        else if (key == "n_cap") caps.n_cap = v;
        else if (key == "node_cap") caps.node_cap = v;
        else if (key == "c2e_cap") caps.c2e_cap = v;
        else throw UsageError("CY3_DEFAULT_CAPS: unknown key \"" + key + "\"");
    }
    return caps;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::stringstream ss(s);
    while (std::getline(ss, cur, sep)) out.push_back(cur);
    if (!s.empty() && s.back() == sep) out.emplace_back();
    return out;
}

// Argument text errors are usage errors; mathematical preconditions are domain errors.
Z arg_integer(const std::string& s, const std::string& what) {
    try {
        return parse_integer(s);
    } catch (const DomainError&) {
        throw UsageError(what + ": expected an integer, got \"" + s + "\"");
    }
}

Q arg_rational(const std::string& s, const std::string& what) {
    try {
        return parse_rational(s);
    } catch (const DomainError&) {
        throw UsageError(what + ": expected a rational p/q, got \"" + s + "\"");
    }
}

std::vector<Z> arg_integers(const std::string& s, const std::string& what) {
    std::vector<Z> v;
    for (const auto& part : split(s, ',')) v.push_back(arg_integer(part, what));
    if (v.empty()) throw UsageError(what + ": empty list");
    return v;
}

DivisorClass arg_class(const std::string& s, const std::string& what) {
    auto v = arg_integers(s, what);
    if (v.size() != 2) throw UsageError(what + ": expected x,y");
    return DivisorClass(std::move(v));
}

CurveCounts arg_counts(const std::string& s) {
    CurveCounts counts;
    for (const auto& part : split(s, ',')) {
        auto dn = split(part, ':');
        if (dn.size() != 2) throw UsageError("--nd: expected d:n pairs, got \"" + part + "\"");
        counts[arg_integer(dn[0], "--nd")] += arg_integer(dn[1], "--nd");
    }
    return counts;
}

std::string read_all(std::istream& in) {
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct Io {
    std::string input, output, format = "json", svg;
    std::istream* in;
    std::ostream* out;

    std::string read_text() const {
        if (input.empty() || input == "-") return read_all(*in);
        std::ifstream f(input);
        if (!f) throw DomainError("io", "cannot open input \"" + input + "\"");
        return read_all(f);
    }

    FormsState read_forms() const { return forms_from_json(parse_json(read_text())); }

    void write(const std::string& text) const {
        if (output.empty() || output == "-") {
            *out << text;
            return;
        }
        std::ofstream f(output);
        if (!f) throw DomainError("io", "cannot open output \"" + output + "\"");
        f << text;
    }

    void emit(const Json& j) const { write(format == "text" ? json_text(j) : j.dump(2) + "\n"); }

    void write_svg(const std::string& svg_text) const {
        std::ofstream f(svg);
        if (!f) throw DomainError("io", "cannot open svg output \"" + svg + "\"");
        f << svg_text;
    }
};

Scene report_scene(const AnalysisReport& rep, const TrilinearForm& t) {
    Scene s;
    if (!rep.cubic) return s;
    s = scene_for(t);
    for (const auto& comp : rep.per_component) {
        s.rays.push_back({comp.cone.lo(), RayKind::PEdge, ""});
        s.rays.push_back({comp.cone.hi(), RayKind::PEdge, ""});
        for (const auto& cand : comp.candidates) {
            s.rays.push_back({Ray2::from_class(cand.cls), RayKind::E, "E" + to_string(cand.cls)});
            if (cand.delta) s.rays.push_back({cand.delta->ray, RayKind::Delta, ""});
            if (cand.mov) s.rays.push_back({cand.mov->r, RayKind::R, ""});
        }
    }
    return s;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
    Caps caps;
    try {
        caps = caps_from_env();
    } catch (const UsageError& e) {
        err << e.what() << "\n";
        return 2;
    }

    CLI::App app{"Cup-product form analysis for Picard rank 2 threefolds", "cy3"};
    app.require_subcommand(1);
    app.fallthrough();
    Io io;
    io.in = &in;
    io.out = &out;
    app.add_option("-i,--input", io.input, "Input file (default stdin)");
    app.add_option("-o,--output", io.output, "Output file (default stdout)");
    app.add_option("--format", io.format, "Output format")->check(CLI::IsMember({"json", "text"}));
    bool json_config = false;
    for (std::size_t i = 0; i + 1 < args.size(); ++i)
        if (args[i] == "--config" && args[i + 1].size() >= 5 &&
            args[i + 1].compare(args[i + 1].size() - 5, 5, ".json") == 0)
            json_config = true;
    for (const auto& a : args)
        if (a.rfind("--config=", 0) == 0 && a.size() >= 5 && a.compare(a.size() - 5, 5, ".json") == 0)
            json_config = true;
    app.set_config("--config", "", "TOML or JSON file merged under command-line flags");
    if (json_config) app.config_formatter(std::make_shared<JsonConfig>());

    auto* classify = app.add_subcommand("classify", "Classify the cubic form");

    auto* cone = app.add_subcommand("cone", "Positive index components and root rays");
    cone->add_option("--svg", io.svg, "Write an SVG diagram");

    auto* surfaces = app.add_subcommand("surfaces", "Candidate (E^3, c2.E) pairs and classes");
    std::optional<std::string> c2_upper, e3_lower, slope_bound;
    bool classes = false;
    long denom = 1;
    surfaces->add_option("--c2-upper", c2_upper, "Upper bound for c2.E");
    surfaces->add_option("--e3-lower", e3_lower, "Lower bound for E^3");
    surfaces->add_flag("--classes", classes, "Solve for classes (needs -i forms)");
    surfaces->add_option("--slope-bound", slope_bound, "k1,k2 for the slope bound");
    surfaces->add_option("--denom", denom, "Denominator bound for the slope scan");

    auto* flop = app.add_subcommand("flop", "Apply flops to the forms");
    std::vector<std::string> etas, nds;
    bool inverse_flag = false;
    flop->add_option("--eta", etas, "Primitive flop class, repeatable")->required();
    flop->add_option("--nd", nds, "Curve counts d:n,... per --eta")->required();
    flop->add_flag("--inverse", inverse_flag, "Apply the inverse flops");

    std::string mu0_text, r_text = "1";
    std::optional<long> m_cap_opt, n_cap_opt;

    auto* rr = app.add_subcommand("rr", "Riemann-Roch effectivity for a class");
    std::string class_text;
    rr->add_option("--class", class_text, "Class x,y")->required();
    rr->add_option("--m-cap", m_cap_opt, "Largest m to try");

    auto* roundup = app.add_subcommand("roundup", "Round-up effectivity along an irrational ray");
    std::string d0_text, e_text, lambda_poly, lambda_interval;
    roundup->add_option("--d0", d0_text, "Class D0")->required();
    roundup->add_option("--e", e_text, "Class E")->required();
    roundup->add_option("--lambda-poly", lambda_poly, "Integer coefficients c0,c1,... of lambda's polynomial")
        ->required();
    roundup->add_option("--lambda-interval", lambda_interval, "Isolating interval lo,hi")->required();
    roundup->add_option("--mu0", mu0_text, "Fractional part threshold")->required();
    roundup->add_option("--m-cap", m_cap_opt, "Largest m to try");

    auto* threshold = app.add_subcommand("threshold", "Fibration threshold n");
    std::string branch_text = "k3", l_text, te_text;
    long m_value = 1;
    threshold->add_option("--branch", branch_text, "k3 or elliptic")->check(CLI::IsMember({"k3", "elliptic"}));
    threshold->add_option("--r", r_text, "Universal constant r");
    threshold->add_option("--class", class_text, "Class D")->required();
    threshold->add_option("--l", l_text, "Class L")->required();
    threshold->add_option("--e", te_text, "Class E")->required();
    threshold->add_option("--m", m_value, "Multiple m");
    threshold->add_option("--n-cap", n_cap_opt, "Largest n to try");

    std::optional<std::string> c2e_upper_text, l_hint_text;
    int jobs = 1;
    auto add_analysis_options = [&](CLI::App* sub) {
        sub->add_option("--mu0", mu0_text, "Fractional part threshold for round-up recipes");
        sub->add_option("--r", r_text, "Universal constant r");
        sub->add_option("--c2e-upper", c2e_upper_text, "Upper bound for c2.E of rigid candidates");
        sub->add_option("--m-cap", m_cap_opt, "Largest m to try");
        sub->add_option("--l-hint", l_hint_text, "Semi-ample movable class x,y");
    };
    auto* analyze_cmd = app.add_subcommand("analyze", "Full report for one forms instance");
    add_analysis_options(analyze_cmd);
    analyze_cmd->add_option("--svg", io.svg, "Write an SVG diagram");
    auto* batch = app.add_subcommand("batch", "Analyze a JSONL corpus");
    add_analysis_options(batch);
    batch->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);

    auto* render = app.add_subcommand("render", "SVG diagram of the cone structure");
    render->add_option("--svg", io.svg, "SVG path (default: output)");

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n" << app.help();
        return 2;
    } catch (const DomainError& e) {
        err << Json{{"error", Json{{"code", e.code()}, {"message", e.what()}}}}.dump() << "\n";
        return 1;
    }

    try {
        auto params = [&] {
            AnalysisParams p;
            p.m_cap = m_cap_opt.value_or(caps.m_cap);
            p.n_cap = n_cap_opt.value_or(caps.n_cap);
            p.node_cap = caps.node_cap;
            p.r = arg_integer(r_text, "--r").get_si();
            if (p.r < 1) throw DomainError("r_range", "r must be positive");
            if (!mu0_text.empty()) p.mu0 = arg_rational(mu0_text, "--mu0");
            if (c2e_upper_text) p.c2e_upper = arg_integer(*c2e_upper_text, "--c2e-upper");
            if (l_hint_text) p.l_hint = arg_class(*l_hint_text, "--l-hint");
            return p;
        };

        if (*classify) {
            auto f = io.read_forms();
            auto cc = classify_cubic(f.trilinear);
            Json j = to_json(cc);
            Json hess = Json::array();
            for (const auto& r : hessian_root_rays(f.trilinear)) hess.push_back(to_json(r));
            j["hessian_rays"] = hess;
            Json coeffs = Json::array();
            for (const auto& c : f.trilinear.cubic_coefficients()) coeffs.push_back(to_json(c));
            j["cubic_coefficients"] = coeffs;
            io.emit(j);
        } else if (*cone) {
            auto f = io.read_forms();
            auto cc = classify_cubic(f.trilinear);
            auto comps = positive_index_components(f.trilinear);
            Json hess = Json::array();
            for (const auto& r : hessian_root_rays(f.trilinear)) hess.push_back(to_json(r));
            Json cubic_rays = Json::array();
            for (const auto& r : cc.vanishing_rays) cubic_rays.push_back(to_json(r));
            io.emit(Json{{"case", to_string(cc.tag)},
                         {"components", to_json(comps)},
                         {"cubic_rays", cubic_rays},
                         {"hessian_rays", hess}});
            if (!io.svg.empty()) io.write_svg(render_svg(scene_for(f.trilinear)));
        } else if (*surfaces) {
            if (!c2_upper && !e3_lower && !slope_bound)
                throw UsageError("surfaces: give --c2-upper, --e3-lower or --slope-bound");
            Json j = Json::object();
            std::vector<SurfacePairCandidate> pairs;
            if (c2_upper) {
                Z up = arg_integer(*c2_upper, "--c2-upper");
                pairs = enumerate_pairs(up, caps.node_cap);
                if (e3_lower) {
                    Z lo = arg_integer(*e3_lower, "--e3-lower");
                    std::erase_if(pairs, [&](const auto& p) { return p.e_cubed < lo; });
                }
            } else if (e3_lower) {
                pairs = enumerate_pairs_by_cube(arg_integer(*e3_lower, "--e3-lower"), Z(caps.c2e_cap), caps.node_cap);
            }
            if (c2_upper || e3_lower) {
                Json pj = Json::array();
                for (const auto& p : pairs) pj.push_back(to_json(p));
                j["pairs"] = pj;
            }
            if (classes) {
                auto f = io.read_forms();
                Json cj = Json::array();
                for (const auto& p : pairs) {
                    Json sols = Json::array();
                    for (const auto& s : solve_classes(f.trilinear, f.c2, p.e_cubed, p.c2_e)) sols.push_back(to_json(s));
                    cj.push_back(Json{{"pair", Json::array({to_json(p.e_cubed), to_json(p.c2_e)})}, {"solutions", sols}});
                }
                j["classes"] = cj;
            }
            if (slope_bound) {
                auto ks = split(*slope_bound, ',');
                if (ks.size() != 2) throw UsageError("--slope-bound: expected k1,k2");
                j["slope_bound"] = to_json(
                    case_b_slope_bound(arg_rational(ks[0], "--slope-bound"), arg_rational(ks[1], "--slope-bound"), denom));
            }
            io.emit(j);
        } else if (*flop) {
            if (etas.size() != nds.size()) throw UsageError("flop: give one --nd per --eta");
            auto f = io.read_forms();
            std::vector<FlopData> seq;
            for (std::size_t i = 0; i < etas.size(); ++i) {
                FlopData d(arg_integers(etas[i], "--eta"), arg_counts(nds[i]));
                seq.push_back(inverse_flag ? inverse(d) : d);
            }
            if (inverse_flag) std::reverse(seq.begin(), seq.end());
            auto [state, log] = apply_sequence(f, seq);
            io.emit(forms_to_json(state.trilinear, state.c2));
        } else if (*rr) {
            auto f = io.read_forms();
            DivisorClass d = arg_class(class_text, "--class");
            long cap = m_cap_opt.value_or(caps.m_cap);
            auto eff = min_effectivity_m(f.trilinear, f.c2, d, cap);
            io.emit(Json{{"class", to_json(d)},
                         {"cube", to_json(cube(f.trilinear, d))},
                         {"c2", to_json(c2_eval(f.c2, d))},
                         {"m", eff.m ? Json(*eff.m) : Json(nullptr)},
                         {"chi", eff.m ? to_json(eff.chi_at_m) : Json(nullptr)},
                         {"chi_1", to_json(rr_chi(f.trilinear, f.c2, d, 1))},
                         {"m_cap", cap}});
        } else if (*roundup) {
            auto f = io.read_forms();
            auto iv = split(lambda_interval, ',');
            if (iv.size() != 2) throw UsageError("--lambda-interval: expected lo,hi");
            RealAlgebraic lambda = RealAlgebraic::from_root(arg_integers(lambda_poly, "--lambda-poly"),
                                                            arg_rational(iv[0], "--lambda-interval"),
                                                            arg_rational(iv[1], "--lambda-interval"));
            Q mu0 = arg_rational(mu0_text, "--mu0");
            auto res = roundup_effectivity(arg_class(d0_text, "--d0"), arg_class(e_text, "--e"), lambda, mu0,
                                           f.trilinear, f.c2, m_cap_opt.value_or(caps.m_cap));
            Json j = to_json(res);
            j["lambda"] = to_json(lambda);
            j["mu0"] = to_json(mu0);
            io.emit(j);
        } else if (*threshold) {
            auto f = io.read_forms();
            long r = arg_integer(r_text, "--r").get_si();
            auto branch = branch_text == "k3" ? FibrationBranch::K3Abelian : FibrationBranch::Elliptic;
            long cap = n_cap_opt.value_or(caps.n_cap);
            auto n = fibration_threshold(f.trilinear, f.c2, arg_class(class_text, "--class"), arg_class(l_text, "--l"),
                                         arg_class(te_text, "--e"), m_value, r, branch, cap);
            io.emit(Json{{"branch", to_string(branch)},
                         {"n", n ? Json(*n) : Json(nullptr)},
                         {"m", m_value},
                         {"r", r},
                         {"n_cap", cap}});
        } else if (*analyze_cmd) {
            auto f = io.read_forms();
            auto rep = analyze(f.trilinear, f.c2, params());
            if (io.format == "text") io.write(report_text(rep));
            else io.write(report_to_json(rep, f.trilinear, f.c2).dump(2) + "\n");
            if (!io.svg.empty()) io.write_svg(render_svg(report_scene(rep, f.trilinear)));
        } else if (*batch) {
            std::vector<JsonlRecord> records;
            if (io.input.empty() || io.input == "-") {
                records = ingest_jsonl(in);
            } else {
                std::ifstream f(io.input);
                if (!f) throw DomainError("io", "cannot open input \"" + io.input + "\"");
                records = ingest_jsonl(f);
            }
            std::string text;
            for (const auto& line : analyze_batch(records, params(), jobs)) text += line + "\n";
            io.write(text);
        } else if (*render) {
            auto f = io.read_forms();
            std::string svg = render_svg(scene_for(f.trilinear));
            if (io.svg.empty()) io.write(svg);
            else io.write_svg(svg);
        }
    } catch (const UsageError& e) {
        err << e.what() << "\n";
        return 2;
    } catch (const DomainError& e) {
        err << Json{{"error", Json{{"code", e.code()}, {"message", e.what()}}}}.dump() << "\n";
        return 1;
    } catch (const std::exception& e) {
        err << Json{{"error", Json{{"code", "internal"}, {"message", e.what()}}}}.dump() << "\n";
        return 1;
    }
    return 0;
}

}  // namespace cy3
