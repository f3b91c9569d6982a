// Copyright 2026 helegeo contributors
// SPDX-License-Identifier: Apache-2.0

#include "config.hpp"

#include <algorithm>
#include <regex>

#include "json.hpp"

namespace helegeo {

using nlohmann::json;

namespace {

int line_at(const std::string& text, std::size_t pos) {
    return 1 + static_cast<int>(std::count(text.begin(), text.begin() + std::min(pos, text.size()), '\n'));
}

// Line of the last key of a path, found by walking the quoted keys in order.
int line_of(const std::string& text, const std::vector<std::string>& path) {
    std::size_t pos = 0;
    for (const auto& key : path) {
        std::size_t p = text.find("\"" + key + "\"", pos);
        if (p == std::string::npos) return 0;
        pos = p + 1;
    }
    return path.empty() ? 0 : line_at(text, pos - 1);
}

class Reader {
public:
    explicit Reader(const std::string& text) : text_(text) {}

    [[noreturn]] void error(const std::vector<std::string>& path, const std::string& what) const {
        std::string dotted;
        for (const auto& k : path) dotted += (dotted.empty() ? "" : ".") + k;
        fail(ErrorKind::Schema, "config:" + std::to_string(line_of(text_, path)), dotted + ": " + what);
    }

    void only_keys(const json& obj, const std::vector<std::string>& path,
                   const std::vector<std::string>& allowed) const {
        if (!obj.is_object()) error(path, "must be an object");
        for (auto it = obj.begin(); it != obj.end(); ++it)
            if (std::find(allowed.begin(), allowed.end(), it.key()) == allowed.end()) {
                auto p = path;
                p.push_back(it.key());
                error(p, "unknown key");
            }
    }

    double number(const json& obj, std::vector<std::string> path, double def, double lo, double hi,
                  bool open_lo = false) const {
        const std::string key = path.back();
        if (!obj.contains(key)) return def;
        const json& v = obj.at(key);
        if (!v.is_number()) error(path, "must be a number");
        double x = v.get<double>();
        if (!std::isfinite(x) || x < lo || x > hi || (open_lo && x == lo))
            error(path, "must lie in " + std::string(open_lo ? "(" : "[") + fmt(lo) + ", " + fmt(hi) + "]");
        return x;
    }

    int integer(const json& obj, std::vector<std::string> path, int def, int lo, int hi) const {
        const std::string key = path.back();
        if (!obj.contains(key)) return def;
        const json& v = obj.at(key);
        if (!v.is_number_integer()) error(path, "must be an integer");
        long long x = v.get<long long>();
        if (x < lo || x > hi) error(path, "must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
        return static_cast<int>(x);
    }

private:
    static std::string fmt(double x) {
        char b[32];
        std::snprintf(b, sizeof b, "%g", x);
        return b;
    }
    const std::string& text_;
};

}  // namespace

std::string ScenarioConfig::name() const {
    switch (kind) {
        case Kind::Standard: return "standard";
        case Kind::Diffeo: return "diffeo:" + diffeo.name();
        case Kind::Tangency: return "tangency";
    }
    return "?";
}

bool ExportConfig::wants(const std::string& f) const {
    return std::find(formats.begin(), formats.end(), f) != formats.end();
}

const char* stage_name(Stage s) {
    switch (s) {
        case Stage::Synthesize: return "synthesize";
        case Stage::Envelope: return "envelope";
        case Stage::Geodesic: return "geodesic";
        case Stage::Singularity: return "singularity";
        case Stage::Simulate: return "simulate";
        case Stage::Verify: return "verify";
    }
    return "?";
}

Stage stage_from_name(const std::string& s) {
    for (Stage st : {Stage::Synthesize, Stage::Envelope, Stage::Geodesic, Stage::Singularity,
                     Stage::Simulate, Stage::Verify})
        if (s == stage_name(st)) return st;
    fail(ErrorKind::Schema, "stage", "unknown stage '" + s + "'");
}

cplx parse_complex(const std::string& s) {
    static const std::regex full(R"(\s*([+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)\s*(?:([+-])\s*((?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)?\s*i)?\s*)");
    static const std::regex imag(R"(\s*([+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)?\s*i\s*)");
    std::smatch m;
    if (std::regex_match(s, m, full)) {
        double re = std::stod(m[1]);
        double im = 0.0;
        if (m[2].matched) {
            im = m[3].matched ? std::stod(m[3]) : 1.0;
            if (m[2] == "-") im = -im;
        }
        return {re, im};
    }
    if (std::regex_match(s, m, imag)) {
        std::string c = m[1].matched ? m[1].str() : "1";
        if (c == "+" || c == "-") c += "1";
        return {0.0, std::stod(c)};
    }
    fail(ErrorKind::Schema, "complex", "cannot parse '" + s + "' as a complex number");
}

ScenarioConfig scenario_from_name(const std::string& s) {
    ScenarioConfig c;
    if (s == "standard") return c;
    if (s == "tangency") {
        c.kind = ScenarioConfig::Kind::Tangency;
        return c;
    }
    if (s == "diffeo" || s.rfind("diffeo:", 0) == 0) {
        c.kind = ScenarioConfig::Kind::Diffeo;
        if (s.size() > 7) c.diffeo.kind = diffeo_kind_from_name(s.substr(7));
        return c;
    }
    fail(ErrorKind::Schema, "scenario", "unknown scenario '" + s + "' (standard, diffeo:<map>, tangency)");
}

Config parse_config(const std::string& text) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        fail(ErrorKind::Schema, "config:" + std::to_string(line_at(text, e.byte > 0 ? e.byte - 1 : 0)),
             std::string("malformed JSON: ") + e.what());
    }
    Reader r(text);
    Config c;
    r.only_keys(root, {}, {"scenario", "grids", "stages", "export"});
    for (const char* k : {"scenario", "stages"})
        if (!root.contains(k)) r.error({k}, "required key missing");

    const json& sc = root.at("scenario");
    r.only_keys(sc, {"scenario"}, {"kind", "params"});
    if (!sc.contains("kind") || !sc.at("kind").is_string()) r.error({"scenario", "kind"}, "must be a string");
    const std::string kind = sc.at("kind").get<std::string>();
    json params = sc.contains("params") ? sc.at("params") : json::object();
    const std::vector<std::string> pp{"scenario", "params"};
    auto sub = [&](const char* k) {
        auto p = pp;
        p.push_back(k);
        return p;
    };
    if (kind == "standard") {
        r.only_keys(params, pp, {});
    } else if (kind == "diffeo") {
        c.scenario.kind = ScenarioConfig::Kind::Diffeo;
        r.only_keys(params, pp, {"map", "eps", "m", "theta0", "rise0", "rise1", "fall0", "fall1"});
        DiffeoSpec& d = c.scenario.diffeo;
        if (params.contains("map")) {
            if (!params.at("map").is_string()) r.error(sub("map"), "must be a string");
            try {
                d.kind = diffeo_kind_from_name(params.at("map").get<std::string>());
            } catch (const Error&) {
                r.error(sub("map"), "must be one of identity, rotation, radial, shear, angular");
            }
        }
        d.eps = r.number(params, sub("eps"), d.eps, -1.0, 1.0);
        d.m = r.integer(params, sub("m"), d.m, 1, 32);
        d.theta0 = r.number(params, sub("theta0"), d.theta0, -kTwoPi, kTwoPi);
        d.rise0 = r.number(params, sub("rise0"), d.rise0, 0.0, 1.0, true);
        d.rise1 = r.number(params, sub("rise1"), d.rise1, 0.0, 1.0, true);
        d.fall0 = r.number(params, sub("fall0"), d.fall0, 0.0, 1.0, true);
        d.fall1 = r.number(params, sub("fall1"), d.fall1, 0.0, 1.0, true);
        if (!(d.rise0 < d.rise1 && d.rise1 <= d.fall0 && d.fall0 < d.fall1))
            r.error(sub("rise0"), "bump breakpoints must satisfy rise0 < rise1 <= fall0 < fall1");
    } else if (kind == "tangency") {
        c.scenario.kind = ScenarioConfig::Kind::Tangency;
        r.only_keys(params, pp, {"pinches", "arc_half_length", "T", "span", "n_t"});
        TangencySpec& t = c.scenario.tangency;
        if (params.contains("pinches")) {
            const json& p = params.at("pinches");
            if (!p.is_array() || p.empty() || p.size() > 2) r.error(sub("pinches"), "must be a list of 1 or 2 points");
            t.pinches.clear();
            for (const auto& e : p) {
                if (e.is_string()) {
                    try {
                        t.pinches.push_back(parse_complex(e.get<std::string>()));
                    } catch (const Error&) {
                        r.error(sub("pinches"), "cannot parse '" + e.get<std::string>() + "'");
                    }
                } else if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number()) {
                    t.pinches.emplace_back(e[0].get<double>(), e[1].get<double>());
                } else {
                    r.error(sub("pinches"), "points are strings like \"1+0i\" or [x, y] pairs");
                }
            }
        }
        t.arc_half_length = r.number(params, sub("arc_half_length"), t.arc_half_length, 0.0, 1.0);
        t.T = r.number(params, sub("T"), t.T, 0.0, 1.0, true);
        t.span = r.number(params, sub("span"), t.span, 0.0, 0.5, true);
        t.n_t = r.integer(params, sub("n_t"), t.n_t, 11, 2001);
    } else {
        r.error({"scenario", "kind"}, "must be one of standard, diffeo, tangency");
    }

    if (root.contains("grids")) {
        const json& g = root.at("grids");
        r.only_keys(g, {"grids"}, {"N", "grid_size", "t_samples", "s_max", "s_samples", "t_lo", "t_hi", "dt",
                                   "ray_size", "window"});
        GridsConfig& G = c.grids;
        G.N = r.integer(g, {"grids", "N"}, G.N, 16, 1024);
        if (G.N % 4) r.error({"grids", "N"}, "must be a multiple of 4");
        G.grid_size = r.integer(g, {"grids", "grid_size"}, G.grid_size, 16, 2048);
        G.t_samples = r.integer(g, {"grids", "t_samples"}, G.t_samples, 20, 4000);
        G.s_max = r.number(g, {"grids", "s_max"}, G.s_max, 0.0, 50.0, true);
        G.s_samples = r.integer(g, {"grids", "s_samples"}, G.s_samples, 8, 10000);
        G.t_lo = r.number(g, {"grids", "t_lo"}, G.t_lo, 0.0, 0.5, true);
        G.t_hi = r.number(g, {"grids", "t_hi"}, G.t_hi, 0.5, 0.995);
        G.dt = r.number(g, {"grids", "dt"}, G.dt, 1e-4, 0.1);
        G.ray_size = r.integer(g, {"grids", "ray_size"}, G.ray_size, 2, 256);
        G.window = r.number(g, {"grids", "window"}, G.window, 0.0, 100.0, true);
    }

    const json& st = root.at("stages");
    if (!st.is_array() || st.empty()) r.error({"stages"}, "must be a non-empty list");
    for (const auto& e : st) {
        if (!e.is_string()) r.error({"stages"}, "entries must be strings");
        try {
            Stage s = stage_from_name(e.get<std::string>());
            if (std::find(c.stages.begin(), c.stages.end(), s) == c.stages.end()) c.stages.push_back(s);
        } catch (const Error&) {
            r.error({"stages"}, "unknown stage '" + e.get<std::string>() +
                                    "' (synthesize, envelope, geodesic, singularity, simulate, verify)");
        }
    }

    if (root.contains("export")) {
        const json& ex = root.at("export");
        r.only_keys(ex, {"export"}, {"dir", "formats"});
        if (ex.contains("dir")) {
            if (!ex.at("dir").is_string() || ex.at("dir").get<std::string>().empty())
                r.error({"export", "dir"}, "must be a non-empty string");
            c.output.dir = ex.at("dir").get<std::string>();
        }
        if (ex.contains("formats")) {
            const json& f = ex.at("formats");
            if (!f.is_array()) r.error({"export", "formats"}, "must be a list");
            c.output.formats.clear();
            for (const auto& e : f) {
                if (!e.is_string()) r.error({"export", "formats"}, "entries must be strings");
                std::string s = e.get<std::string>();
                if (s != "csv" && s != "json" && s != "svg")
                    r.error({"export", "formats"}, "unknown format '" + s + "' (csv, json, svg)");
                c.output.formats.push_back(s);
            }
        }
    }
    return c;
}

std::string config_to_json(const Config& c) {
    json sc;
    const auto& s = c.scenario;
    switch (s.kind) {
        case ScenarioConfig::Kind::Standard:
            sc = {{"kind", "standard"}, {"params", json::object()}};
            break;
        case ScenarioConfig::Kind::Diffeo: {
            const auto& d = s.diffeo;
            sc = {{"kind", "diffeo"},
                  {"params",
                   {{"map", d.name()}, {"eps", d.eps}, {"m", d.m}, {"theta0", d.theta0}, {"rise0", d.rise0},
                    {"rise1", d.rise1}, {"fall0", d.fall0}, {"fall1", d.fall1}}}};
            break;
        }
        case ScenarioConfig::Kind::Tangency: {
            const auto& t = s.tangency;
            json pins = json::array();
            for (cplx p : t.pinches) pins.push_back({p.real(), p.imag()});
            sc = {{"kind", "tangency"},
                  {"params",
                   {{"pinches", pins}, {"arc_half_length", t.arc_half_length}, {"T", t.T}, {"span", t.span},
                    {"n_t", t.n_t}}}};
            break;
        }
    }
    const auto& g = c.grids;
    json stages = json::array();
    for (Stage st : c.stages) stages.push_back(stage_name(st));
    json j = {{"scenario", sc},
              {"grids",
               {{"N", g.N}, {"grid_size", g.grid_size}, {"t_samples", g.t_samples}, {"s_max", g.s_max},
                {"s_samples", g.s_samples}, {"t_lo", g.t_lo}, {"t_hi", g.t_hi}, {"dt", g.dt},
                {"ray_size", g.ray_size}, {"window", g.window}}},
              {"stages", stages},
              {"export", {{"dir", c.output.dir}, {"formats", c.output.formats}}}};
    return j.dump(2) + "\n";
}

}  // namespace helegeo
