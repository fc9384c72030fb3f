#include "sharpfront/config.hpp"

#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace sharpfront {

using nlohmann::json;

namespace {

struct Reader {
    const json& obj;
    std::string prefix;
    std::set<std::string> seen;

    Reader(const json& o, std::string p) : obj(o), prefix(std::move(p)) {
        if (!obj.is_object()) throw InvalidParameter("key '" + prefix + "': expected an object");
    }
    std::string full(const std::string& k) const { return prefix.empty() ? k : prefix + "." + k; }

    const json* find(const std::string& k) {
        seen.insert(k);
        auto it = obj.find(k);
        return it == obj.end() ? nullptr : &*it;
    }
    void num(const std::string& k, double& out) {
        if (auto* v = find(k)) {
            if (!v->is_number()) throw InvalidParameter("key '" + full(k) + "': expected a number");
            out = v->get<double>();
        }
    }
    void integer(const std::string& k, int& out) {
        if (auto* v = find(k)) {
            if (!v->is_number_integer())
                throw InvalidParameter("key '" + full(k) + "': expected an integer");
            out = v->get<int>();
        }
    }
    void boolean(const std::string& k, bool& out) {
        if (auto* v = find(k)) {
            if (!v->is_boolean()) throw InvalidParameter("key '" + full(k) + "': expected true/false");
            out = v->get<bool>();
        }
    }
    void str(const std::string& k, std::string& out) {
        if (auto* v = find(k)) {
            if (!v->is_string()) throw InvalidParameter("key '" + full(k) + "': expected a string");
            out = v->get<std::string>();
        }
    }
    void list(const std::string& k, std::vector<double>& out) {
        if (auto* v = find(k)) {
            if (!v->is_array()) throw InvalidParameter("key '" + full(k) + "': expected a list");
            out.clear();
            for (const auto& e : *v) {
                if (!e.is_number())
                    throw InvalidParameter("key '" + full(k) + "': expected numbers");
                out.push_back(e.get<double>());
            }
        }
    }
    void warn_unknown() const {
        for (auto it = obj.begin(); it != obj.end(); ++it)
            if (!seen.count(it.key()))
                std::cerr << "warning: unknown config key '" << full(it.key()) << "' ignored\n";
    }
};

void need(bool ok, const std::string& key, const std::string& what) {
    if (!ok) throw InvalidParameter("key '" + key + "': " + what);
}

}  // namespace

void ExperimentConfig::validate() const {
    need(schema_version == 1, "schema_version", "only version 1 is supported");
    need(L > 0.0, "grid.L", "must be positive");
    need(M >= 16, "grid.M", "must be at least 16");
    need(sigma > 0.0, "params.sigma", "must be positive");
    need(chi > 0.0, "params.chi", "must be positive");
    need(T_final > 0.0, "time.T_final", "must be positive");
    need(cfl > 0.0 && cfl <= 1.0, "time.cfl", "must lie in (0, 1]");
    need(dt_max > 0.0, "time.dt_max", "must be positive");
    need(sample_interval >= 0.0, "time.sample_interval", "must be nonnegative");
    for (double t : snapshot_times) need(t >= 0.0, "time.snapshot_times", "must be nonnegative");
    need(!betas.empty(), "diagnostics.betas", "must not be empty");
    for (double b : betas) need(b >= 0.0 && b < 1.0, "diagnostics.betas", "every beta must lie in [0, 1)");
    need(t1 > 0.0, "diagnostics.t1", "must be positive");
    need(t1 < t2, "diagnostics.t1", "must be smaller than diagnostics.t2");
    need(t2 <= T_final, "diagnostics.t2", "must not exceed time.T_final");
    need(jump_window >= 1, "diagnostics.jump_window", "must be at least 1");
    need(front_threshold > 0.0, "diagnostics.front_threshold", "must be positive");
    need(wave_dz > 0.0, "wave.dz", "must be positive");
    need(wave_Z > 0.0 && wave_Z / wave_dz >= 3.0, "wave.Z", "must span at least 3 cells");
    need(wave_tol > 0.0, "wave.tol", "must be positive");
    need(wave_max_iter >= 1, "wave.max_iter", "must be at least 1");
    need(wave_eta >= 0.0 && wave_eta < 1.0 / sigma, "wave.eta", "must lie in (0, 1/sigma) (0 = default)");
    if (ic.kind == IcKind::Sigmoid) need(ic.alpha > 0.0, "ic.alpha", "must be positive");
    if (ic.kind == IcKind::Polynomial)
        need(ic.x0 > -L && ic.x0 < L, "ic.x0", "must lie inside (-L, L)");
}

ExperimentConfig parse_config_text(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text, nullptr, true, true);
    } catch (const json::parse_error& e) {
        throw InvalidParameter(std::string("config is not valid JSON: ") + e.what());
    }
    ExperimentConfig c;
    Reader top(doc, "");
    top.integer("schema_version", c.schema_version);

    if (auto* g = top.find("grid")) {
        Reader r(*g, "grid");
        r.num("L", c.L);
        r.integer("M", c.M);
        r.warn_unknown();
    }
    if (auto* p = top.find("params")) {
        Reader r(*p, "params");
        r.num("sigma", c.sigma);
        r.num("chi", c.chi);
        r.warn_unknown();
    }
    if (auto* t = top.find("time")) {
        Reader r(*t, "time");
        r.num("T_final", c.T_final);
        r.num("cfl", c.cfl);
        r.num("dt_max", c.dt_max);
        r.list("snapshot_times", c.snapshot_times);
        r.num("sample_interval", c.sample_interval);
        r.warn_unknown();
    }
    top.boolean("reaction", c.reaction);

    std::string kind = "polynomial";
    double x0 = -15.0, alpha = 5.0;
    if (auto* ic = top.find("ic")) {
        if (ic->is_string()) {
            kind = ic->get<std::string>();
        } else {
            Reader r(*ic, "ic");
            r.str("kind", kind);
            r.num("x0", x0);
            r.num("alpha", alpha);
            r.warn_unknown();
        }
    }
    switch (parse_ic_kind(kind)) {
    case IcKind::Polynomial: c.ic = InitialCondition::polynomial(c.L, x0); break;
    case IcKind::Ramp: c.ic = InitialCondition::ramp(); break;
    case IcKind::PlateauRamp: c.ic = InitialCondition::plateau_ramp(); break;
    case IcKind::Sigmoid: c.ic = InitialCondition::sigmoid(alpha, x0); break;
    }

    if (auto* d = top.find("diagnostics")) {
        Reader r(*d, "diagnostics");
        r.list("betas", c.betas);
        r.num("t1", c.t1);
        r.num("t2", c.t2);
        r.integer("jump_window", c.jump_window);
        r.num("front_threshold", c.front_threshold);
        r.boolean("track_separatrix", c.track_separatrix);
        std::string mode = "truncated";
        r.str("separatrix_mode", mode);
        if (mode == "truncated")
            c.separatrix_mode = SeparatrixMode::Truncated;
        else if (mode == "plain")
            c.separatrix_mode = SeparatrixMode::Plain;
        else
            throw InvalidParameter("key 'diagnostics.separatrix_mode': expected truncated or plain");
        r.warn_unknown();
    }
    if (auto* w = top.find("wave")) {
        Reader r(*w, "wave");
        r.num("dz", c.wave_dz);
        r.num("Z", c.wave_Z);
        r.num("tol", c.wave_tol);
        r.integer("max_iter", c.wave_max_iter);
        r.num("eta", c.wave_eta);
        r.warn_unknown();
    }
    if (auto* o = top.find("output")) {
        Reader r(*o, "output");
        r.str("directory", c.output_dir);
        r.warn_unknown();
    }
    if (auto* s = top.find("sweep")) {
        Reader r(*s, "sweep");
        r.str("param", c.sweep.param);
        r.list("values", c.sweep.values);
        r.boolean("with_wave", c.sweep.with_wave);
        r.warn_unknown();
    }
    top.warn_unknown();
    c.validate();
    return c;
}

ExperimentConfig parse_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidParameter("cannot open config file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str());
}

}  // namespace sharpfront
