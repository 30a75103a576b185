/*
    Licensed under the Apache License, Version 2.0 (the "License");
    you may not use this file except in compliance with the License.
    You may obtain a copy of the License at

        https://www.apache.org/licenses/LICENSE-2.0

    Unless required by applicable law or agreed to in writing, software
    distributed under the License is distributed on an "AS IS" BASIS,
    WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
    See the License for the specific language governing permissions and
    limitations under the License.
*/
#include "levysup/model_io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>
#define TOML_EXCEPTIONS 1
#include <toml.hpp>

#include "levysup/error.hpp"
#include "levysup/measure.hpp"

namespace levysup {

namespace {

using nlohmann::json;

json from_toml(const toml::node& node) {
    if (const auto* t = node.as_table()) {
        json j = json::object();
        for (const auto& [k, v] : *t) j[std::string(k.str())] = from_toml(v);
        return j;
    }
    if (const auto* a = node.as_array()) {
        json j = json::array();
        for (const auto& v : *a) j.push_back(from_toml(v));
        return j;
    }
    if (const auto* v = node.as_floating_point()) return v->get();
    if (const auto* v = node.as_integer()) return v->get();
    if (const auto* v = node.as_boolean()) return v->get();
    if (const auto* v = node.as_string()) return v->get();
    throw ValidationError("unsupported TOML value type");
}

class Reader {
public:
    Reader(const json& j, std::string where) : j_(j), where_(std::move(where)) {
        if (!j_.is_object()) throw ValidationError(where_ + ": expected a table");
    }

    double num(const std::string& key) {
        seen_.insert(key);
        if (!j_.contains(key)) throw ValidationError(where_ + ": missing key '" + key + "'");
        const json& v = j_.at(key);
        if (!v.is_number()) throw ValidationError(where_ + ": '" + key + "' must be a number");
        return v.get<double>();
    }
    double num(const std::string& key, double fallback) { return j_.contains(key) ? num(key) : (seen_.insert(key), fallback); }

    std::string str(const std::string& key, const std::string& fallback) {
        seen_.insert(key);
        if (!j_.contains(key)) return fallback;
        if (!j_.at(key).is_string()) throw ValidationError(where_ + ": '" + key + "' must be a string");
        return j_.at(key).get<std::string>();
    }

    std::vector<double> nums(const std::string& key) {
        seen_.insert(key);
        if (!j_.contains(key) || !j_.at(key).is_array()) throw ValidationError(where_ + ": '" + key + "' must be an array");
        std::vector<double> out;
        for (const json& v : j_.at(key)) {
            if (!v.is_number()) throw ValidationError(where_ + ": '" + key + "' must hold numbers");
            out.push_back(v.get<double>());
        }
        return out;
    }

    const json& sub(const std::string& key) {
        seen_.insert(key);
        if (!j_.contains(key)) throw ValidationError(where_ + ": missing table '" + key + "'");
        return j_.at(key);
    }

    void finish() const {
        for (const auto& [k, v] : j_.items()) {
            if (!seen_.count(k)) throw ValidationError(where_ + ": unknown key '" + k + "'");
        }
    }

private:
    const json& j_;
    std::string where_;
    std::set<std::string> seen_;
};

JumpDistribution parse_jumps(const json& j) {
    Reader r(j, "jumps");
    const std::string kind = r.str("kind", "");
    JumpDistribution d;
    if (kind == "atoms") {
        const auto values = r.nums("values");
        const auto probs = r.nums("probs");
        d = JumpDistribution(Atoms{values, probs});
    } else if (kind == "double_exponential") {
        d = JumpDistribution(DoubleExponential{r.num("p_up", 0.5), r.num("rate_up"), r.num("rate_down")});
    } else if (kind == "pareto") {
        d = JumpDistribution(Pareto{r.num("shape"), r.num("scale", 1.0), r.num("p_up", 1.0)});
    } else if (kind == "normal") {
        d = JumpDistribution(NormalJumps{r.num("mean", 0.0), r.num("sd")});
    } else {
        throw ValidationError("jumps: unknown kind '" + kind + "'");
    }
    r.finish();
    return d;
}

TemperedStable read_tempered(Reader& r) {
    TemperedStable t;
    t.c_plus = r.num("c_plus", 0.0);
    t.c_minus = r.num("c_minus", 0.0);
    t.alpha_plus = r.num("alpha_plus", 0.0);
    t.alpha_minus = r.num("alpha_minus", 0.0);
    t.lambda_plus = r.num("lambda_plus", 0.0);
    t.lambda_minus = r.num("lambda_minus", 0.0);
    t.drift = r.num("drift", 0.0);
    return t;
}

LevyModel parse_json_model(const json& j, const std::string& where) {
    Reader r(j, where);
    const std::string family = r.str("family", "");
    const std::string name = r.str("name", family);
    auto done = [&](LevyModel m) {
        r.finish();
        return m;
    };
    if (family == "brownian") return done(brownian(r.num("drift", 0.0), r.num("sigma", 1.0), name));
    if (family == "stable") {
        return done(stable(r.num("alpha"), r.num("beta", 0.0), r.num("scale", 1.0), r.num("drift", 0.0), name));
    }
    if (family == "tempered_stable") return done(tempered_stable(read_tempered(r), name));
    if (family == "composite_tempered") {
        const TemperedStable t = read_tempered(r);
        LevyModel ts = tempered_stable(t, name);
        r.finish();
        return composite(lk_gamma(ts), 0.0, tempered_density(t), name);
    }
    if (family == "cgmy") {
        TemperedStable t;
        t.c_plus = t.c_minus = r.num("C");
        t.lambda_minus = r.num("G");
        t.lambda_plus = r.num("M");
        t.alpha_plus = t.alpha_minus = r.num("Y");
        t.drift = r.num("drift", 0.0);
        return done(tempered_stable(t, name));
    }
    if (family == "compound_poisson") {
        const double drift = r.num("drift", 0.0);
        const double rate = r.num("rate");
        return done(compound_poisson(drift, rate, parse_jumps(r.sub("jumps")), name));
    }
    if (family == "nig") {
        return done(normal_inverse_gaussian(r.num("alpha"), r.num("beta", 0.0), r.num("delta"), r.num("mu", 0.0), name));
    }
    if (family == "gamma") return done(gamma_process(r.num("shape"), r.num("rate"), name));
    if (family == "variance_gamma") {
        return done(variance_gamma(r.num("c"), r.num("lambda_plus"), r.num("lambda_minus"), name));
    }
    if (family == "subordinated") {
        LevyModel outer = parse_json_model(r.sub("outer"), where + ".outer");
        LevyModel inner = parse_json_model(r.sub("inner"), where + ".inner");
        return done(subordinated(std::move(outer), std::move(inner), r.num("drift", 0.0), name));
    }
    if (family == "oscillating") return done(oscillating_model(r.num("h", 0.05), name));
    throw ValidationError(where + ": unknown family '" + family + "'");
}

json jumps_json(const JumpDistribution& d) {
    return std::visit(
        [](const auto& l) -> json {
            using T = std::decay_t<decltype(l)>;
            if constexpr (std::is_same_v<T, Atoms>) return {{"kind", "atoms"}, {"values", l.values}, {"probs", l.probs}};
            if constexpr (std::is_same_v<T, DoubleExponential>) {
                return {{"kind", "double_exponential"}, {"p_up", l.p_up}, {"rate_up", l.rate_up}, {"rate_down", l.rate_down}};
            }
            if constexpr (std::is_same_v<T, Pareto>) {
                return {{"kind", "pareto"}, {"shape", l.shape}, {"scale", l.scale}, {"p_up", l.p_up}};
            }
            if constexpr (std::is_same_v<T, NormalJumps>) return {{"kind", "normal"}, {"mean", l.mean}, {"sd", l.sd}};
        },
        d.law());
}

json describe(const LevyModel& m) {
    json j = std::visit(
        [](const auto& f) -> json {
            using T = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<T, BrownianWithDrift>) return {{"drift", f.drift}, {"sigma", f.sigma}};
            if constexpr (std::is_same_v<T, Stable>) {
                return {{"alpha", f.alpha}, {"beta", f.beta}, {"scale", f.scale}, {"drift", f.drift}};
            }
            if constexpr (std::is_same_v<T, TemperedStable>) {
                return {{"c_plus", f.c_plus},           {"c_minus", f.c_minus},           {"alpha_plus", f.alpha_plus},
                        {"alpha_minus", f.alpha_minus}, {"lambda_plus", f.lambda_plus}, {"lambda_minus", f.lambda_minus},
                        {"drift", f.drift}};
            }
            if constexpr (std::is_same_v<T, CompoundPoissonDrift>) {
                return {{"drift", f.drift}, {"rate", f.rate}, {"jumps", jumps_json(f.jumps)}};
            }
            if constexpr (std::is_same_v<T, Subordinated>) {
                return {{"outer", describe(*f.outer)}, {"inner", describe(*f.inner)}, {"drift", f.drift}};
            }
            if constexpr (std::is_same_v<T, Composite>) {
                return {{"gamma", f.gamma}, {"sigma", f.sigma}, {"density", f.density->label}};
            }
        },
        m.family());
    j["family"] = m.family_name();
    j["name"] = m.name();
    return j;
}

}  // namespace

LevyModel parse_model(const std::string& text, ModelFormat format) {
    if (format == ModelFormat::Auto) {
        const auto p = text.find_first_not_of(" \t\r\n");
        format = p != std::string::npos && text[p] == '{' ? ModelFormat::Json : ModelFormat::Toml;
    }
    json j;
    if (format == ModelFormat::Json) {
        try {
            j = json::parse(text);
        } catch (const json::exception& e) {
            throw ValidationError(std::string("model JSON: ") + e.what());
        }
    } else {
        try {
            j = from_toml(toml::parse(text));
        } catch (const toml::parse_error& e) {
            throw ValidationError(std::string("model TOML: ") + std::string(e.description()));
        }
    }
    return parse_json_model(j, "model");
}

LevyModel load_model_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open model file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    ModelFormat f = ModelFormat::Auto;
    if (path.size() >= 5 && path.substr(path.size() - 5) == ".json") f = ModelFormat::Json;
    if (path.size() >= 5 && path.substr(path.size() - 5) == ".toml") f = ModelFormat::Toml;
    return parse_model(ss.str(), f);
}

std::string model_to_json(const LevyModel& model) { return describe(model).dump(); }

}  // namespace levysup
