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
#include "levysup_cli/app.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <set>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>
#include <toml.hpp>

#include "levysup/classify.hpp"
#include "levysup/error.hpp"
#include "levysup/estimate.hpp"
#include "levysup/model_io.hpp"
#include "levysup/rng.hpp"
#include "levysup/specfun.hpp"

namespace levysup::cli {
namespace {

using json = nlohmann::json;

const std::set<std::string> kKinds{"classify", "expect", "moments", "delta", "cpp", "tails", "rates"};

std::string fmt(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    auto r = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, r.ptr);
}

bool is_pow2(std::size_t n) { return n > 0 && (n & (n - 1)) == 0; }

struct Row {
    std::string estimator;
    std::size_t n = 0;
    double x = 0.0;
    double p = 0.0;
    double estimate = 0.0;
    double std_err = 0.0;
    std::uint64_t reps = 0;
    std::uint64_t seed = 0;
};

const char* kCsvHeader =
    "# levysup results schema v1\n"
    "estimator,model,n,x,p,estimate,std_err,reps,seed\n";

std::string render_csv(const std::vector<Row>& rows, const std::string& model_id) {
    std::ostringstream os;
    os << kCsvHeader;
    for (const auto& r : rows) {
        os << r.estimator << ',' << model_id << ',' << r.n << ',' << fmt(r.x) << ',' << fmt(r.p)
           << ',' << fmt(r.estimate) << ',' << fmt(r.std_err) << ',' << r.reps << ',' << r.seed
           << '\n';
    }
    return os.str();
}

json row_json(const Row& r) {
    return {{"estimator", r.estimator}, {"n", r.n},          {"x", r.x},
            {"p", r.p},                 {"estimate", r.estimate}, {"std_err", r.std_err},
            {"reps", r.reps},           {"seed", r.seed}};
}

Row mc_row(const std::string& tag, std::size_t n, double x, double p, const MCResult& m) {
    return {tag, n, x, p, m.estimate, m.std_err, m.reps, m.seed};
}

json zoom_json(const ZoomClass& zc) {
    json ev = {{"x", zc.evidence.x},
               {"tail_plus", zc.evidence.tail_plus},
               {"tail_minus", zc.evidence.tail_minus},
               {"ratio", zc.evidence.ratio},
               {"index", zc.evidence.index},
               {"drift_ratio", zc.evidence.drift_ratio}};
    json j = {{"kind", to_string(zc.kind)},
              {"alpha", zc.alpha},
              {"rho", zc.rho},
              {"scale", zc.scale},
              {"calibrated", zc.calibrated},
              {"rule", zc.rule},
              {"justification", zc.justification},
              {"evidence", ev}};
    if (zc.kind == LimitKind::LinearDrift) j["sign"] = zc.drift_sign;
    if (zc.kind == LimitKind::Stable) j["skew"] = zc.skew;
    if (zc.kind == LimitKind::Cauchy) j["cauchy_drift"] = zc.cauchy_drift;
    if (!zc.reason.empty()) j["reason"] = zc.reason;
    return j;
}

std::optional<Correction> try_correction(const ZoomClass& zc) {
    try {
        return expected_vhat(zc);
    } catch (const UnsupportedError&) {
        return std::nullopt;
    }
}

json correction_json(const Correction& c) {
    return {{"alpha", c.alpha},         {"rho", c.rho},
            {"scale", c.scale},         {"zeta", c.zeta_value},
            {"e_pos", c.e_pos},         {"e_vhat", c.e_vhat},
            {"e_pos_unit", c.e_pos_unit}, {"e_vhat_unit", c.e_vhat_unit},
            {"convention", c.convention}};
}

json prediction(const std::string& quantity, std::size_t n, double x, double p, double predicted,
                double measured, double se) {
    json j = {{"quantity", quantity}, {"n", n}, {"x", x}, {"p", p}, {"predicted", predicted},
              {"measured", measured}, {"std_err", se}};
    j["z"] = se > 0 ? (measured - predicted) / se : (measured == predicted ? 0.0 : NAN);
    return j;
}

json fit_json(const std::string& name, const RateFit& f) {
    return {{"name", name},   {"slope", f.slope},     {"slope_se", f.slope_se},
            {"slope_ci", {f.slope_ci_low, f.slope_ci_high}},
            {"intercept", f.intercept}, {"r2", f.r2}, {"grid", f.grid}};
}

json canonical_config(const ExperimentConfig& c, const LevyModel& model) {
    return {{"kind", c.kind},
            {"model", json::parse(model_to_json(model))},
            {"n", c.ns},
            {"x", c.xs},
            {"p", c.ps},
            {"eps", c.eps},
            {"reps", c.reps},
            {"fine_factor", c.fine_factor},
            {"resolution", c.resolution},
            {"shift", c.shift},
            {"quantity", c.quantity},
            {"seed", c.seed.value_or(0)}};
}

std::string hex64(std::uint64_t v) {
    std::ostringstream os;
    os << std::hex << std::setw(16) << std::setfill('0') << v;
    return os.str();
}

void require_limit(const ZoomClass& zc, const std::string& kind) {
    if (!zc.has_limit()) {
        throw UnsupportedError("experiment '" + kind + "' needs b_n, but the model is " +
                               to_string(zc.kind) + (zc.reason.empty() ? "" : ": " + zc.reason));
    }
}

bool has_rate_theory(const ZoomClass& zc) { return zc.has_limit(); }

struct Context {
    const ExperimentConfig& cfg;
    const LevyModel& model;
    const ZoomClass& zc;
    std::optional<Correction> corr;
    RunConfig rc;
    std::vector<Row> rows;
    json predictions = json::array();
    json fits = json::array();
    json extra = json::object();
};

void run_moments(Context& c) {
    require_limit(c.zc, "moments");
    const auto& ns = c.cfg.ns;
    for (double p : c.cfg.ps) {
        const MomentStudy st = moment_error(c.model, c.zc, p, ns, c.rc);
        std::vector<double> xs, ys, se;
        for (const auto& r : st.rows) {
            c.rows.push_back(mc_row("moment_scaled", r.n, 0.0, p, r.scaled));
            c.rows.push_back(mc_row("moment_excluded", r.n, 0.0, p, r.excluded));
            c.rows.push_back(mc_row("moment_unscaled", r.n, 0.0, p, r.unscaled));
            xs.push_back(static_cast<double>(r.n));
            ys.push_back(r.unscaled.estimate);
            se.push_back(r.unscaled.std_err);
            if (c.corr && p == 1.0) {
                const double pred = c.corr->e_vhat_unit * st.tau_interior.estimate;
                const double s = std::hypot(r.scaled.std_err,
                                            c.corr->e_vhat_unit * st.tau_interior.std_err);
                c.predictions.push_back(
                    prediction("moment_scaled", r.n, 0.0, p, pred, r.scaled.estimate, s));
            }
        }
        c.rows.push_back(mc_row("tau_interior", 0, 0.0, p, st.tau_interior));
        if (xs.size() >= 4) {
            const RateFit f = loglog_fit(xs, ys, se);
            c.fits.push_back(fit_json("moment_slope_p" + fmt(p), f));
            c.rows.push_back({"moment_slope", 0, 0.0, p, f.slope, f.slope_se, c.rc.reps, c.rc.seed});
            c.predictions.push_back(
                prediction("moment_slope", 0, 0.0, p, -p / c.zc.alpha, f.slope, f.slope_se));
        }
        c.extra["engine"] = st.engine;
        c.extra["exact_supremum"] = st.exact_supremum;
        if (!st.warning.empty()) c.extra["warnings"].push_back(st.warning);
    }
}

void run_delta(Context& c) {
    require_limit(c.zc, "delta");
    const auto rows = delta_probability(c.model, c.zc, c.cfg.xs, c.cfg.ns, c.rc);
    const auto* bm = c.model.as<BrownianWithDrift>();
    for (const auto& r : rows) {
        c.rows.push_back(mc_row("delta", r.n, r.x, 0.0, r.delta));
        c.rows.push_back(mc_row("delta_scaled", r.n, r.x, 0.0, r.scaled));
        c.rows.push_back(mc_row("exceed", r.n, r.x, 0.0, r.exceed));
        if (bm != nullptr && c.corr) {
            const double f = brownian_sup_density(r.x, bm->drift, bm->sigma);
            c.predictions.push_back(prediction("delta_scaled", r.n, r.x, 0.0,
                                               f * c.corr->e_vhat_unit, r.scaled.estimate,
                                               r.scaled.std_err));
        }
    }
    if (c.cfg.ns.size() >= 4) {
        for (double x : c.cfg.xs) {
            std::vector<double> xs, ys, se;
            for (const auto& r : rows) {
                if (r.x != x) continue;
                xs.push_back(static_cast<double>(r.n));
                ys.push_back(r.delta.estimate);
                se.push_back(r.delta.std_err);
            }
            const RateFit f = loglog_fit(xs, ys, se);
            c.fits.push_back(fit_json("delta_slope_x" + fmt(x), f));
            c.rows.push_back({"delta_slope", 0, x, 0.0, f.slope, f.slope_se, c.rc.reps, c.rc.seed});
            if (c.zc.alpha > 1.0) {
                c.predictions.push_back(
                    prediction("delta_slope", 0, x, 0.0, -1.0 / c.zc.alpha, f.slope, f.slope_se));
            }
        }
    }
}

void run_cpp(Context& c) {
    if (c.model.as<CompoundPoissonDrift>() == nullptr) {
        throw UnsupportedError("experiment 'cpp' needs a compound_poisson model");
    }
    RunConfig oracle = c.rc;
    oracle.seed = mix64(c.rc.seed);
    const CppLimit lim = cpp_limit_rhs(c.model, oracle);
    c.rows.push_back(mc_row("cpp_rhs", 0, 0.0, 1.0, lim.rhs));
    c.rows.push_back(mc_row("cpp_integral", 0, 0.0, 1.0, lim.integral));
    c.rows.push_back(mc_row("cpp_tau_interior", 0, 0.0, 1.0, lim.tau_interior));
    const MomentStudy st = moment_error(c.model, c.zc, 1.0, c.cfg.ns, c.rc);
    for (const auto& r : st.rows) {
        const double n = static_cast<double>(r.n);
        MCResult direct = r.unscaled;
        direct.estimate *= n;
        direct.std_err *= n;
        c.rows.push_back(mc_row("cpp_direct", r.n, 0.0, 1.0, direct));
        c.predictions.push_back(prediction("cpp_direct", r.n, 0.0, 1.0, lim.rhs.estimate,
                                           direct.estimate,
                                           std::hypot(direct.std_err, lim.rhs.std_err)));
    }
    c.extra["engine"] = st.engine;
    c.extra["oracle_seed"] = oracle.seed;
}

void run_tails(Context& c) {
    const SmallTimeTails st = small_time_tails(c.model, c.cfg.eps, c.cfg.resolution, c.rc);
    const auto pos = positivity(c.model, c.cfg.eps, c.rc);
    for (const auto& pt : st.tau_below) c.rows.push_back(mc_row("tau_below", 0, pt.eps, 0.0, pt.prob));
    for (const auto& pt : st.sup_below) c.rows.push_back(mc_row("sup_below", 0, pt.eps, 0.0, pt.prob));
    for (const auto& pt : pos) c.rows.push_back(mc_row("positive", 0, pt.eps, 0.0, pt.prob));
    const bool theory = c.zc.has_limit();
    if (theory) {
        for (const auto& pt : pos) {
            c.predictions.push_back(prediction("positive", 0, pt.eps, 0.0, c.zc.rho,
                                               pt.prob.estimate, pt.prob.std_err));
        }
    }
    if (c.cfg.eps.size() >= 4) {
        auto fit = [&](const std::string& name, const std::vector<ProbPoint>& pts, double pred) {
            try {
                const RateFit f = tail_index(pts);
                c.fits.push_back(fit_json(name, f));
                c.rows.push_back({name, 0, 0.0, 0.0, f.slope, f.slope_se, c.rc.reps, c.rc.seed});
                if (theory) c.predictions.push_back(prediction(name, 0, 0.0, 0.0, pred, f.slope, f.slope_se));
            } catch (const InsufficientDataError& e) {
                c.extra["warnings"].push_back(name + ": " + e.what());
            }
        };
        fit("tau_below_slope", st.tau_below, c.zc.rho);
        fit("sup_below_slope", st.sup_below, c.zc.alpha * c.zc.rho);
    }
    c.extra["engine"] = st.engine;
}

void run_rates(Context& c) {
    const bool moment = c.cfg.quantity == "moment";
    const double arg = moment ? c.cfg.ps.front() : c.cfg.xs.front();
    const RateStudy st =
        rate_fit(c.model, moment ? RateQuantity::Moment : RateQuantity::Delta, c.cfg.ns, arg, c.rc);
    const std::string tag = moment ? "moment_unscaled" : "delta";
    for (std::size_t i = 0; i < st.ns.size(); ++i) {
        c.rows.push_back(mc_row(tag, st.ns[i], moment ? 0.0 : arg, moment ? arg : 0.0, st.values[i]));
    }
    c.rows.push_back({"rate_slope", 0, moment ? 0.0 : arg, moment ? arg : 0.0, st.fit.slope,
                      st.fit.slope_se, c.rc.reps, c.rc.seed});
    c.fits.push_back(fit_json("rate_slope", st.fit));
    if (has_rate_theory(c.zc) && (moment || c.zc.alpha > 1.0)) {
        const double pred = moment ? -arg / c.zc.alpha : -1.0 / c.zc.alpha;
        c.predictions.push_back(prediction("rate_slope", 0, moment ? 0.0 : arg, moment ? arg : 0.0,
                                           pred, st.fit.slope, st.fit.slope_se));
    }
}

void run_expect(Context& c) {
    if (!c.corr) {
        throw UnsupportedError("expect needs a Brownian or stable attractor with alpha > 1, got " +
                               to_string(c.zc.kind));
    }
    const Correction& k = *c.corr;
    c.rows.push_back({"zeta", 0, 0.0, 0.0, k.zeta_value, 0.0, 0, 0});
    c.rows.push_back({"e_pos", 0, 0.0, 0.0, k.e_pos, 0.0, 0, 0});
    c.rows.push_back({"e_vhat", 0, 0.0, 0.0, k.e_vhat, 0.0, 0, 0});
    c.rows.push_back({"e_pos_unit", 0, 0.0, 0.0, k.e_pos_unit, 0.0, 0, 0});
    c.rows.push_back({"e_vhat_unit", 0, 0.0, 0.0, k.e_vhat_unit, 0.0, 0, 0});
}

void run_classify(Context& c) {
    c.rows.push_back({"alpha", 0, 0.0, 0.0, c.zc.alpha, 0.0, 0, 0});
    c.rows.push_back({"rho", 0, 0.0, 0.0, c.zc.rho, 0.0, 0, 0});
    c.rows.push_back({"scale", 0, 0.0, 0.0, c.zc.scale, 0.0, 0, 0});
}

std::vector<double> number_list(const json& v, const std::string& key) {
    if (v.is_number()) return {v.get<double>()};
    if (!v.is_array()) throw ValidationError("'" + key + "' must be a number or an array");
    std::vector<double> out;
    for (const auto& e : v) {
        if (!e.is_number()) throw ValidationError("'" + key + "' must contain numbers");
        out.push_back(e.get<double>());
    }
    return out;
}

template <class T>
T unsigned_value(const json& v, const std::string& key) {
    if (!v.is_number_integer() || v.get<long long>() < 0) {
        throw ValidationError("'" + key + "' must be a non-negative integer");
    }
    return static_cast<T>(v.get<unsigned long long>());
}

std::string string_value(const json& v, const std::string& key) {
    if (!v.is_string()) throw ValidationError("'" + key + "' must be a string");
    return v.get<std::string>();
}

}  // namespace

bool needs_seed(const std::string& kind) { return kind != "classify" && kind != "expect"; }

std::uint64_t fnv1a64(const std::string& bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : bytes) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::vector<std::size_t> parse_n_grid(const std::string& text) {
    auto to_size = [&](const std::string& s) {
        std::size_t v = 0;
        const auto r = std::from_chars(s.data(), s.data() + s.size(), v);
        if (r.ec != std::errc{} || r.ptr != s.data() + s.size() || s.empty()) {
            throw ValidationError("bad n-grid entry '" + s + "' in '" + text + "'");
        }
        return v;
    };
    std::vector<std::size_t> out;
    const auto dots = text.find("..");
    if (dots != std::string::npos) {
        const std::size_t lo = to_size(text.substr(0, dots));
        const std::size_t hi = to_size(text.substr(dots + 2));
        if (!is_pow2(lo) || !is_pow2(hi) || lo > hi) {
            throw ValidationError("n range '" + text + "' needs powers of two lo <= hi");
        }
        for (std::size_t n = lo; n <= hi; n *= 2) out.push_back(n);
        return out;
    }
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(to_size(item));
    return out;
}

ExperimentConfig parse_config(const std::string& text, const std::string& base_dir) {
    json j;
    const auto first = text.find_first_not_of(" \t\r\n");
    try {
        if (first != std::string::npos && text[first] == '{') {
            j = json::parse(text);
        } else {
            std::ostringstream os;
            os << toml::json_formatter{toml::parse(text)};
            j = json::parse(os.str());
        }
    } catch (const toml::parse_error& e) {
        throw ValidationError(std::string("config: ") + std::string(e.description()));
    } catch (const json::exception& e) {
        throw ValidationError(std::string("config: ") + e.what());
    }
    if (!j.is_object()) throw ValidationError("config must be a table");
    ExperimentConfig c;
    for (const auto& [key, v] : j.items()) {
        if (key == "kind") {
            c.kind = string_value(v, key);
        } else if (key == "model") {
            std::filesystem::path p = string_value(v, key);
            if (p.is_relative() && !base_dir.empty()) p = std::filesystem::path(base_dir) / p;
            c.model_file = p.string();
        } else if (key == "n") {
            if (v.is_string()) {
                c.ns = parse_n_grid(v.get<std::string>());
            } else {
                c.ns.clear();
                if (!v.is_array()) throw ValidationError("'n' must be an array or a range string");
                for (const auto& e : v) c.ns.push_back(unsigned_value<std::size_t>(e, key));
            }
        } else if (key == "x") {
            c.xs = number_list(v, key);
        } else if (key == "p") {
            c.ps = number_list(v, key);
        } else if (key == "eps") {
            c.eps = number_list(v, key);
        } else if (key == "reps") {
            c.reps = unsigned_value<std::uint64_t>(v, key);
        } else if (key == "seed") {
            c.seed = unsigned_value<std::uint64_t>(v, key);
        } else if (key == "workers") {
            c.workers = unsigned_value<unsigned>(v, key);
        } else if (key == "fine_factor") {
            c.fine_factor = unsigned_value<std::size_t>(v, key);
        } else if (key == "resolution") {
            c.resolution = unsigned_value<std::size_t>(v, key);
        } else if (key == "shift") {
            if (!v.is_number()) throw ValidationError("'shift' must be a number");
            c.shift = v.get<double>();
        } else if (key == "quantity") {
            c.quantity = string_value(v, key);
        } else if (key == "out") {
            c.out = string_value(v, key);
        } else {
            throw ValidationError("config: unknown key '" + key + "'");
        }
    }
    return c;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open config file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str(), std::filesystem::path(path).parent_path().string());
}

void validate(const ExperimentConfig& c) {
    if (kKinds.count(c.kind) == 0) throw ValidationError("unknown experiment kind '" + c.kind + "'");
    if (c.model_file.empty()) throw ValidationError("no model file given");
    if (needs_seed(c.kind) && !c.seed) throw ValidationError("--seed is mandatory for '" + c.kind + "'");
    if (c.reps < 100) throw ValidationError("reps must be >= 100");
    if (c.ns.empty()) throw ValidationError("empty n-grid");
    for (std::size_t i = 0; i < c.ns.size(); ++i) {
        if (!is_pow2(c.ns[i])) throw ValidationError("n-grid must be dyadic: " + std::to_string(c.ns[i]));
        if (i > 0 && c.ns[i] <= c.ns[i - 1]) throw ValidationError("n-grid must be ascending");
    }
    if (c.workers == 0) throw ValidationError("workers must be >= 1");
    if (c.fine_factor == 0) throw ValidationError("fine factor must be >= 1");
    if (c.resolution == 0) throw ValidationError("resolution must be >= 1");
    if (!(c.shift >= 0.0 && c.shift < 1.0)) throw ValidationError("shift must lie in [0, 1)");
    if (c.ps.empty() || c.xs.empty()) throw ValidationError("p and x lists must be non-empty");
    for (double p : c.ps) {
        if (!(p > 0.0)) throw ValidationError("p must be positive");
    }
    for (double x : c.xs) {
        if (!(x > 0.0)) throw ValidationError("x levels must be positive");
    }
    for (double e : c.eps) {
        if (!(e > 0.0 && e < 1.0)) throw ValidationError("eps must lie in (0, 1)");
    }
    if (c.quantity != "moment" && c.quantity != "delta") {
        throw ValidationError("quantity must be 'moment' or 'delta'");
    }
    if (c.kind == "rates" && c.ns.size() < 4) throw ValidationError("rates needs >= 4 grid points");
}

Artifacts run(const ExperimentConfig& cfg) {
    Artifacts a;
    try {
        validate(cfg);
        const LevyModel model = load_model_file(cfg.model_file);
        const ZoomClass zc = classify(model);
        const json canon = canonical_config(cfg, model);
        const std::uint64_t hash = fnv1a64(canon.dump());

        RunConfig rc;
        rc.reps = cfg.reps;
        rc.seed = cfg.seed.value_or(0);
        rc.workers = cfg.workers;
        rc.fine_factor = cfg.fine_factor;
        rc.shift = cfg.shift;
        Context c{cfg, model, zc, try_correction(zc), rc, {}, json::array(), json::array(), json::object()};

        if (cfg.kind == "classify") run_classify(c);
        else if (cfg.kind == "expect") run_expect(c);
        else if (cfg.kind == "moments") run_moments(c);
        else if (cfg.kind == "delta") run_delta(c);
        else if (cfg.kind == "cpp") run_cpp(c);
        else if (cfg.kind == "tails") run_tails(c);
        else run_rates(c);

        json s;
        s["version"] = LEVYSUP_VERSION;
        s["config_hash"] = hex64(hash);
        s["config"] = canon;
        s["workers"] = cfg.workers;
        s["zoom_class"] = zoom_json(zc);
        s["correction"] = c.corr ? correction_json(*c.corr) : json(nullptr);
        if (zc.has_limit() && (cfg.ns.size() <= 64)) {
            json bn = json::array();
            for (std::size_t n : cfg.ns) bn.push_back({{"n", n}, {"b_n", scaling_bn(zc, static_cast<double>(n))}});
            s["b_n"] = bn;
        }
        json results = json::array();
        for (const auto& r : c.rows) results.push_back(row_json(r));
        s["results"] = results;
        s["fits"] = c.fits;
        s["predictions"] = c.predictions;
        for (const auto& [k, v] : c.extra.items()) s[k] = v;
        a.summary = s.dump(2) + "\n";
        const std::string model_id = model.name().empty() ? model.family_name() : model.name();
        a.csv = render_csv(c.rows, model_id);
        a.status = ExitCode::Ok;
    } catch (const UnsupportedError& e) {
        a.status = ExitCode::Unsupported;
        a.error = e.what();
    } catch (const ValidationError& e) {
        a.status = ExitCode::Validation;
        a.error = e.what();
    } catch (const DomainError& e) {
        a.status = ExitCode::Validation;
        a.error = e.what();
    } catch (const std::exception& e) {
        a.status = ExitCode::Internal;
        a.error = e.what();
    }
    return a;
}

namespace {

struct Flags {
    std::uint64_t seed = 0;
    std::uint64_t reps = 0;
    unsigned workers = 1;
    std::string out;
    std::size_t fine_factor = 0;
    std::size_t resolution = 0;
    std::string n;
    std::vector<double> p, x, eps;
    double shift = 0.0;
    std::string quantity;
    std::map<std::string, CLI::Option*> opts;

    void attach(CLI::App* sub) {
        opts["seed"] = sub->add_option("--seed", seed, "RNG seed (mandatory for simulations)");
        opts["reps"] = sub->add_option("--reps", reps, "Monte Carlo replications (>= 100)");
        opts["workers"] = sub->add_option("--workers", workers, "worker threads");
        opts["out"] = sub->add_option("--out", out, "output stem for <out>.csv and <out>.json");
        opts["fine"] = sub->add_option("--fine-factor", fine_factor, "fine steps per coarse step (K)");
        opts["n"] = sub->add_option("--n", n, "n-grid, e.g. 64..4096 or 64,256");
        opts["p"] = sub->add_option("--p", p, "moment exponents")->delimiter(',');
        opts["x"] = sub->add_option("--x", x, "levels x")->delimiter(',');
        opts["eps"] = sub->add_option("--eps", eps, "small times for tails")->delimiter(',');
        opts["res"] = sub->add_option("--resolution", resolution, "path steps for tails");
        opts["shift"] = sub->add_option("--shift", shift, "coarse grid shift in [0, 1)");
        opts["q"] = sub->add_option("--quantity", quantity, "rates: moment | delta");
    }
    bool given(const std::string& k) const { return opts.at(k)->count() > 0; }

    void apply(ExperimentConfig& c) const {
        if (given("seed")) c.seed = seed;
        if (given("reps")) c.reps = reps;
        if (given("workers")) c.workers = workers;
        if (given("out")) c.out = out;
        if (given("fine")) c.fine_factor = fine_factor;
        if (given("n")) c.ns = parse_n_grid(n);
        if (given("p")) c.ps = p;
        if (given("x")) c.xs = x;
        if (given("eps")) c.eps = eps;
        if (given("res")) c.resolution = resolution;
        if (given("shift")) c.shift = shift;
        if (given("q")) c.quantity = quantity;
    }
};

bool write_file(const std::string& path, const std::string& body, std::ostream& err) {
    std::ofstream f(path, std::ios::binary);
    if (!f) {
        err << "error: cannot write '" << path << "'\n";
        return false;
    }
    f << body;
    return static_cast<bool>(f);
}

}  // namespace

int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Discretization error of the supremum of Levy processes", "levysup"};
    app.set_version_flag("--version", std::string(LEVYSUP_VERSION));
    app.require_subcommand(1);

    std::map<std::string, Flags> flags;
    std::map<std::string, std::string> model_arg;
    static const std::map<std::string, std::string> help{
        {"classify", "zooming-in class of a model"},
        {"expect", "asymptotic constants E X^+ and E V^"},
        {"moments", "E (V^(n))^p over an n-grid"},
        {"delta", "detection error P(M > x, M^(n) <= x)"},
        {"cpp", "compound Poisson limit of n E(M - M^(n))"},
        {"tails", "small-time tails of tau, M and X_eps"},
        {"rates", "log-log rate fit of the error"}};
    for (const auto& [kind, text] : help) {
        CLI::App* sub = app.add_subcommand(kind, text);
        sub->add_option("model", model_arg[kind], "model file (.toml or .json)")->required();
        flags[kind].attach(sub);
    }
    std::vector<std::string> run_args;
    CLI::App* run_cmd = app.add_subcommand("run", "run <config.toml> or run <kind> <model-file>");
    run_cmd->add_option("args", run_args, "config file, or kind and model file")->required()->expected(1, 2);
    flags["run"].attach(run_cmd);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : static_cast<int>(ExitCode::Validation);
    }

    ExperimentConfig cfg;
    try {
        std::string kind;
        for (const auto& [k, _] : help) {
            if (app.got_subcommand(k)) kind = k;
        }
        if (!kind.empty()) {
            cfg.kind = kind;
            cfg.model_file = model_arg[kind];
            flags[kind].apply(cfg);
        } else {
            if (run_args.size() == 1) {
                cfg = load_config(run_args[0]);
            } else {
                cfg.kind = run_args[0];
                cfg.model_file = run_args[1];
            }
            flags["run"].apply(cfg);
        }
    } catch (const ValidationError& e) {
        err << "error: " << e.what() << '\n';
        return static_cast<int>(ExitCode::Validation);
    }

    const Artifacts a = run(cfg);
    if (a.status != ExitCode::Ok) {
        err << "error: " << a.error << '\n';
        return static_cast<int>(a.status);
    }
    if (!cfg.out.empty()) {
        if (!write_file(cfg.out + ".csv", a.csv, err) || !write_file(cfg.out + ".json", a.summary, err)) {
            return static_cast<int>(ExitCode::Internal);
        }
    }
    out << a.summary;
    return 0;
}

}  // namespace levysup::cli
