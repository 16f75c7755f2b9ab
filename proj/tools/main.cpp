// Command-line front end: seeded model construction, gap sweeps along annealing
// paths, direct annealing runs, gap-scaling fits, EC3 ensemble statistics, and
// avoided-crossing reports.  Every output file begins with the effective run
// configuration; rerunning the echoed configuration reproduces the file byte
// for byte.

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qaa/afm.hpp"
#include "qaa/cost.hpp"
#include "qaa/crossings.hpp"
#include "qaa/ec3.hpp"
#include "qaa/eigensolve.hpp"
#include "qaa/evolve.hpp"
#include "qaa/geometry.hpp"
#include "qaa/lbit.hpp"
#include "qaa/path.hpp"
#include "qaa/scaling.hpp"
#include "qaa/schedule.hpp"
#include "qaa/sweep.hpp"
#include "qaa/version.hpp"

using nlohmann::ordered_json;

namespace {

std::string fmt17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// effective run configuration, echoed into every output file
class ConfigEcho {
public:
    void add(const std::string& k, const std::string& v) { kv_.emplace_back(k, v); }
    void add(const std::string& k, const char* v) { kv_.emplace_back(k, v); }
    void add(const std::string& k, double v) { add(k, fmt17(v)); }
    void add(const std::string& k, int v) { add(k, std::to_string(v)); }
    void add(const std::string& k, std::uint64_t v) { add(k, std::to_string(v)); }
    void add(const std::string& k, bool v) { add(k, std::string(v ? "true" : "false")); }
    std::vector<std::pair<std::string, std::string>> sorted() const {
        auto s = kv_;
        std::sort(s.begin(), s.end());
        return s;
    }

private:
    std::vector<std::pair<std::string, std::string>> kv_;
};

struct OutFile {
    FILE* f = nullptr;
    bool own = false;
    explicit OutFile(const std::string& path) {
        if (path.empty()) {
            f = stdout;
        } else {
            f = std::fopen(path.c_str(), "wb");
            own = true;
            if (!f) throw std::runtime_error("cannot open output file: " + path);
        }
    }
    OutFile(const OutFile&) = delete;
    OutFile& operator=(const OutFile&) = delete;
    ~OutFile() {
        if (own && f) std::fclose(f);
    }
};

void write_provenance(FILE* f, const ConfigEcho& echo) {
    std::fprintf(f, "# %s\n", qaa::version_string);
    for (const auto& [k, v] : echo.sorted())
        std::fprintf(f, "# config: %s=%s\n", k.c_str(), v.c_str());
}

ordered_json config_json(const ConfigEcho& echo) {
    ordered_json j = ordered_json::object();
    for (const auto& [k, v] : echo.sorted()) j[k] = v;
    return j;
}

std::string sidecar_path(const std::string& out) {
    if (out.size() >= 4 && out.compare(out.size() - 4, 4, ".csv") == 0)
        return out.substr(0, out.size() - 4) + ".json";
    return out + ".json";
}

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

// CLI11 only consults set_config on the root app, so per-subcommand config files
// are applied by hand: key=value lines fill any option the command line left
// unset (explicit flags always win).
void apply_config_file(CLI::App* sub) {
    const CLI::Option* cfg = sub->get_config_ptr();
    if (cfg == nullptr || cfg->count() == 0) return;
    const std::string path = cfg->as<std::string>();
    std::ifstream in(path);
    if (!in) throw std::runtime_error("config: cannot open " + path);

    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#' || t[0] == ';' || t[0] == '[') continue;
        const auto eq = t.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error("config: expected key=value at " + path + ":" +
                                     std::to_string(lineno));
        const std::string key = trim(t.substr(0, eq));
        std::string value = trim(t.substr(eq + 1));
        if (value.size() >= 2 && (value.front() == '"' || value.front() == '\'') &&
            value.back() == value.front())
            value = value.substr(1, value.size() - 2);
        if (key.empty() || key == "config")
            throw std::runtime_error("config: bad key at " + path + ":" + std::to_string(lineno));

        CLI::Option* op = sub->get_option_no_throw("--" + key);
        if (op == nullptr)
            throw std::runtime_error("config: unknown option '" + key + "' in " + path);
        if (op->count() > 0) continue;  // given on the command line
        op->add_result(value);
        op->run_callback();
    }
}

void write_json_file(const std::string& path, const ordered_json& j) {
    OutFile out(path);
    const std::string s = j.dump(2);
    std::fwrite(s.data(), 1, s.size(), out.f);
    std::fputc('\n', out.f);
}

std::string one_line(std::string msg) {
    for (char& c : msg)
        if (c == '\n' || c == '\r' || c == ',') c = ';';
    return msg;
}

double parse_real(const std::string& s, const char* what) {
    std::size_t pos = 0;
    double v = 0;
    try {
        v = std::stod(s, &pos);
    } catch (const std::exception&) {
        pos = 0;
    }
    if (pos != s.size()) throw std::runtime_error(std::string("cannot parse ") + what + ": " + s);
    return v;
}

std::pair<double, double> parse_range(const std::string& s) {
    const std::size_t c = s.rfind(':');
    if (c == std::string::npos || c == 0 || c + 1 == s.size())
        throw std::runtime_error("--range wants lo:hi, got: " + s);
    return {parse_real(s.substr(0, c), "--range"), parse_real(s.substr(c + 1), "--range")};
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (start <= s.size()) {
        const std::size_t end = s.find(sep, start);
        if (end == std::string::npos) {
            parts.push_back(s.substr(start));
            break;
        }
        parts.push_back(s.substr(start, end - start));
        start = end + 1;
    }
    return parts;
}

std::vector<double> linspace(double lo, double hi, int points) {
    if (points < 2 || !(hi > lo))
        throw std::runtime_error("grid wants hi > lo and at least 2 points");
    std::vector<double> g(static_cast<std::size_t>(points));
    for (int i = 0; i < points; ++i)
        g[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (points - 1);
    g.back() = hi;
    return g;
}

// ---- model construction ----------------------------------------------------

struct ModelFlags {
    std::string model = "ec3";
    int size = 12;  // --n / --L
    std::uint64_t seed = 1;
    double alpha = 0.62;
    std::string instance_file;
    double gamma = 0.3;
    std::string bc = "periodic";
    int int_lo = -1, int_hi = 1, series_order = 6;
    double series_decay = 0.9, series_amp = 2.0, xi = 2.0, probe = 0.0;
    double lz_a = 1.0, lz_b = 0.1;
};

void add_model_flags(CLI::App* c, ModelFlags& m) {
    c->add_option("--model", m.model, "model kind")
        ->check(CLI::IsMember({"ec3", "ising-file", "afm-chain", "lbit", "lz"}));
    c->add_option("--n,--L", m.size, "spin count / chain length");
    c->add_option("--seed", m.seed, "master seed");
    c->add_option("--alpha", m.alpha, "EC3 clause density M/N");
    c->add_option("--instance-file", m.instance_file,
                  "instance file (EC3 text format) for --model ising-file");
    c->add_option("--gamma", m.gamma, "afm-chain transverse field");
    c->add_option("--bc", m.bc, "afm-chain boundary conditions")
        ->check(CLI::IsMember({"periodic", "open"}));
    c->add_option("--int-lo", m.int_lo, "lbit integer draw range, low");
    c->add_option("--int-hi", m.int_hi, "lbit integer draw range, high");
    c->add_option("--series-order", m.series_order, "lbit highest lambda power");
    c->add_option("--series-decay", m.series_decay, "lbit series coefficient decay r");
    c->add_option("--series-amp", m.series_amp, "lbit series coefficient amplitude");
    c->add_option("--xi", m.xi, "lbit locality length");
    c->add_option("--probe", m.probe, "transverse probe strength on the lbit family");
    c->add_option("--a", m.lz_a, "lz diabatic slope");
    c->add_option("--b", m.lz_b, "lz coupling");
}

void echo_model(ConfigEcho& e, const ModelFlags& m) {
    e.add("model", m.model);
    if (m.model == "ising-file")
        e.add("instance_file", m.instance_file);
    else if (m.model != "lz")
        e.add("n", m.size);
    if (m.model == "ec3" || m.model == "lbit") e.add("seed", m.seed);
    if (m.model == "ec3") e.add("alpha", m.alpha);
    if (m.model == "afm-chain") {
        e.add("gamma", m.gamma);
        e.add("bc", m.bc);
    }
    if (m.model == "lbit") {
        e.add("int_lo", m.int_lo);
        e.add("int_hi", m.int_hi);
        e.add("series_order", m.series_order);
        e.add("series_decay", m.series_decay);
        e.add("series_amp", m.series_amp);
        e.add("xi", m.xi);
        e.add("probe", m.probe);
    }
    if (m.model == "lz") {
        e.add("a", m.lz_a);
        e.add("b", m.lz_b);
    }
}

qaa::ClassicalCostFunction make_cost(const ModelFlags& m) {
    qaa::Ec3Cost ec = (m.model == "ec3")
                          ? qaa::ec3_to_cost(qaa::random_ec3(m.size, m.alpha, m.seed))
                          : qaa::ec3_to_cost(qaa::load_ec3(m.instance_file));
    qaa::ClassicalCostFunction cost = ec.cost;
    cost.add_constant(ec.constant);  // H(s=1) then reproduces the clause-violation count
    return cost;
}

std::string default_param(const std::string& model) {
    if (model == "afm-chain") return "h";
    if (model == "lbit") return "lambda";
    return "s";
}

qaa::OperatorFamily make_family(const ModelFlags& m, const std::string& param) {
    if (m.model == "ec3" || m.model == "ising-file") {
        const qaa::AnnealingPath path = qaa::build_annealing_path(make_cost(m));
        if (param == "s") return path.family_s();
        if (param == "lambda") return path.family_lambda();
        throw std::runtime_error("cost models sweep in --param s or lambda");
    }
    if (m.model == "afm-chain") {
        if (param != "h") throw std::runtime_error("afm-chain sweeps in --param h");
        return qaa::afm_h_family(m.size, m.gamma,
                                 m.bc == "open" ? qaa::Boundary::open : qaa::Boundary::periodic);
    }
    if (m.model == "lbit") {
        if (param != "lambda") throw std::runtime_error("lbit sweeps in --param lambda");
        qaa::LBitParams p;
        p.int_range_lo = m.int_lo;
        p.int_range_hi = m.int_hi;
        p.series_order = m.series_order;
        p.series_decay = m.series_decay;
        p.series_amp = m.series_amp;
        p.decay_xi = m.xi;
        return qaa::lbit_lambda_family(qaa::sample_lbit_model(m.size, m.seed, p), m.probe);
    }
    if (m.model == "lz") {
        if (param != "s") throw std::runtime_error("lz sweeps in --param s");
        return qaa::landau_zener_family(m.lz_a, m.lz_b);
    }
    throw std::runtime_error("unknown model: " + m.model);
}

std::pair<double, double> default_range(const std::string& param) {
    if (param == "h") return {-0.5, 0.5};
    return {0.0, 1.0};
}

// ---- sweep pipeline (shared by sweep and crossings) -------------------------

struct SweepArgs {
    ModelFlags model;
    std::string param;  // filled from the model when left empty
    std::string range;
    int points = 101;
    int levels = 4;
    double tol = 1e-9;
    int max_iter = 4000;
    int threads = 1;
    bool refine = true;
    std::string out;
};

void add_sweep_flags(CLI::App* c, SweepArgs& a) {
    add_model_flags(c, a.model);
    c->add_option("--param", a.param, "sweep parameter: s, lambda or h");
    c->add_option("--range", a.range, "sweep range lo:hi");
    c->add_option("--points", a.points, "grid points");
    c->add_option("--levels", a.levels, "levels to solve (k)");
    c->add_option("--tol", a.tol, "eigensolver residual tolerance");
    c->add_option("--max-iter", a.max_iter, "eigensolver iteration cap");
    c->add_option("--threads", a.threads, "worker threads");
    c->add_flag("--refine,!--no-refine", a.refine, "refine the interior gap minimum");
    c->add_option("--out", a.out, "output CSV path (stdout when omitted)");
}

struct SweepRun {
    qaa::OperatorFamily family;
    qaa::GapProfile profile;
    ConfigEcho echo;
    double lo = 0, hi = 0;
};

SweepRun run_sweep(SweepArgs& a, const char* command, bool keep_vectors) {
    if (a.param.empty()) a.param = default_param(a.model.model);
    const auto [lo, hi] = a.range.empty() ? default_range(a.param) : parse_range(a.range);

    SweepRun r;
    r.lo = lo;
    r.hi = hi;
    r.family = make_family(a.model, a.param);
    if (r.family.n_spins < 26)
        a.levels = static_cast<int>(std::min<long long>(a.levels, 1ll << r.family.n_spins));
    qaa::SolverOptions solver;
    solver.tol = a.tol;
    solver.max_iter = a.max_iter;
    qaa::SweepOptions sweep;
    sweep.keep_vectors = keep_vectors;
    sweep.n_threads = a.threads;
    r.profile = qaa::gap_sweep(r.family, linspace(lo, hi, a.points), a.levels, solver, sweep);
    if (a.refine) qaa::refine_profile_min(r.family, r.profile, 1e-7 * (hi - lo), solver);

    r.echo.add("command", command);
    echo_model(r.echo, a.model);
    r.echo.add("param", a.param);
    r.echo.add("range", fmt17(lo) + ":" + fmt17(hi));
    r.echo.add("points", a.points);
    r.echo.add("levels", a.levels);
    r.echo.add("tol", a.tol);
    r.echo.add("max_iter", a.max_iter);
    r.echo.add("threads", a.threads);
    r.echo.add("refine", a.refine);
    r.echo.add("out", a.out);
    return r;
}

void write_sweep_csv(FILE* f, const SweepRun& r) {
    write_provenance(f, r.echo);
    std::fprintf(f, "param");
    for (int l = 0; l < r.profile.k; ++l) std::fprintf(f, ",E%d", l);
    std::fprintf(f, ",gap,v10\n");
    for (std::size_t i = 0; i < r.profile.grid.size(); ++i) {
        const qaa::GapPoint& pt = r.profile.grid[i];
        if (pt.failed) {
            std::fprintf(f, "# failed: param=%s %s\n", fmt17(pt.param).c_str(),
                         one_line(pt.error).c_str());
            continue;
        }
        std::fprintf(f, "%s", fmt17(pt.param).c_str());
        for (int l = 0; l < r.profile.k; ++l)
            std::fprintf(f, ",%s",
                         fmt17(r.profile.slices[i].energies[static_cast<std::size_t>(l)]).c_str());
        std::fprintf(f, ",%s,%s\n", fmt17(pt.gap).c_str(),
                     pt.v10_valid ? fmt17(pt.v10).c_str() : "");
    }
}

ordered_json min_gap_json(const qaa::GapProfile& p) {
    if (p.min_index < 0) return nullptr;
    return ordered_json{{"param", p.min_param}, {"gap", p.min_gap}};
}

int cmd_sweep(SweepArgs& a) {
    SweepRun r = run_sweep(a, "sweep", false);
    {
        OutFile out(a.out);
        write_sweep_csv(out.f, r);
    }
    if (!a.out.empty()) {
        ordered_json side;
        side["config"] = config_json(r.echo);
        side["min_gap"] = min_gap_json(r.profile);
        side["crossings"] = ordered_json::array();
        side["version"] = qaa::version_string;
        write_json_file(sidecar_path(a.out), side);
    }
    return r.profile.any_failure ? 2 : 0;
}

// ---- crossings ---------------------------------------------------------------

struct CrossArgs {
    SweepArgs sweep;
    std::string pairs = "0:1";
    double gap_threshold = 0.1;
    double lambda_star = 0.0;  // 0 = derive from N
    double lambda_cr = 0.0;
};

std::vector<std::pair<int, int>> parse_pairs(const std::string& s) {
    std::vector<std::pair<int, int>> out;
    for (const std::string& part : split(s, ',')) {
        const std::size_t c = part.find(':');
        if (c == std::string::npos)
            throw std::runtime_error("--pairs wants lo:hi[,lo:hi...], got: " + s);
        out.emplace_back(static_cast<int>(parse_real(part.substr(0, c), "--pairs")),
                         static_cast<int>(parse_real(part.substr(c + 1), "--pairs")));
    }
    return out;
}

int cmd_crossings(CrossArgs& c) {
    if (c.sweep.out.empty())
        throw std::runtime_error("crossings: --out is required (the JSON sidecar carries the reports)");
    SweepRun r = run_sweep(c.sweep, "crossings", true);
    r.echo.add("pairs", c.pairs);
    r.echo.add("gap_threshold", c.gap_threshold);

    qaa::CrossingThresholds thr{c.lambda_star, c.lambda_cr};
    if (thr.lambda_star == 0.0 && thr.lambda_cr == 0.0 && r.family.n_spins >= 2)
        thr = qaa::default_crossing_thresholds(r.family.n_spins);
    r.echo.add("lambda_star", thr.lambda_star);
    r.echo.add("lambda_cr", thr.lambda_cr);

    qaa::SolverOptions solver;
    solver.tol = c.sweep.tol;
    solver.max_iter = c.sweep.max_iter;
    const std::vector<qaa::CrossingReport> reports =
        qaa::detect_crossings(r.family, r.profile, parse_pairs(c.pairs), c.gap_threshold, thr,
                              solver);

    {
        OutFile out(c.sweep.out);
        write_sweep_csv(out.f, r);
    }
    ordered_json arr = ordered_json::array();
    for (const qaa::CrossingReport& cr : reports) {
        ordered_json j;
        j["param_star"] = cr.param_star;
        j["gap_star"] = cr.gap_star;
        j["level_pair"] = {cr.level_lower, cr.level_upper};
        j["config_lower"] = cr.config_lower.to_string();
        j["config_upper"] = cr.config_upper.to_string();
        j["hamming_d"] = cr.hamming_d;
        j["classification"] = cr.classification;
        j["exact"] = cr.exact;
        j["delocalized"] = cr.delocalized;
        j["weight_lower"] = cr.weight_lower;
        j["weight_upper"] = cr.weight_upper;
        arr.push_back(std::move(j));
    }
    ordered_json side;
    side["config"] = config_json(r.echo);
    side["min_gap"] = min_gap_json(r.profile);
    side["crossings"] = std::move(arr);
    side["version"] = qaa::version_string;
    write_json_file(sidecar_path(c.sweep.out), side);
    return r.profile.any_failure ? 2 : 0;
}

// ---- evolve ------------------------------------------------------------------

struct EvolveArgs {
    ModelFlags model;
    std::vector<double> t_list;
    std::string schedule;  // "u:s,u:s,..." knots; empty = linear
    double dt_max = 2.0;
    double tol = 1e-6;
    int threads = 1;
    std::string out;
};

int cmd_evolve(EvolveArgs& a) {
    const qaa::OperatorFamily family = make_family(a.model, "s");

    qaa::AnnealSchedule shape = qaa::AnnealSchedule::linear(1.0);
    if (!a.schedule.empty()) {
        std::vector<std::pair<double, double>> knots;
        for (const std::string& part : split(a.schedule, ',')) {
            const std::size_t c = part.find(':');
            if (c == std::string::npos)
                throw std::runtime_error("--schedule wants u:s[,u:s...], got: " + a.schedule);
            knots.emplace_back(parse_real(part.substr(0, c), "--schedule"),
                               parse_real(part.substr(c + 1), "--schedule"));
        }
        shape = qaa::AnnealSchedule::piecewise(1.0, std::move(knots));
    }

    qaa::EvolveOptions opts;
    opts.dt_max = a.dt_max;
    opts.tol = a.tol;
    opts.n_threads = a.threads;

    // the driver-ground default only fits H(0) = sum X; the lz family starts
    // from its own ground state
    std::optional<qaa::StateVector> initial;
    if (a.model.model == "lz") {
        const qaa::SpectrumSlice g = qaa::lowest_k(family.at(0.0), 1, {}, true);
        initial = g.eigenvectors[0].cast<std::complex<double>>();
    }

    const std::vector<qaa::SuccessPoint> curve =
        qaa::success_curve(family, a.t_list, shape, opts, initial);

    ConfigEcho echo;
    echo.add("command", "evolve");
    echo_model(echo, a.model);
    std::string ts;
    for (std::size_t i = 0; i < a.t_list.size(); ++i)
        ts += (i ? "," : "") + fmt17(a.t_list[i]);
    echo.add("T_list", ts);
    echo.add("schedule", a.schedule.empty() ? "linear" : a.schedule);
    echo.add("dt_max", a.dt_max);
    echo.add("tol", a.tol);
    echo.add("threads", a.threads);
    echo.add("out", a.out);

    OutFile out(a.out);
    write_provenance(out.f, echo);
    std::fprintf(out.f, "T,success_probability,residual_energy,norm_drift\n");
    for (const qaa::SuccessPoint& p : curve)
        std::fprintf(out.f, "%s,%s,%s,%s\n", fmt17(p.total_time).c_str(),
                     fmt17(p.success_probability).c_str(), fmt17(p.residual_energy).c_str(),
                     fmt17(p.norm_drift).c_str());
    for (const qaa::SuccessPoint& p : curve)
        if (p.monotone_break)
            std::fprintf(stderr, "note: success probability dips at T=%s\n",
                         fmt17(p.total_time).c_str());
    return 0;
}

// ---- scale ---------------------------------------------------------------------

struct ScaleArgs {
    ModelFlags model;
    std::vector<int> sizes;
    std::string inject;  // "size:gap,..." bypasses the sweeps
    std::string param = "h";
    std::string range;
    int points = 41;
    int levels = 2;
    double tol = 1e-9;
    int max_iter = 4000;
    int threads = 1;
    std::string out;
};

int cmd_scale(ScaleArgs& a) {
    ConfigEcho echo;
    echo.add("command", "scale");

    std::vector<double> sizes, gaps;
    ordered_json points = ordered_json::array();
    if (!a.inject.empty()) {
        for (const std::string& part : split(a.inject, ',')) {
            const std::size_t c = part.find(':');
            if (c == std::string::npos)
                throw std::runtime_error("--inject wants size:gap[,size:gap...], got: " + a.inject);
            sizes.push_back(parse_real(part.substr(0, c), "--inject"));
            gaps.push_back(parse_real(part.substr(c + 1), "--inject"));
        }
        echo.add("inject", a.inject);
    } else {
        if (a.model.model != "afm-chain")
            throw std::runtime_error("scale sweeps are wired for --model afm-chain; "
                                     "use --inject for other gap tables");
        echo_model(echo, a.model);
        const auto [lo, hi] = a.range.empty() ? default_range(a.param) : parse_range(a.range);
        std::string sz;
        for (std::size_t i = 0; i < a.sizes.size(); ++i)
            sz += (i ? "," : "") + std::to_string(a.sizes[i]);
        echo.add("sizes", sz);
        echo.add("param", a.param);
        echo.add("range", fmt17(lo) + ":" + fmt17(hi));
        echo.add("points", a.points);
        echo.add("levels", a.levels);
        echo.add("tol", a.tol);
        echo.add("max_iter", a.max_iter);
        echo.add("threads", a.threads);

        qaa::SolverOptions solver;
        solver.tol = a.tol;
        solver.max_iter = a.max_iter;
        qaa::SweepOptions sweep;
        sweep.keep_vectors = false;
        sweep.compute_v10 = false;
        sweep.n_threads = a.threads;
        for (int L : a.sizes) {
            ModelFlags mf = a.model;
            mf.size = L;
            try {
                const qaa::OperatorFamily fam = make_family(mf, a.param);
                qaa::GapProfile prof =
                    qaa::gap_sweep(fam, linspace(lo, hi, a.points), a.levels, solver, sweep);
                if (prof.min_index < 0) throw qaa::SolverFailure("no successful grid point", {}, {});
                qaa::refine_profile_min(fam, prof, 1e-7 * (hi - lo), solver);
                sizes.push_back(L);
                gaps.push_back(prof.min_gap);
                points.push_back(ordered_json{
                    {"size", L}, {"min_param", prof.min_param}, {"min_gap", prof.min_gap}});
            } catch (const std::exception& e) {
                std::fprintf(stderr, "warning: size %d dropped: %s\n", L, e.what());
            }
        }
    }
    echo.add("out", a.out);

    if (sizes.size() < 4) {
        std::fprintf(stderr, "error: %zu usable sizes, need at least 4 for a fit\n", sizes.size());
        return 2;
    }
    const qaa::ScalingFit fit = qaa::fit_gap_scaling(sizes, gaps);

    auto model_json = [](const qaa::FittedModel& m) {
        ordered_json j;
        j["model"] = m.model;
        j["amplitude"] = m.amplitude;
        j["rate"] = m.rate;
        j["rss"] = m.rss;
        j["r_squared"] = m.r_squared;
        j["aicc"] = m.aicc;
        return j;
    };
    ordered_json root;
    root["config"] = config_json(echo);
    ordered_json fj;
    fj["sizes"] = fit.sizes;
    fj["gaps"] = fit.gaps;
    fj["polynomial"] = model_json(fit.polynomial);
    fj["exponential"] = model_json(fit.exponential);
    fj["preferred"] = fit.preferred;
    root["fit"] = std::move(fj);
    if (!points.empty()) root["points"] = std::move(points);
    root["version"] = qaa::version_string;
    write_json_file(a.out, root);
    return 0;
}

// ---- ec3stats ------------------------------------------------------------------

struct Ec3StatsArgs {
    int n = 18;
    std::vector<double> alphas = {0.3, 0.45, 0.62, 0.8, 1.0};
    int instances = 200;
    std::uint64_t seed = 1;
    bool geometry = true;
    int threads = 1;
    std::string out;
};

int cmd_ec3stats(Ec3StatsArgs& a) {
    const std::vector<qaa::SatThresholdPoint> table =
        qaa::ec3_sat_threshold(a.n, a.alphas, a.instances, a.seed, a.geometry, a.threads);

    ConfigEcho echo;
    echo.add("command", "ec3stats");
    echo.add("n", a.n);
    std::string as;
    for (std::size_t i = 0; i < a.alphas.size(); ++i) as += (i ? "," : "") + fmt17(a.alphas[i]);
    echo.add("alphas", as);
    echo.add("instances", a.instances);
    echo.add("seed", a.seed);
    echo.add("geometry", a.geometry);
    echo.add("threads", a.threads);
    echo.add("out", a.out);

    OutFile out(a.out);
    write_provenance(out.f, echo);
    std::fprintf(out.f, "alpha,P_sat,stderr,mean_max_distance_over_N\n");
    for (const qaa::SatThresholdPoint& p : table)
        std::fprintf(out.f, "%s,%s,%s,%s\n", fmt17(p.alpha).c_str(), fmt17(p.p_sat).c_str(),
                     fmt17(p.stderr_p).c_str(),
                     a.geometry ? fmt17(p.mean_max_distance_over_n).c_str() : "");
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"spin-annealing spectral and dynamics toolkit"};
    app.require_subcommand(1);

    SweepArgs sweep_args;
    CLI::App* sweep = app.add_subcommand("sweep", "lowest-k spectrum along a parameter grid");
    sweep->set_config("--config");
    add_sweep_flags(sweep, sweep_args);

    CrossArgs cross_args;
    CLI::App* crossings =
        app.add_subcommand("crossings", "sweep plus avoided-crossing detection and labeling");
    crossings->set_config("--config");
    add_sweep_flags(crossings, cross_args.sweep);
    crossings->add_option("--pairs", cross_args.pairs, "level pairs to scan, lo:hi[,lo:hi...]");
    crossings->add_option("--gap-threshold", cross_args.gap_threshold,
                          "report local minima below this gap");
    crossings->add_option("--lambda-star", cross_args.lambda_star,
                          "perturbative-window edge (0 = derive from N)");
    crossings->add_option("--lambda-cr", cross_args.lambda_cr,
                          "localization boundary (0 = derive from N)");

    EvolveArgs evolve_args;
    CLI::App* evolve = app.add_subcommand("evolve", "anneal and report success probabilities");
    evolve->set_config("--config");
    add_model_flags(evolve, evolve_args.model);
    evolve->add_option("--T-list", evolve_args.t_list, "anneal times, ascending")->delimiter(',');
    evolve->add_option("--schedule", evolve_args.schedule,
                       "piecewise-linear s(t) knots u:s[,u:s...]; default linear");
    evolve->add_option("--dt-max", evolve_args.dt_max, "step size cap");
    evolve->add_option("--tol", evolve_args.tol, "integration accuracy budget");
    evolve->add_option("--threads", evolve_args.threads, "worker threads");
    evolve->add_option("--out", evolve_args.out, "output CSV path (stdout when omitted)");

    ScaleArgs scale_args;
    CLI::App* scale = app.add_subcommand("scale", "minimum-gap scaling fit over system sizes");
    scale->set_config("--config");
    add_model_flags(scale, scale_args.model);
    scale->add_option("--sizes", scale_args.sizes, "system sizes (need >= 4)")->delimiter(',');
    scale->add_option("--inject", scale_args.inject, "size:gap[,size:gap...] table, skips sweeps");
    scale->add_option("--param", scale_args.param, "sweep parameter");
    scale->add_option("--range", scale_args.range, "sweep range lo:hi");
    scale->add_option("--points", scale_args.points, "grid points per size");
    scale->add_option("--levels", scale_args.levels, "levels to solve (k)");
    scale->add_option("--tol", scale_args.tol, "eigensolver residual tolerance");
    scale->add_option("--max-iter", scale_args.max_iter, "eigensolver iteration cap");
    scale->add_option("--threads", scale_args.threads, "worker threads");
    scale->add_option("--out", scale_args.out, "output JSON path (stdout when omitted)");

    Ec3StatsArgs ec3_args;
    CLI::App* ec3stats =
        app.add_subcommand("ec3stats", "EC3 satisfiability threshold and ground-state geometry");
    ec3stats->set_config("--config");
    ec3stats->add_option("--n", ec3_args.n, "variable count");
    ec3stats->add_option("--alphas", ec3_args.alphas, "clause densities")->delimiter(',');
    ec3stats->add_option("--instances", ec3_args.instances, "instances per density");
    ec3stats->add_option("--seed", ec3_args.seed, "master seed");
    ec3stats->add_flag("--geometry,!--no-geometry", ec3_args.geometry,
                       "also survey ground-manifold Hamming geometry");
    ec3stats->add_option("--threads", ec3_args.threads, "worker threads");
    ec3stats->add_option("--out", ec3_args.out, "output CSV path (stdout when omitted)");

    CLI11_PARSE(app, argc, argv);

    try {
        for (CLI::App* sub : {sweep, crossings, evolve, scale, ec3stats})
            if (sub->parsed()) apply_config_file(sub);
        if (sweep->parsed()) return cmd_sweep(sweep_args);
        if (crossings->parsed()) return cmd_crossings(cross_args);
        if (evolve->parsed()) return cmd_evolve(evolve_args);
        if (scale->parsed()) return cmd_scale(scale_args);
        if (ec3stats->parsed()) return cmd_ec3stats(ec3_args);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
