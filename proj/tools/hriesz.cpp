// Command-line driver: experiments, reports and the acceptance suite.
#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "hriesz/bilinear.hpp"
#include "hriesz/biradial.hpp"
#include "hriesz/io.hpp"
#include "hriesz/kernel.hpp"
#include "hriesz/spectral.hpp"
#include "hriesz/testfns.hpp"
#include "hriesz/verify.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace hriesz;

namespace {

const double kInf = std::numeric_limits<double>::infinity();

enum Exit { kPass = 0, kFail = 1, kUsage = 2 };

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Config {
    std::string command;
    int n = 1;
    std::optional<double> alpha;
    int m = 1;
    std::optional<int> kmax;
    std::string grid;  // "NZxNT"
    std::optional<int> jmax;
    std::uint64_t seed = 7;
    std::string out;
    std::string format = "csv";
    std::vector<std::string> only;
    bool double_kmax = false;
    std::size_t trials = 3;
    double R = 1;
    std::vector<std::string> args;

    json to_json() const {
        json j = {{"command", command}, {"n", n},        {"m", m},           {"grid", grid},
                  {"seed", seed},       {"out", out},    {"format", format}, {"only", only},
                  {"double_kmax", double_kmax}, {"trials", trials}, {"R", R}, {"args", args}};
        j["alpha"] = alpha ? json(*alpha) : json(nullptr);
        j["kmax"] = kmax ? json(*kmax) : json(nullptr);
        j["jmax"] = jmax ? json(*jmax) : json(nullptr);
        return j;
    }
};

double parse_exponent(const std::string& s) {
    if (s == "inf" || s == "infinity" || s == "Inf") return kInf;
    std::size_t pos = 0;
    double v;
    try {
        v = std::stod(s, &pos);
    } catch (const std::exception&) {
        throw UsageError("not an exponent: " + s);
    }
    if (pos != s.size() || !(v >= 1)) throw UsageError("exponent must be a number >= 1 or inf: " + s);
    return v;
}

std::string exponent_str(double p) {
    if (std::isinf(p)) return "inf";
    std::ostringstream os;
    os << p;
    return os.str();
}

std::pair<std::size_t, std::size_t> parse_grid(const std::string& s, std::size_t nz, std::size_t nt) {
    if (s.empty()) return {nz, nt};
    auto x = s.find('x');
    try {
        if (x == std::string::npos) throw std::invalid_argument(s);
        long a = std::stol(s.substr(0, x)), b = std::stol(s.substr(x + 1));
        if (a < 5 || b < 5) throw std::invalid_argument(s);
        return {static_cast<std::size_t>(a), static_cast<std::size_t>(b)};
    } catch (const std::exception&) {
        throw UsageError("--grid expects NZxNT with both counts >= 5, got " + s);
    }
}

Grid lattice_grid(int n, double hz, std::size_t nz, double ht, std::size_t nt) {
    std::vector<Axis> axes;
    for (int d = 0; d < 2 * n; ++d) axes.push_back(lattice_axis(hz, nz));
    axes.push_back(lattice_axis(ht, nt));
    return Grid(axes);
}

class Reporter {
public:
    explicit Reporter(const Config& c) : cfg_(c), dir_(c.out) {
        std::error_code ec;
        fs::create_directories(dir_, ec);
        if (ec || !fs::is_directory(dir_)) throw UsageError("cannot create output directory " + dir_.string());
        std::ofstream probe(dir_ / ".write-test");
        if (!probe) throw UsageError("output directory is not writable: " + dir_.string());
        probe.close();
        fs::remove(dir_ / ".write-test", ec);
    }

    fs::path path(const std::string& name) const { return dir_ / name; }

    // Rows of numbers under `columns`, as CSV or a JSON array of objects.
    void table(const std::string& stem, const std::vector<std::string>& columns,
               const std::vector<std::vector<std::string>>& rows) {
        if (cfg_.format == "json") {
            json arr = json::array();
            for (const auto& r : rows) {
                json o;
                for (std::size_t i = 0; i < columns.size(); ++i) {
                    const std::string& v = r[i];
                    if (v.empty()) {
                        o[columns[i]] = nullptr;
                        continue;
                    }
                    char* end = nullptr;
                    double d = std::strtod(v.c_str(), &end);
                    if (end && *end == '\0')
                        o[columns[i]] = d;
                    else
                        o[columns[i]] = v;
                }
                arr.push_back(o);
            }
            write_text(stem + ".json", arr.dump(2) + "\n");
        } else {
            std::string s;
            for (std::size_t i = 0; i < columns.size(); ++i) s += (i ? "," : "") + columns[i];
            s += "\n";
            for (const auto& r : rows) {
                for (std::size_t i = 0; i < r.size(); ++i) s += (i ? "," : "") + r[i];
                s += "\n";
            }
            write_text(stem + ".csv", s);
        }
    }

    // JSON report with the config echoed and hashed.
    void report(const std::string& name, json body, bool pass) {
        json cfg = cfg_.to_json();
        body["config"] = cfg;
        body["config_hash"] = "fnv1a64:" + hex64(fnv1a(cfg.dump()));
        body["pass"] = pass;
        body["files"] = files_;
        write_text(name, body.dump(2) + "\n");
        std::cout << "report: " << path(name).string() << "\n";
    }

    void note_file(const std::string& name) { files_.push_back(name); }

private:
    void write_text(const std::string& name, const std::string& s) {
        std::ofstream o(path(name));
        if (!o) throw UsageError("cannot write " + path(name).string());
        o << s;
        files_.push_back(name);
    }

    const Config& cfg_;
    fs::path dir_;
    std::vector<std::string> files_;
};

std::string num(double v) {
    char b[40];
    std::snprintf(b, sizeof b, "%.10g", v);
    return b;
}

// ---------------------------------------------------------------------------

int cmd_index(const Config& c) {
    if (c.args.size() != 2) throw UsageError("index expects two exponents, e.g. `index 1 inf`");
    double p1 = parse_exponent(c.args[0]), p2 = parse_exponent(c.args[1]);
    if (c.n < 1) throw UsageError("--n must be >= 1");
    SmoothnessIndex s = smoothness_index(p1, p2, c.n);
    std::ostringstream os;
    os << s.alpha;
    std::cout << "region " << s.label << ", alpha > " << os.str() << "\n";
    return kPass;
}

int cmd_kernel_decay(const Config& c) {
    double alpha = c.alpha.value_or(3.5);
    if (c.m < 1) throw UsageError("--m must be >= 1");
    bool flagged = !(alpha > 4 * c.m - 1);
    if (flagged)
        std::cerr << "warning: alpha = " << alpha << " does not exceed 4m-1 = " << 4 * c.m - 1
                  << "; the decay bound is not claimed, report is flagged\n";
    Reporter rep(c);
    DecayOptions d;
    d.kernel.trunc.kmax = c.kmax.value_or(64);
    DecayProfile base = kernel_decay_profile_unchecked(c.n, alpha, c.m, d);
    std::optional<DecayProfile> dbl;
    if (c.double_kmax) {
        d.kernel.trunc.kmax *= 2;
        dbl = kernel_decay_profile_unchecked(c.n, alpha, c.m, d);
    }
    std::vector<std::vector<std::string>> rows;
    json rays = json::array();
    bool ok = !flagged;
    double max_tail = 0, worst_change = 0;
    for (std::size_t i = 0; i < base.rays.size(); ++i) {
        const RayProfile& r = base.rays[i];
        int sides = r.name.size() > 2 ? 2 : 1;
        double wslope = r.slope + 2.0 * c.m * sides;
        if (wslope > 0.2) ok = false;
        if (r.name == "t1" && r.slope > -2 + 0.2) ok = false;
        for (std::size_t p = 0; p < r.rho.size(); ++p) {
            std::vector<std::string> row{r.name, num(r.rho[p]), num(r.value[p]), num(r.weighted[p]), num(r.tail[p])};
            max_tail = std::max(max_tail, r.tail[p]);
            if (dbl) {
                double v2 = dbl->rays[i].value[p];
                double ch = std::abs(v2 - r.value[p]) / (r.tail[p] + 1e-12 * std::abs(r.value[p]));
                worst_change = std::max(worst_change, ch);
                row.push_back(num(v2));
            }
            rows.push_back(row);
        }
        rays.push_back({{"ray", r.name}, {"slope", r.slope}, {"weighted_slope", wslope}});
    }
    std::vector<std::string> cols{"ray", "rho", "value", "weighted", "tail_est"};
    if (dbl) cols.push_back("value_doubled");
    rep.table("kernel-decay", cols, rows);
    if (dbl && worst_change > 1) ok = false;

    // A small bi-radial tabulation of the kernel itself.
    BilinearKernelOptions ko;
    ko.trunc.kmax = c.kmax.value_or(64);
    BilinearKernel S(c.n, alpha, 1.0, ko);
    std::vector<double> rr{0, 0.5, 1, 2}, tt{-1, 0, 1, 2};
    KernelTable table = tabulate_kernel(S, rr, tt, rr, tt);
    write_kernel_table(rep.path("kernel-table.csv").string(), table);
    rep.note_file("kernel-table.csv");
    rep.note_file("kernel-table.csv.json");

    json body = {{"max_weighted", base.max_weighted}, {"rays", rays}, {"max_tail_estimate", max_tail},
                 {"flagged_below_threshold", flagged}, {"slope_limit_t1", -1.8}, {"weighted_slope_limit", 0.2}};
    if (dbl) {
        body["max_weighted_doubled"] = dbl->max_weighted;
        body["max_change_over_tail"] = worst_change;
    }
    rep.report("kernel-decay-report.json", body, ok);
    std::printf("max weighted %.6e, t1 slope %.3f%s -> %s\n", base.max_weighted, base.rays[0].slope,
                dbl ? (", change/tail " + num(worst_change)).c_str() : "", ok ? "PASS" : "FAIL");
    return ok ? kPass : kFail;
}

int cmd_plancherel(const Config& c) {
    auto [nz, nt] = parse_grid(c.grid, 48, 96);
    int K = c.kmax.value_or(16);
    if (K < 0) throw UsageError("--kmax must be >= 0");
    Reporter rep(c);
    const double L = 9, T = 20;
    Grid g = lattice_grid(c.n, 2 * L / static_cast<double>(nz), nz, 2 * T / static_cast<double>(nt), nt);
    TestFunction tf = random_band_limited(c.n, c.seed);
    SampledField f = tf.sample(g);
    SpectralGrid sg = SpectralGrid::band(c.n, K, 0.02, 3.5, 48);
    std::string key = coefficient_key(tf.describe(), g, sg);
    fs::path cache = rep.path("cache") / ("plancherel-" + key + ".bin");
    CacheResult cr = cached_analysis(cache.string(), key, [&] { return analyze(f, sg); });
    if (!cr.warning.empty()) std::cerr << "warning: " << cr.warning << "\n";
    double l2 = f.l2_norm();
    double lhs = l2 * l2, rhs = plancherel_rhs(cr.coeffs);
    double err = lhs > 0 ? std::abs(lhs - rhs) / lhs : std::abs(lhs - rhs);
    bool ok = err <= 0.02;
    rep.report("plancherel-report.json",
               {{"lhs", lhs}, {"rhs", rhs}, {"rel_err", err}, {"tolerance", 0.02}, {"from_cache", cr.from_cache},
                {"cache_warning", cr.warning}, {"cache_key", key}, {"function", tf.describe()}},
               ok);
    std::printf("lhs %.10g rhs %.10g rel %.3e%s -> %s\n", lhs, rhs, err, cr.from_cache ? " (from cache)" : "",
                ok ? "PASS" : "FAIL");
    return ok ? kPass : kFail;
}

int cmd_restriction(const Config& c) {
    Reporter rep(c);
    const double eps = 0.35;
    auto [nz, nt] = parse_grid(c.grid, 24, 24);
    double h = 2 * 6 * eps / static_cast<double>(nz);
    std::vector<GaussAtom> atom{GaussAtom{std::vector<cplx>(c.n, cplx(0)), 1 / (eps * eps), 0, eps * eps, 0, 0, 1}};
    SampledField f = TestFunction(c.n, atom).sample(lattice_grid(c.n, h, nz, h, nt));
    RestrictionOptions ro;
    ro.kmax = c.kmax.value_or(48);
    RestrictionScaling s = restriction_scaling(f, {0.25, 0.35, 0.5, 0.7, 1.0, 1.4, 2.0}, ro);
    std::vector<std::vector<std::string>> rows;
    for (std::size_t i = 0; i < s.b.size(); ++i) rows.push_back({num(s.b[i]), num(s.ratio[i])});
    rep.table("restriction-scaling", {"b", "ratio"}, rows);
    double want = (c.n + 1) / 2.0;
    bool ok = std::abs(s.exponent - want) <= 0.15;
    rep.report("restriction-scaling-report.json", {{"exponent", s.exponent}, {"expected", want}, {"tolerance", 0.15}},
               ok);
    std::printf("exponent %.4f (expected %.2f +- 0.15) -> %s\n", s.exponent, want, ok ? "PASS" : "FAIL");
    return ok ? kPass : kFail;
}

int cmd_gamma(const Config& c) {
    double alpha = c.alpha.value_or(4.0);
    int jmax = c.jmax.value_or(6), K = c.kmax.value_or(512);
    if (jmax < 0 || K < 1) throw UsageError("--jmax must be >= 0 and --kmax >= 1");
    Reporter rep(c);
    const double delta = 0.5;
    GammaDecayFit fit = gamma_decay_fit(alpha, delta, jmax, K);
    std::vector<double> sorted = fit.C;
    std::sort(sorted.begin(), sorted.end());
    double median = sorted[sorted.size() / 2], dev = 0;
    std::vector<std::vector<std::string>> rows;
    for (std::size_t j = 0; j < fit.C.size(); ++j) {
        rows.push_back({std::to_string(j), num(fit.C[j])});
        dev = std::max(dev, std::abs(fit.C[j] / median - 1));
    }
    rep.table("gamma-decay", {"j", "C"}, rows);
    bool ok = dev <= 0.2;
    rep.report("gamma-decay-report.json",
               {{"delta", delta}, {"K", K}, {"C", fit.C}, {"median", median}, {"max_rel_dev", dev}, {"tolerance", 0.2}},
               ok);
    std::printf("C_j spread about median %.3f (tolerance 0.2) -> %s\n", dev, ok ? "PASS" : "FAIL");
    return ok ? kPass : kFail;
}

int cmd_dyadic_norms(const Config& c) {
    double alpha = c.alpha.value_or(4.0);
    int jmax = c.jmax.value_or(8);
    if (jmax < 1) throw UsageError("--jmax must be >= 1");
    std::vector<std::pair<double, double>> pairs;
    if (c.args.empty()) {
        pairs = {{2, 2}, {kInf, kInf}};
    } else if (c.args.size() == 2) {
        pairs = {{parse_exponent(c.args[0]), parse_exponent(c.args[1])}};
    } else {
        throw UsageError("dyadic-norms takes either no exponents or two (p1 p2)");
    }
    Reporter rep(c);
    OpNormOptions o;
    o.functions.nu_lo = 0.3;
    o.functions.nu_hi = 0.6;
    if (!c.grid.empty()) {
        auto [nz, nt] = parse_grid(c.grid, 24, 48);
        o.grid = lattice_grid(c.n, 0.5, nz, 0.5, nt);
    }
    bool ok = true;
    json series = json::array();
    for (auto [p1, p2] : pairs) {
        OpNormEstimate e = dyadic_norm_series(alpha, jmax, p1, p2, c.trials, c.seed, o);
        double limit = smoothness_index(p1, p2, c.n).alpha + 0.5;
        std::vector<std::vector<std::string>> rows;
        for (std::size_t j = 0; j < e.series.size(); ++j) {
            std::string local = j == 0 ? "" : num(std::log2(e.series[j] / e.series[j - 1]));
            rows.push_back({std::to_string(e.j[j]), num(e.series[j]), local});
        }
        std::string stem = "dyadic-norms-" + exponent_str(p1) + "-" + exponent_str(p2);
        rep.table(stem, {"j", "norm", "log2_slope"}, rows);
        bool pass = e.log2_slope < limit;
        ok = ok && pass;
        series.push_back({{"p1", exponent_str(p1)}, {"p2", exponent_str(p2)}, {"p", exponent_str(e.p)},
                          {"log2_slope", e.log2_slope}, {"limit", limit}, {"pass", pass}, {"norms", e.series}});
        std::printf("(%s,%s): log2 slope %.3f, limit %.2f -> %s\n", exponent_str(p1).c_str(), exponent_str(p2).c_str(),
                    e.log2_slope, limit, pass ? "PASS" : "FAIL");
    }
    rep.report("dyadic-norms-report.json", {{"alpha", alpha}, {"series", series}}, ok);
    return ok ? kPass : kFail;
}

int cmd_apply(const Config& c) {
    double alpha = c.alpha.value_or(4.0);
    if (!(c.R > 0) || alpha < 0) throw UsageError("apply needs --R > 0 and --alpha >= 0");
    Reporter rep(c);
    auto [nz, nt] = parse_grid(c.grid, 24, 48);
    Grid g = lattice_grid(c.n, 0.5, nz, 0.5, nt);
    BandLimitedSpec sp;
    sp.nu_lo = 0.3;
    sp.nu_hi = 0.6;
    auto rng = seeded_stream(c.seed, 0);
    TestFunction tf = random_band_limited(c.n, rng(), sp), tg = random_band_limited(c.n, rng(), sp);
    SampledField f = tf.sample(g), h = tg.sample(g);
    BilinearOptions bo;
    if (c.kmax) bo.kmax = *c.kmax;
    SampledField S = apply_bilinear(f, h, alpha, c.R, bo);
    write_field(rep.path("f.field").string(), f);
    write_field(rep.path("g.field").string(), h);
    write_field(rep.path("apply.field").string(), S);
    for (const char* n : {"f.field", "g.field", "apply.field"}) rep.note_file(n);
    json body = {{"alpha", alpha},
                 {"R", c.R},
                 {"f", tf.describe()},
                 {"g", tg.describe()},
                 {"input_hash", "fnv1a64:" + hex64(fnv1a(tf.describe() + "|" + tg.describe()))},
                 {"norm_l2_f", f.l2_norm()},
                 {"norm_l2_g", h.l2_norm()},
                 {"norm_l2_out", S.l2_norm()},
                 {"norm_l1_out", S.lp_norm(1)},
                 {"max_abs_out", S.max_abs()}};
    rep.report("apply-report.json", body, true);
    std::printf("||S(f,g)||_2 = %.6e\n", S.l2_norm());
    return kPass;
}

int cmd_verify(const Config& c) {
    if (c.n != 1) throw UsageError("the acceptance suite is defined at n = 1");
    std::vector<std::string> names;
    for (const auto& o : c.only) {
        std::stringstream ss(o);
        std::string part;
        while (std::getline(ss, part, ','))
            if (!part.empty()) {
                if (!is_check_name(part)) throw UsageError("unknown check: " + part);
                names.push_back(part);
            }
    }
    if (names.empty()) names = check_names();
    Reporter rep(c);
    VerifyOptions vo;
    vo.seed = c.seed;
    vo.cache_dir = rep.path("cache").string();
    vo.log = [](const std::string& s) { std::cerr << "  " << s << "\n"; };
    json checks = json::array();
    bool ok = true;
    for (const auto& name : names) {
        CheckResult r = run_check(name, vo);
        ok = ok && r.pass;
        json values = json::object();
        for (const auto& [k, v] : r.values) values[k] = v;
        checks.push_back({{"name", r.name},
                          {"pass", r.pass},
                          {"criterion", r.criterion},
                          {"measured", r.measured},
                          {"tolerance", r.tolerance},
                          {"seconds", r.seconds},
                          {"budget_seconds", r.budget},
                          {"values", values},
                          {"notes", r.notes}});
        std::printf("%s %-17s measured %-11.4g tolerance %-9.4g %7.1f s\n", r.pass ? "PASS" : "FAIL", r.name.c_str(),
                    r.measured, r.tolerance, r.seconds);
        std::fflush(stdout);
    }
    rep.report("verify.json", {{"checks", checks}}, ok);
    return ok ? kPass : kFail;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Bilinear Riesz means on the Heisenberg group: experiments and acceptance checks"};
    app.require_subcommand(1);
    app.fallthrough();

    Config c;
    const char* env_out = std::getenv("HRIESZ_OUT");
    c.out = env_out && *env_out ? env_out : "hriesz-out";

    app.add_option("--n", c.n, "complex dimension")->check(CLI::PositiveNumber);
    app.add_option("--alpha", c.alpha, "Riesz order alpha");
    app.add_option("--m", c.m, "decay order m (kernel-decay)");
    app.add_option("--kmax", c.kmax, "Laguerre truncation (or Fourier K for gamma-decay)");
    app.add_option("--grid", c.grid, "grid counts NZxNT");
    app.add_option("--jmax", c.jmax, "largest dyadic index");
    app.add_option("--seed", c.seed, "random seed");
    app.add_option("--out", c.out, "output directory (default $HRIESZ_OUT or ./hriesz-out)");
    app.add_option("--format", c.format, "table format")->check(CLI::IsMember({"csv", "json"}));

    auto* index = app.add_subcommand("index", "print the threshold alpha(p1, p2) and its region");
    index->add_option("exponents", c.args, "exponents in [1, inf]")->expected(2);
    auto* decay = app.add_subcommand("kernel-decay", "weighted decay of the bilinear kernel along rays");
    decay->add_flag("--double-kmax", c.double_kmax, "rerun at 2*kmax and compare with the tail estimates");
    app.add_subcommand("plancherel", "Plancherel identity for one random band-limited function");
    app.add_subcommand("restriction-scaling", "b-exponent of the restriction operator on a near-delta");
    app.add_subcommand("gamma-decay", "decay constants of the Fourier coefficients gamma_{j,k}");
    auto* norms = app.add_subcommand("dyadic-norms", "per-j empirical norms of 2^{j alpha} T_j");
    norms->add_option("exponents", c.args, "exponent pair (default: 2 2 and inf inf)")->expected(0, 2);
    norms->add_option("--trials", c.trials, "random pairs per estimate")->check(CLI::PositiveNumber);
    auto* apply = app.add_subcommand("apply", "apply S_R^alpha to two random functions and store the fields");
    apply->add_option("--R", c.R, "spectral radius R");
    auto* verify = app.add_subcommand("verify", "run the acceptance checks and emit a JSON verdict");
    verify->add_option("--only", c.only, "comma-separated check names")->delimiter(',')->take_all();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    CLI::App* sub = app.get_subcommands().front();
    c.command = sub->get_name();
    try {
        if (c.command == "index") return cmd_index(c);
        if (c.command == "kernel-decay") return cmd_kernel_decay(c);
        if (c.command == "plancherel") return cmd_plancherel(c);
        if (c.command == "restriction-scaling") return cmd_restriction(c);
        if (c.command == "gamma-decay") return cmd_gamma(c);
        if (c.command == "dyadic-norms") return cmd_dyadic_norms(c);
        if (c.command == "apply") return cmd_apply(c);
        if (c.command == "verify") return cmd_verify(c);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kFail;
    }
    return kUsage;
}
