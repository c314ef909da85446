#include "randstruct/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <exception>
#include <mutex>
#include <numeric>
#include <ostream>
#include <sstream>
#include <thread>

#include "json.hpp"

#include "randstruct/errors.hpp"
#include "randstruct/exact.hpp"
#include "randstruct/graphs.hpp"
#include "randstruct/growth.hpp"
#include "randstruct/perms.hpp"
#include "randstruct/stats.hpp"
#include "randstruct/trees.hpp"
#include "randstruct/walks.hpp"

namespace rs {

// ---- formatting and plumbing ---------------------------------------------------

std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    if (v == std::floor(v) && std::fabs(v) < 1e15) {
        char buf[32];
        auto r = std::to_chars(buf, buf + sizeof buf, static_cast<long long>(v));
        return std::string(buf, r.ptr);
    }
    char buf[64];
    auto r = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, r.ptr);
}

void parallel_for(std::int64_t count, int workers, const std::function<void(std::int64_t)>& f) {
    if (count <= 0) return;
    const int w = static_cast<int>(std::max<std::int64_t>(1, std::min<std::int64_t>(workers, count)));
    if (w == 1) {
        for (std::int64_t i = 0; i < count; ++i) f(i);
        return;
    }
    std::atomic<std::int64_t> next{0};
    std::exception_ptr err;
    std::mutex err_mu;
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(w));
    for (int t = 0; t < w; ++t)
        pool.emplace_back([&] {
            for (;;) {
                const auto i = next.fetch_add(1);
                if (i >= count) return;
                try {
                    f(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lk(err_mu);
                    if (!err) err = std::current_exception();
                    next = count;  // stop handing out work
                    return;
                }
            }
        });
    for (auto& th : pool) th.join();
    if (err) std::rethrow_exception(err);
}

ParamMap resolve_params(const ExperimentInfo& info, const ParamMap& overrides) {
    ParamMap out;
    for (const auto& p : info.params) out[p.name] = p.default_value;
    for (const auto& [k, v] : overrides) {
        auto it = std::find_if(info.params.begin(), info.params.end(), [&](const ParamSpec& s) { return s.name == k; });
        if (it == info.params.end())
            throw InvalidParameter("experiment '" + info.name + "' has no parameter '" + k + "'");
        if (!std::isfinite(v)) throw InvalidParameter("parameter '" + k + "' must be finite");
        if (it->integer && v != std::floor(v))
            throw InvalidParameter("parameter '" + k + "' must be an integer");
        out[k] = v;
    }
    return out;
}

bool Report::all_pass() const {
    return std::all_of(summary.verdicts.begin(), summary.verdicts.end(), [](const Verdict& v) { return v.pass; });
}

Report run_experiment(const ExperimentConfig& cfg) {
    const auto& info = find_experiment(cfg.experiment);
    Report rep;
    rep.config = cfg;
    if (rep.config.reps == 0) rep.config.reps = info.default_reps;
    if (rep.config.reps < 1) throw InvalidParameter("reps must be >= 1");
    if (rep.config.workers < 1) throw InvalidParameter("workers must be >= 1");
    rep.params = resolve_params(info, cfg.params);
    rep.columns = info.columns;
    rep.reps.resize(static_cast<std::size_t>(rep.config.reps));
    const auto t0 = std::chrono::steady_clock::now();
    parallel_for(rep.config.reps, rep.config.workers, [&](std::int64_t r) {
        auto rng = make_stream(cfg.seed, static_cast<std::uint64_t>(r));
        rep.reps[static_cast<std::size_t>(r)] = info.run_rep(rep.params, rng);
    });
    rep.summary = info.summarize(rep.params, rep.reps);
    rep.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

void write_config_comment(std::ostream& os, const Report& r) {
    os << "# experiment=" << r.config.experiment << '\n';
    os << "# seed=" << r.config.seed << '\n';
    os << "# reps=" << r.config.reps << '\n';
    for (const auto& [k, v] : r.params) os << "# param." << k << '=' << format_number(v) << '\n';
    os << "# library_version=" << kLibraryVersion << '\n';
}

namespace {

std::string opt(const std::optional<double>& v) { return v ? format_number(*v) : std::string(); }

}  // namespace

void write_summary_csv(std::ostream& os, const Report& r) {
    write_config_comment(os, r);
    os << "experiment,seed,rep,quantity,x,value,lo,hi,reference\n";
    for (const auto& row : r.summary.rows)
        os << r.config.experiment << ',' << r.config.seed << ",all," << row.quantity << ',' << opt(row.x) << ','
           << format_number(row.value) << ',' << opt(row.lo) << ',' << opt(row.hi) << ',' << opt(row.reference) << '\n';
    for (const auto& v : r.summary.verdicts)
        os << r.config.experiment << ',' << r.config.seed << ",all,verdict:" << v.name << ",," << (v.pass ? 1 : 0)
           << ",,,\n";
}

void write_reps_csv(std::ostream& os, const Report& r) {
    write_config_comment(os, r);
    os << "experiment,seed,rep";
    for (const auto& c : r.columns) os << ',' << c;
    os << '\n';
    for (std::size_t i = 0; i < r.reps.size(); ++i) {
        os << r.config.experiment << ',' << r.config.seed << ',' << i;
        for (double v : r.reps[i].values) os << ',' << format_number(v);
        os << '\n';
    }
}

void write_json(std::ostream& os, const Report& r, bool include_reps) {
    using nlohmann::ordered_json;
    ordered_json j;
    ordered_json cfg;
    cfg["experiment"] = r.config.experiment;
    cfg["seed"] = r.config.seed;
    cfg["reps"] = r.config.reps;
    ordered_json params = ordered_json::object();
    for (const auto& [k, v] : r.params) params[k] = v;
    cfg["params"] = params;
    cfg["library_version"] = kLibraryVersion;
    j["config"] = cfg;
    ordered_json rows = ordered_json::array();
    if (include_reps)
        for (std::size_t i = 0; i < r.reps.size(); ++i) {
            ordered_json row;
            row["rep"] = i;
            for (std::size_t c = 0; c < r.columns.size() && c < r.reps[i].values.size(); ++c)
                row[r.columns[c]] = r.reps[i].values[c];
            rows.push_back(row);
        }
    j["rows"] = rows;
    ordered_json summary = ordered_json::array();
    for (const auto& s : r.summary.rows) {
        ordered_json row;
        row["quantity"] = s.quantity;
        if (s.x) row["x"] = *s.x;
        row["value"] = s.value;
        if (s.lo) row["lo"] = *s.lo;
        if (s.hi) row["hi"] = *s.hi;
        if (s.reference) row["reference"] = *s.reference;
        summary.push_back(row);
    }
    j["summary"] = summary;
    ordered_json verdicts = ordered_json::array();
    for (const auto& v : r.summary.verdicts) verdicts.push_back({{"name", v.name}, {"pass", v.pass}, {"detail", v.detail}});
    j["verdicts"] = verdicts;
    j["wall_clock_seconds"] = r.wall_seconds;
    os << j.dump(2) << '\n';
}

// ---- summary helpers -------------------------------------------------------------

namespace {

constexpr double kLevel = 0.01;  // test level for chi-square and KS verdicts

std::int64_t I(const ParamMap& p, const char* k) { return static_cast<std::int64_t>(p.at(k)); }
double D(const ParamMap& p, const char* k) { return p.at(k); }

std::vector<double> column(const std::vector<RepResult>& reps, std::size_t i) {
    std::vector<double> out;
    out.reserve(reps.size());
    for (const auto& r : reps) out.push_back(r.values.at(i));
    return out;
}

std::vector<std::int64_t> int_column(const std::vector<RepResult>& reps, std::size_t i) {
    std::vector<std::int64_t> out;
    out.reserve(reps.size());
    for (const auto& r : reps) out.push_back(static_cast<std::int64_t>(std::llround(r.values.at(i))));
    return out;
}

struct Moments {
    double mean = 0.0, se = 0.0;
    std::size_t n = 0;
};

Moments moments(const std::vector<double>& xs) {
    Moments m;
    m.n = xs.size();
    if (xs.empty()) return m;
    m.mean = std::accumulate(xs.begin(), xs.end(), 0.0) / double(xs.size());
    if (xs.size() > 1) {
        double ss = 0.0;
        for (double x : xs) ss += (x - m.mean) * (x - m.mean);
        m.se = std::sqrt(ss / double(xs.size() - 1) / double(xs.size()));
    }
    return m;
}

// Mean with a normal-approximation interval at `level`.
SummaryRow mean_row(const std::string& q, const std::vector<double>& xs, double level,
                    std::optional<double> ref = std::nullopt) {
    auto m = moments(xs);
    const double z = normal_quantile(0.5 + level / 2.0);
    return {q, std::nullopt, m.mean, m.mean - z * m.se, m.mean + z * m.se, ref};
}

Verdict sigma_verdict(const std::string& name, const std::vector<double>& xs, double ref, double k = 3.0) {
    auto m = moments(xs);
    const bool pass = m.n >= 2 && std::fabs(m.mean - ref) <= k * m.se + 1e-15;
    return {name, pass, "mean " + format_number(m.mean) + " vs " + format_number(ref) + " (" + format_number(k) +
                            " se = " + format_number(k * m.se) + ")"};
}

std::int64_t count_true(const std::vector<double>& xs) {
    return std::count_if(xs.begin(), xs.end(), [](double v) { return v != 0.0; });
}

SummaryRow proportion_row(const std::string& q, std::int64_t hits, std::int64_t n, double level,
                          std::optional<double> ref = std::nullopt) {
    auto p = proportion(hits, n);
    const double z = normal_quantile(0.5 + level / 2.0);
    return {q, std::nullopt, p.p, p.p - z * p.se, p.p + z * p.se, ref};
}

// |p_hat - ref| within k binomial standard errors at the reference value.
Verdict proportion_verdict(const std::string& name, std::int64_t hits, std::int64_t n, double ref, double k = 3.0) {
    const bool pass = within_sigmas(hits, n, ref, k);
    return {name, pass, "frequency " + format_number(double(hits) / double(n)) + " vs " + format_number(ref)};
}

template <class F>
Verdict guarded(const std::string& name, F&& f) {
    try {
        return f();
    } catch (const InvalidTest& e) {
        return {name, false, std::string("not evaluable: ") + e.what()};
    }
}

Verdict chi_square_verdict(const std::string& name, const EmpiricalDist& emp, const Pmf& pmf) {
    return guarded(name, [&]() -> Verdict {
        auto t = chi_square_gof(emp, pmf, kLevel);
        return {name, t.pass, "chi2 " + format_number(t.statistic) + " < " + format_number(t.threshold) + " (dof " +
                                  std::to_string(t.dof) + ", p " + format_number(t.p_value) + ")"};
    });
}

Verdict ks_verdict(const std::string& name, std::vector<double> xs, const std::function<double(double)>& cdf) {
    std::sort(xs.begin(), xs.end());
    return guarded(name, [&]() -> Verdict {
        auto t = ks_test(xs, cdf, kLevel);
        return {name, t.pass, "D " + format_number(t.statistic) + " < " + format_number(t.threshold)};
    });
}

void histogram_rows(Summary& s, const std::string& q, const EmpiricalDist& emp, const Pmf& pmf) {
    for (std::size_t i = 0; i < emp.values.size(); ++i)
        s.rows.push_back({q, double(emp.values[i]), double(emp.counts[i]) / double(emp.total), std::nullopt,
                          std::nullopt, pmf(emp.values[i])});
}

Verdict band_verdict(const std::string& name, const std::vector<double>& xs, double lo, double hi, double min_frac) {
    const auto in = std::count_if(xs.begin(), xs.end(), [&](double v) { return v >= lo && v <= hi; });
    const double frac = xs.empty() ? 0.0 : double(in) / double(xs.size());
    return {name, frac >= min_frac,
            format_number(frac) + " of reps in [" + format_number(lo) + ", " + format_number(hi) + "], need " +
                format_number(min_frac)};
}

std::vector<double> curve_grid() {
    std::vector<double> g;
    for (int i = 0; i <= 20; ++i) g.push_back(i / 20.0);
    return g;
}

void curve_rows(Summary& s, const std::string& q, const std::vector<RepResult>& reps,
                const std::function<double(double)>& ref) {
    const auto grid = curve_grid();
    for (std::size_t i = 0; i < grid.size(); ++i) {
        std::vector<double> ys;
        for (const auto& r : reps)
            if (i < r.curve.size()) ys.push_back(r.curve[i]);
        auto row = mean_row(q, ys, 0.95, ref(grid[i]));
        row.x = grid[i];
        s.rows.push_back(row);
    }
}

constexpr double kGolombDickman = 0.62432998854355087;

double corral_limit_mean() {
    // (8/3)^{1/4} E sqrt|N| with E sqrt|N| = 2^{1/4} Gamma(3/4) / sqrt(pi).
    return std::pow(8.0 / 3.0, 0.25) * std::pow(2.0, 0.25) * std::tgamma(0.75) / std::sqrt(M_PI);
}

// ---- experiment definitions ------------------------------------------------------

ExperimentInfo giant_exp() {
    ExperimentInfo e;
    e.name = "giant";
    e.description = "Largest and second component fractions of G(n, c/n)";
    e.params = {{"n", true, 100000, "vertices"}, {"c", false, 2.0, "mean degree"}};
    e.columns = {"largest_fraction", "second_fraction"};
    e.default_reps = 50;
    e.run_rep = [](const ParamMap& p, RngStream& rng) {
        const auto n = I(p, "n");
        auto s = giant_sample(n, D(p, "c"), rng);
        return RepResult{{double(s.largest) / double(n), double(s.second) / double(n)}, {}};
    };
    e.summarize = [](const ParamMap& p, const std::vector<RepResult>& reps) {
        Summary s;
        const double ref = giant_fraction(D(p, "c"));
        auto a = column(reps, 0), b = column(reps, 1);
        s.rows.push_back(mean_row("largest_fraction", a, 0.95, ref));
        s.rows.push_back(mean_row("second_fraction", b, 0.95));
        const double ma = moments(a).mean, mb = moments(b).mean;
        s.verdicts.push_back({"largest_within_0.01", std::fabs(ma - ref) < 0.01,
                              format_number(ma) + " vs " + format_number(ref)});
        if (D(p, "c") > 1.0) s.verdicts.push_back({"second_below_0.01", mb < 0.01, format_number(mb)});
        return s;
    };
    return e;
}

ExperimentInfo connectivity_exp() {
    ExperimentInfo e;
    e.name = "connectivity";
    e.description = "Connectivity and isolated vertices of G(n, (log n + c)/n)";
    e.params = {{"n", true, 10000, "vertices"}, {"c", false, 0.0, "window offset"}};
    e.columns = {"connected", "no_isolated"};
    e.default_reps = 1000;
    e.run_rep = [](const ParamMap& p, RngStream& rng) {
        auto s = connectivity_sample(I(p, "n"), D(p, "c"), rng);
        return RepResult{{s.connected ? 1.0 : 0.0, s.no_isolated ? 1.0 : 0.0}, {}};
    };
    e.summarize = [](const ParamMap& p, const std::vector<RepResult>& reps) {
        Summary s;
        const double ref = std::exp(-std::exp(-D(p, "c")));
        const auto n = static_cast<std::int64_t>(reps.size());
        const auto hc = count_true(column(reps, 0)), hi = count_true(column(reps, 1));
        auto rc = proportion_row("connected", hc, n, 0.99, ref);
        s.rows.push_back(rc);
        s.rows.push_back(proportion_row("no_isolated", hi, n, 0.99, ref));
        s.verdicts.push_back({"connected_ci99_contains_limit", ref >= *rc.lo && ref <= *rc.hi,
                              "[" + format_number(*rc.lo) + ", " + format_number(*rc.hi) + "] vs " + format_number(ref)});
        s.verdicts.push_back({"connected_implies_no_isolated", hc <= hi, ""});
        return s;
    };
    return e;
}

ExperimentInfo fluid_exp() {
    ExperimentInfo e;
    e.name = "fluid-curve";
    e.description = "Exploration walk of G(n, c/n) (or the stacked walk) against its fluid limit";
    e.params = {{"n", true, 100000, "vertices"}, {"c", false, 2.0, "mean degree"},
                {"stacked", true, 0, "1 for the stacked walk, 0 for the exploration walk"}};
    e.columns = {"sup_distance"};
    e.default_reps = 20;
    e.run_rep = [](const ParamMap& p, RngStream& rng) {
        const auto n = I(p, "n");
        const double c = D(p, "c");
        const bool stacked = I(p, "stacked") != 0;
        LatticePath walk = stacked ? stacked_walk(n, c / double(n), rng)
                                   : explore_luka(sample_gnp(n, c / double(n), rng)).walk;
        std::function<double(double)> curve = stacked ? std::function<double(double)>([c](double t) { return stacked_fluid(c, t); })
                                                      : std::function<double(double)>([c](double t) { return fluid_curve(c, t); });
        RepResult r;
        r.values.push_back(fluid_sup_distance(walk, n, curve));
        for (double t : curve_grid())
            r.curve.push_back(double(walk.value(static_cast<std::size_t>(std::floor(t * double(n))))) / double(n));
        return r;
    };
    e.summarize = [](const ParamMap& p, const std::vector<RepResult>& reps) {
        Summary s;
        const double c = D(p, "c");
        const bool stacked = I(p, "stacked") != 0;
        curve_rows(s, "walk_over_n", reps, [&](double t) { return stacked ? stacked_fluid(c, t) : fluid_curve(c, t); });
        auto d = column(reps, 0);
        const double worst = *std::max_element(d.begin(), d.end());
        s.rows.push_back({"max_sup_distance", std::nullopt, worst, std::nullopt, std::nullopt, std::nullopt});
        s.verdicts.push_back({"sup_distance_below_0.02_every_rep", worst < 0.02, format_number(worst)});
        return s;
    };
    return e;
}

ExperimentInfo triangles_exp() {
    ExperimentInfo e;
    e.name = "triangles";
    e.description = "Triangle count of G(n, c/n) against Poisson(c^3/6)";
    e.params = {{"n", true, 3000, "vertices"}, {"c", false, 1.5, "mean degree"}};
    e.columns = {"triangles"};
    e.default_reps = 10000;
    e.run_rep = [](const ParamMap& p, RngStream& rng) {
        const auto n = I(p, "n");
        return RepResult{{double(triangle_count(sample_gnp(n, D(p, "c") / double(n), rng)))}, {}};
    };
    e.summarize = [](const ParamMap& p, const std::vector<RepResult>& reps) {
        Summary s;
        const double lam = std::pow(D(p, "c"), 3) / 6.0;
        auto xs = column(reps, 0);
        s.rows.push_back(mean_row("mean_triangles", xs, 0.95, lam));
        auto emp = EmpiricalDist::tabulate(int_column(reps, 0), 0, 8);
        Pmf pmf = [lam](std::int64_t k) { return poisson_pmf(lam, k); };
        histogram_rows(s, "P(T=k)", emp, pmf);
        s.verdicts.push_back(chi_square_verdict("poisson_limit_chi2", emp, pmf));
        return s;
    };
    return e;
}

ExperimentInfo spectral_exp() {
    ExperimentInfo e;
    e.name = "spectral-moments";
    e.description = "Normalised adjacency traces (1/n) Tr A^k of G(n, c/n)";
    e.params = {{"n", true, 2000, "vertices"}, {"c", false, 2.0, "mean degree"}, {"k_max", true, 3, "highest power"}};
    e.default_reps = 20;
    e.columns = {"m1", "m2", "m3"};
    e.run_rep = [](const ParamMap& p, RngStream& rng) {
        const auto n = I(p, "n");
        auto sm = spectral_moments(sample_gnp(n, D(p, "c") / double(n), rng), static_cast<int>(I(p, "k_max")));
        RepResult r;
        for (int k = 0; k < 3; ++k) r.values.push_back(k < sm.k_max ? sm.moments[static_cast<std::size_t>(k)] : std::nan(""));
        return r;
    };
    e.summarize = [](const ParamMap& p, const std::vector<RepResult>& reps) {
        Summary s;
        const auto n = double(I(p, "n"));
        const double pr = D(p, "c") / n;
        const double r2 = (n - 1.0) * pr, r3 = (n - 1.0) * (n - 2.0) * pr * pr * pr;
        auto m1 = column(reps, 0), m2 = column(reps, 1), m3 = column(reps, 2);
        s.rows.push_back(mean_row("m1", m1, 0.95, 0.0));
        s.rows.push_back(mean_row("m2", m2, 0.95, r2));
        s.verdicts.push_back({"m1_zero", std::all_of(m1.begin(), m1.end(), [](double v) { return v == 0.0; }), ""});
        s.verdicts.push_back(sigma_verdict("m2_within_3se", m2, r2));
        if (I(p, "k_max") >= 3) {
            s.rows.push_back(mean_row("m3", m3, 0.95, r3));
            s.verdicts.push_back(sigma_verdict("m3_within_3se", m3, r3));
        }
        return s;
    };
    return e;
}

ExperimentInfo bgw_size_exp() {
    ExperimentInfo e;
    e.name = "bgw-size";
    e.description = "Total progeny of a geometric BGW tree against the exact size law";
    e.params = {{"p", false, 0.5, "offspring law P(k) = p (1-p)^k"},
                {"cap", true, 1000000, "vertex cap"},
                {"k_max", true, 12, "largest size tabulated"}};
    e.columns = {"size"};
    e.default_reps = 10000;
    e.run_rep = [](const ParamMap& p, RngStream& rng) {
        auto t = sample_bgw(OffspringLaw::geometric(D(p, "p")), rng, I(p, "cap"));
        return RepResult{{t ? double(t->vertex_count()) : -1.0}, {}};
    };
    e.summarize = [](const ParamMap& p, const std::vector<RepResult>& reps) {
        Summary s;
        const double pr = D(p, "p");
        const auto kmax = I(p, "k_max");
        auto sizes = int_column(reps, 0);
        // A capped tree is larger than any tabulated size.
        for (auto& v : sizes)
            if (v < 0) v = kmax + 1;
        auto emp = EmpiricalDist::tabulate(sizes, 1, kmax + 1);
        Pmf pmf = [pr, kmax](std::int64_t k) {
            if (k < 1 || k > kmax) return 0.0;
            return to_double(catalan(k - 1)) * std::pow(pr, double(k)) * std::pow(1.0 - pr, double(k - 1));
        };
        histogram_rows(s, "P(size=k)", emp, pmf);
        s.verdicts.push_back(chi_square_verdict("size_law_chi2", emp, pmf));
        return s;
    };
    return e;
}

ExperimentInfo parking_exp() {
    ExperimentInfo e;
    e.name = "parking";
    e.description = "Probability that m uniform cars all park on n spots";
    e.params = {{"n", true, 10, "spots"}, {"m", true, 5, "cars"}};
    e.columns = {"success", "exited"};
    e.default_reps = 100000;
    e.run_rep = [](const ParamMap& p, RngStream& rng) {
        auto o = parking_simulate(I(p, "n"), I(p, "m"), rng);
        return RepResult{{o.success ? 1.0 : 0.0, double(o.exited)}, {}};
    };
    e.summarize = [](const ParamMap& p, const std::vector<RepResult>& reps) {
        Summary s;
        const double ref = to_double(parking_full_prob(I(p, "n"), I(p, "m")));
        const auto h = count_true(column(reps, 0));
        const auto n = static_cast<std::int64_t>(reps.size());
        s.rows.push_back(proportion_row("success", h, n, 0.95, ref));
        s.verdicts.push_back(proportion_verdict("success_within_3se", h, n, ref));
        return s;
    };
    return e;
}

ExperimentInfo ballot_exp() {
    ExperimentInfo e;
    e.name = "ballot";
    e.description = "Probability that A stays strictly ahead during a uniform count of a vs b votes";
    e.params = {{"a", true, 5, "votes for A"}, {"b", true, 3, "votes for B"}};
    e.columns = {"ahead"};
    e.default_reps = 100000;
    e.run_rep = [](const ParamMap& p, RngStream& rng) {
        return RepResult{{ballot_trial(I(p, "a"), I(p, "b"), rng) ? 1.0 : 0.0}, {}};
    };
    e.summarize = [](const ParamMap& p, const std::vector<RepResult>& reps) {
        Summary s;
        const double ref = to_double(ballot_prob(I(p, "a"), I(p, "b")));
        const auto h = count_true(column(reps, 0));
        const auto n = static_cast<std::int64_t>(reps.size());
        s.rows.push_back(proportion_row("ahead", h, n, 0.95, ref));
        s.verdicts.push_back(proportion_verdict("ahead_within_3se", h, n, ref));
        return s;
    };
    return e;
}

ExperimentInfo cycles_exp() {
    ExperimentInfo e;
    e.name = "cycles";
    e.description = "Number of cycles of a uniform permutation (direct shuffle or Feller coupling)";
    e.params = {{"n", true, 8, "permutation size"}, {"feller", true, 0, "1 to use the Feller coupling"}};
    e.columns = {"cycles", "two_pow_cycles"};
    e.default_reps = 100000;
    e.run_rep = [](const ParamMap& p, RngStream& rng) {
        const auto n = I(p, "n");
        auto cs = I(p, "feller") ? feller_cycles(n, rng) : cycles_of(sample_perm(n, rng));
        return RepResult{{double(cs.cycle_count()), std::ldexp(1.0, static_cast<int>(cs.cycle_count()))}, {}};
    };
    e.summarize = [](const ParamMap& p, const std::vector<RepResult>& reps) {
        Summary s;
        const auto n = I(p, "n");
        auto pmf_exact = cycles_count_pmf(n);
        Pmf pmf = [pmf_exact](std::int64_t k) {
            return k >= 1 && k <= static_cast<std::int64_t>(pmf_exact.size()) ? to_double(pmf_exact[static_cast<std::size_t>(k - 1)]) : 0.0;
        };
        auto emp = EmpiricalDist::tabulate(int_column(reps, 0), 1, n);
        histogram_rows(s, "P(C=k)", emp, pmf);
        s.verdicts.push_back(chi_square_verdict("cycle_count_chi2", emp, pmf));
        auto pw = column(reps, 1);
        s.rows.push_back(mean_row("E[2^C]", pw, 0.95, double(n + 1)));
        s.verdicts.push_back(sigma_verdict("two_pow_cycles_within_3se", pw, double(n + 1)));
        return s;
    };
    return e;
}

ExperimentInfo pd_exp() {
    ExperimentInfo e;
    e.name = "poisson-dirichlet";
    e.description = "Longest cycle of a uniform permutation divided by n";
    e.params = {{"n", true, 10000, "permutation size"}};
    e.columns = {"longest_fraction"};
    e.default_reps = 100000;
    e.run_rep = [](const ParamMap& p, RngStream& rng) {
        const auto n = I(p, "n");
        auto cs = fast_cycles(n, rng);
        return RepResult{{double(*std::max_element(cs.lengths.begin(), cs.lengths.end())) / double(n)}, {}};
    };
    e.summarize = [](const ParamMap&, const std::vector<RepResult>& reps) {
        Summary s;
        auto xs = column(reps, 0);
        const auto n = static_cast<std::int64_t>(xs.size());
        const auto half = std::count_if(xs.begin(), xs.end(), [](double v) { return v <= 0.5; });
        const auto third = std::count_if(xs.begin(), xs.end(), [](double v) { return v <= 1.0 / 3.0; });
        const double r2 = 1.0 - std::log(2.0), r3 = dickman_rho(3.0);
        s.rows.push_back(proportion_row("P(longest<=1/2)", half, n, 0.95, r2));
        s.rows.push_back(proportion_row("P(longest<=1/3)", third, n, 0.95, r3));
        s.rows.push_back(mean_row("mean_longest", xs, 0.95, kGolombDickman));
        s.verdicts.push_back(proportion_verdict("half_within_3se", half, n, r2));
        s.verdicts.push_back(proportion_verdict("third_within_3se", third, n, r3));
        s.verdicts.push_back(sigma_verdict("mean_within_3se", xs, kGolombDickman));
        return s;
    };
    return e;
}

ExperimentInfo dickman_exp() {
    ExperimentInfo e;
    e.name = "dickman";
    e.description = "Largest stick-breaking piece against the Dickman function";
    e.params = {{"x", false, 2.0, "threshold 1/x"}, {"epsilon", false, 1e-12, "truncation of the residual mass"}};
    e.columns = {"largest"};
    e.default_reps = 100000;
    e.run_rep = [](const ParamMap& p, RngStream& rng) {
        auto sb = stick_breaking(rng, D(p, "epsilon"));
        return RepResult{{*std::max_element(sb.lengths.begin(), sb.lengths.end())}, {}};
    };
    e.summarize = [](const ParamMap& p, const std::vector<RepResult>& reps) {
        Summary s;
        const double x = D(p, "x");
        auto xs = column(reps, 0);
        const auto n = static_cast<std::int64_t>(xs.size());
        const auto h = std::count_if(xs.begin(), xs.end(), [&](double v) { return v <= 1.0 / x; });
        const double ref = dickman_rho(x);
        s.rows.push_back(proportion_row("P(largest<=1/x)", h, n, 0.95, ref));
        s.verdicts.push_back(proportion_verdict("rho_within_3se", h, n, ref));
        return s;
    };
    return e;
}

// Shared by the rrt and ba experiments.
RepResult growth_rep(const GrowingTree& t) {
    auto st = growth_stats(t);
    const double n = double(t.size()) + 1.0;  // vertex count
    RepResult r;
    for (std::size_t k = 0; k <= 5; ++k)
        r.values.push_back(k < st.out_degree_hist.size() ? double(st.out_degree_hist[k]) / n : 0.0);
    std::int64_t dsum = std::accumulate(t.degree.begin(), t.degree.end(), std::int64_t{0});
    r.values.insert(r.values.end(), {double(st.max_out_degree), double(st.height), double(st.root_degree),
                                     double(st.argmax_label), double(dsum)});
    return r;
}

const std::vector<std::string> kGrowthColumns = {"frac_out_0", "frac_out_1", "frac_out_2", "frac_out_3",
                                                 "frac_out_4", "frac_out_5", "max_out_degree", "height",
                                                 "root_degree", "argmax_label", "degree_sum"};

ExperimentInfo rrt_exp() {
    ExperimentInfo e;
    e.name = "rrt";
    e.description = "Random recursive tree: out-degree law, max degree and height";
    e.params = {{"n", true, 100000, "vertices added after the root"}};
    e.columns = kGrowthColumns;
    e.default_reps = 20;
    e.run_rep = [](const ParamMap& p, RngStream& rng) { return growth_rep(rrt_chain(I(p, "n"), rng)); };
    e.summarize = [](const ParamMap& p, const std::vector<RepResult>& reps) {
        Summary s;
        const double n = double(I(p, "n"));
        for (std::size_t k = 0; k <= 5; ++k) {
            const double ref = std::ldexp(1.0, -static_cast<int>(k) - 1);
            auto xs = column(reps, k);
            auto row = mean_row("frac_out_degree", xs, 0.95, ref);
            row.x = double(k);
            s.rows.push_back(row);
            const double m = moments(xs).mean;
            s.verdicts.push_back({"out_degree_" + std::to_string(k) + "_within_0.005", std::fabs(m - ref) <= 0.005,
                                  format_number(m) + " vs " + format_number(ref)});
        }
        auto md = column(reps, 6), h = column(reps, 7);
        for (auto& v : md) v /= std::log2(n);
        for (auto& v : h) v /= std::exp(1.0) * std::log(n);
        s.rows.push_back(mean_row("max_out_degree/log2(n)", md, 0.95, 1.0));
        s.rows.push_back(mean_row("height/(e log n)", h, 0.95, 1.0));
        s.rows.push_back(mean_row("argmax_label", column(reps, 9), 0.95));
        s.verdicts.push_back(band_verdict("max_degree_band", md, 0.85, 1.15, 0.9));
        s.verdicts.push_back(band_verdict("height_band", h, 0.85, 1.15, 0.9));
        return s;
    };
    return e;
}

ExperimentInfo ba_exp() {
    ExperimentInfo e;
    e.name = "ba";
    e.description = "Preferential attachment tree: out-degree law, degree sum and height";
    e.params = {{"n", true, 100000, "vertices added after the root"}};
    e.columns = kGrowthColumns;
    e.default_reps = 20;
    e.run_rep = [](const ParamMap& p, RngStream& rng) { return growth_rep(ba_chain(I(p, "n"), rng)); };
    e.summarize = [](const ParamMap& p, const std::vector<RepResult>& reps) {
        Summary s;
        const double n = double(I(p, "n"));
        for (std::size_t k = 0; k <= 5; ++k) {
            const double kk = double(k);
            const double ref = 4.0 / ((kk + 1.0) * (kk + 2.0) * (kk + 3.0));
            auto xs = column(reps, k);
            auto row = mean_row("frac_out_degree", xs, 0.95, ref);
            row.x = kk;
            s.rows.push_back(row);
            const double m = moments(xs).mean;
            s.verdicts.push_back({"out_degree_" + std::to_string(k) + "_within_0.005", std::fabs(m - ref) <= 0.005,
                                  format_number(m) + " vs " + format_number(ref)});
        }
        auto ds = column(reps, 10);
        s.verdicts.push_back({"degree_sum_2n", std::all_of(ds.begin(), ds.end(), [&](double v) { return v == 2.0 * n; }), ""});
        auto h = column(reps, 7);
        const double c = ba_height_constant();
        for (auto& v : h) v /= c * std::log(n);
        s.rows.push_back(mean_row("height/(c log n)", h, 0.95, 1.0));
        s.verdicts.push_back(band_verdict("height_band", h, 0.85, 1.15, 0.9));
        return s;
    };
    return e;
}

ExperimentInfo yule_exp() {
    ExperimentInfo e;
    e.name = "yule";
    e.description = "Particle count of an order-k Yule tree at time t";
    e.params = {{"k", true, 2, "order"}, {"t", false, 2.0, "time"}};
    e.columns = {"particles"};
    e.default_reps = 100000;
    e.run_rep = [](const ParamMap& p, RngStream& rng) {
        auto y = yule_simulate(static_cast<int>(I(p, "k")), YuleStop::at_time(D(p, "t")), rng);
        return RepResult{{double(y.particle_count())}, {}};
    };
    e.summarize = [](const ParamMap& p, const std::vector<RepResult>& reps) {
        Summary s;
        const auto k = I(p, "k");
        const double t = D(p, "t");
        auto xs = column(reps, 0);
        const double ref = std::exp(double(k - 1) * t);
        s.rows.push_back(mean_row("mean_particles", xs, 0.95, ref));
        s.verdicts.push_back(sigma_verdict("mean_within_3se", xs, ref));
        if (k == 2) {
            const double q = std::exp(-t);
            Pmf pmf = [q](std::int64_t j) { return j >= 1 ? q * std::pow(1.0 - q, double(j - 1)) : 0.0; };
            // Enough cells for the upper tail to carry expected mass >= 5.
            const auto hi = static_cast<std::int64_t>(std::ceil(std::log(5.0 / double(reps.size())) / std::log1p(-q)));
            auto emp = EmpiricalDist::tabulate(int_column(reps, 0), 1, std::max<std::int64_t>(hi, 2));
            histogram_rows(s, "P(Y=j)", emp, pmf);
            s.verdicts.push_back(chi_square_verdict("geometric_law_chi2", emp, pmf));
        }
        return s;
    };
    return e;
}

ExperimentInfo coupon_exp() {
    ExperimentInfo e;
    e.name = "coupon";
    e.description = "Coupon collector time, centred by n log n and scaled by n, against Gumbel";
    e.params = {{"n", true, 10000, "coupons"}};
    e.columns = {"draws", "normalized"};
    e.default_reps = 10000;
    e.run_rep = [](const ParamMap& p, RngStream& rng) {
        const auto n = I(p, "n");
        const auto t = coupon_collector(n, rng);
        return RepResult{{double(t), (double(t) - double(n) * std::log(double(n))) / double(n)}, {}};
    };
    e.summarize = [](const ParamMap&, const std::vector<RepResult>& reps) {
        Summary s;
        auto xs = column(reps, 1);
        s.rows.push_back(mean_row("normalized", xs, 0.95, 0.57721566490153286));
        s.verdicts.push_back(ks_verdict("gumbel_ks", xs, [](double x) { return std::exp(-std::exp(-x)); }));
        return s;
    };
    return e;
}

ExperimentInfo bins_exp() {
    ExperimentInfo e;
    e.name = "bins";
    e.description = "Maximal load of n balls in n bins, scaled by log n / log log n";
    e.params = {{"n", true, 1000000, "balls and bins"}};
    e.columns = {"max_load", "ratio"};
    e.default_reps = 100;
    e.run_rep = [](const ParamMap& p, RngStream& rng) {
        const auto n = I(p, "n");
        const auto m = balls_in_bins(n, rng);
        const double ln = std::log(double(n));
        return RepResult{{double(m), double(m) / (ln / std::log(ln))}, {}};
    };
    e.summarize = [](const ParamMap&, const std::vector<RepResult>& reps) {
        Summary s;
        auto r = column(reps, 1);
        s.rows.push_back(mean_row("ratio", r, 0.95, 1.0));
        s.rows.push_back(mean_row("max_load", column(reps, 0), 0.95));
        s.verdicts.push_back(band_verdict("ratio_band", r, 0.8, 1.25, 0.95));
        return s;
    };
    return e;
}

ExperimentInfo pills_exp() {
    ExperimentInfo e;
    e.name = "pills";
    e.description = "Half pills left when the last whole pill is taken, scaled by log n";
    e.params = {{"n", true, 100000, "whole pills"}};
    e.columns = {"halves", "scaled"};
    e.default_reps = 10000;
    e.run_rep = [](const ParamMap& p, RngStream& rng) {
        const auto n = I(p, "n");
        const auto l = pills(n, rng);
        // L - U is the continuous variable whose ceiling is L.
        const double jittered = double(l) - rng.uniform01();
        return RepResult{{double(l), jittered / std::log(double(n))}, {}};
    };
    e.summarize = [](const ParamMap&, const std::vector<RepResult>& reps) {
        Summary s;
        auto xs = column(reps, 1);
        s.rows.push_back(mean_row("scaled", xs, 0.95, 1.0));
        s.verdicts.push_back(ks_verdict("exponential_ks", xs, [](double x) { return x <= 0 ? 0.0 : 1.0 - std::exp(-x); }));
        return s;
    };
    return e;
}

ExperimentInfo corral_exp() {
    ExperimentInfo e;
    e.name = "corral";
    e.description = "Survivors of the O.K. Corral duel, scaled by n^{3/4}";
    e.params = {{"n", true, 10000, "people per side"}};
    e.columns = {"survivors", "scaled"};
    e.default_reps = 10000;
    e.run_rep = [](const ParamMap& p, RngStream& rng) {
        const auto n = I(p, "n");
        const auto s = ok_corral(n, rng);
        return RepResult{{double(s), double(s) / std::pow(double(n), 0.75)}, {}};
    };
    e.summarize = [](const ParamMap&, const std::vector<RepResult>& reps) {
        Summary s;
        auto xs = column(reps, 1);
        const double ref = corral_limit_mean();
        s.rows.push_back(mean_row("scaled", xs, 0.95, ref));
        s.verdicts.push_back(sigma_verdict("mean_within_3se", xs, ref));
        return s;
    };
    return e;
}

ExperimentInfo many_to_one_exp() {
    ExperimentInfo e;
    e.name = "many-to-one";
    e.description = "Sum over Yule particles against the spine expectation for three functionals";
    e.params = {{"k", true, 2, "order"}, {"t", false, 3.0, "time"}, {"h", true, 6, "height threshold"},
                {"d", true, 4, "degree threshold"}};
    e.columns = {"lhs_one", "lhs_height", "lhs_degree", "rhs_one", "rhs_height", "rhs_degree"};
    e.default_reps = 10000;
    e.run_rep = [](const ParamMap& p, RngStream& rng) {
        const int k = static_cast<int>(I(p, "k"));
        const double t = D(p, "t");
        const auto h = I(p, "h"), d = I(p, "d");
        RepResult r;
        double one = 0, hh = 0, dd = 0;
        for (const auto& c : yule_particle_counts(k, t, rng)) {
            one += 1.0;
            hh += spine_functional(SpineFunctional::height_at_least, h, c);
            dd += spine_functional(SpineFunctional::degree_at_least, d, c);
        }
        const auto sp = spine_sample(k, t, rng);
        const double g = std::exp(double(k - 1) * t);
        r.values = {one, hh, dd, g, g * spine_functional(SpineFunctional::height_at_least, h, sp),
                    g * spine_functional(SpineFunctional::degree_at_least, d, sp)};
        return r;
    };
    e.summarize = [](const ParamMap& p, const std::vector<RepResult>& reps) {
        Summary s;
        const int k = static_cast<int>(I(p, "k"));
        const double t = D(p, "t");
        const SpineFunctional fs[3] = {SpineFunctional::constant_one, SpineFunctional::height_at_least,
                                       SpineFunctional::degree_at_least};
        const std::int64_t th[3] = {0, I(p, "h"), I(p, "d")};
        const char* names[3] = {"one", "height", "degree"};
        for (std::size_t i = 0; i < 3; ++i) {
            const double ref = spine_analytic(k, t, fs[i], th[i]);
            auto l = mean_row(std::string("lhs_") + names[i], column(reps, i), 0.99, ref);
            auto r = mean_row(std::string("rhs_") + names[i], column(reps, i + 3), 0.99, ref);
            s.rows.push_back(l);
            s.rows.push_back(r);
            const bool overlap = *l.lo <= *r.hi && *r.lo <= *l.hi;
            s.verdicts.push_back({std::string("ci99_overlap_") + names[i], overlap,
                                  "lhs [" + format_number(*l.lo) + ", " + format_number(*l.hi) + "] rhs [" +
                                      format_number(*r.lo) + ", " + format_number(*r.hi) + "]"});
        }
        return s;
    };
    return e;
}

ExperimentInfo borel_tanner_exp() {
    ExperimentInfo e;
    e.name = "borel-tanner";
    e.description = "Hitting time of -1 by the Poisson(alpha) - 1 walk against the Borel-Tanner law";
    e.params = {{"alpha", false, 0.8, "Poisson mean"}, {"cap", true, 1000000, "step cap"}};
    e.columns = {"hitting_time"};
    e.default_reps = 100000;
    e.run_rep = [](const ParamMap& p, RngStream& rng) {
        const double a = D(p, "alpha");
        const auto cap = I(p, "cap");
        std::int64_t s = 0, n = 0;
        while (s > -1 && n < cap) {
            s += poisson(rng, a) - 1;
            ++n;
        }
        return RepResult{{s == -1 ? double(n) : -1.0}, {}};
    };
    e.summarize = [](const ParamMap& p, const std::vector<RepResult>& reps) {
        Summary s;
        const double a = D(p, "alpha");
        auto xs = int_column(reps, 0);
        for (auto& v : xs)
            if (v < 0) v = 40;
        auto emp = EmpiricalDist::tabulate(xs, 1, 40);
        Pmf pmf = [a](std::int64_t n) { return n >= 1 ? borel_tanner_pmf(a, n) : 0.0; };
        histogram_rows(s, "P(T=n)", emp, pmf);
        s.verdicts.push_back(chi_square_verdict("borel_tanner_chi2", emp, pmf));
        return s;
    };
    return e;
}

ExperimentInfo independent_exp() {
    ExperimentInfo e;
    e.name = "independent-set";
    e.description = "Greedy independent set of G(n, c/n) and its fluid limit";
    e.params = {{"n", true, 100000, "vertices"}, {"c", false, 1.0, "mean degree"}};
    e.columns = {"size_fraction", "sup_distance"};
    e.default_reps = 10;
    e.run_rep = [](const ParamMap& p, RngStream& rng) {
        const auto n = I(p, "n");
        const double c = D(p, "c");
        auto r = independent_greedy(sample_gnp(n, c / double(n), rng));
        double sup = 0.0;
        for (std::size_t k = 0; k < r.untouched.size(); ++k) {
            const double t = double(k) / double(n);
            sup = std::max(sup, std::fabs(double(r.untouched[k]) / double(n) - independent_fluid(c, t)));
        }
        RepResult out{{double(r.size) / double(n), sup}, {}};
        for (double t : curve_grid()) {
            const auto k = std::min(r.untouched.size() - 1, static_cast<std::size_t>(std::floor(t * double(n))));
            out.curve.push_back(double(r.untouched[k]) / double(n));
        }
        return out;
    };
    e.summarize = [](const ParamMap& p, const std::vector<RepResult>& reps) {
        Summary s;
        const double c = D(p, "c");
        const double ref = std::log1p(c) / c;
        auto xs = column(reps, 0), sup = column(reps, 1);
        s.rows.push_back(mean_row("size_fraction", xs, 0.95, ref));
        curve_rows(s, "untouched_over_n", reps, [c](double t) { return independent_fluid(c, t); });
        const double m = moments(xs).mean, worst = *std::max_element(sup.begin(), sup.end());
        s.verdicts.push_back({"size_within_0.01", std::fabs(m - ref) < 0.01, format_number(m) + " vs " + format_number(ref)});
        s.verdicts.push_back({"trajectory_sup_below_0.02", worst < 0.02, format_number(worst)});
        return s;
    };
    return e;
}

ExperimentInfo percolation_exp() {
    ExperimentInfo e;
    e.name = "tree-percolation";
    e.description = "Survival of the open cluster on the (d-1)-ary tree, proxied by a vertex cap";
    e.params = {{"d", true, 3, "degree"}, {"p", false, 0.75, "edge probability"}, {"cap", true, 100000, "vertex cap"}};
    e.columns = {"survived"};
    e.default_reps = 2000;
    e.run_rep = [](const ParamMap& p, RngStream& rng) {
        return RepResult{{tree_percolation_survival(static_cast<int>(I(p, "d")), D(p, "p"), 1, rng, I(p, "cap"))}, {}};
    };
    e.summarize = [](const ParamMap& p, const std::vector<RepResult>& reps) {
        Summary s;
        const double ref = 1.0 - bgw_extinction(OffspringLaw::binomial(static_cast<int>(I(p, "d")) - 1, D(p, "p")));
        const auto h = count_true(column(reps, 0));
        const auto n = static_cast<std::int64_t>(reps.size());
        s.rows.push_back(proportion_row("survival", h, n, 0.95, ref));
        s.verdicts.push_back({"survival_within_0.02", std::fabs(double(h) / double(n) - ref) <= 0.02,
                              format_number(double(h) / double(n)) + " vs " + format_number(ref)});
        return s;
    };
    return e;
}

ExperimentInfo polya_exp() {
    ExperimentInfo e;
    e.name = "polya";
    e.description = "Final red proportion of a Polya urn";
    e.params = {{"steps", true, 10000, "draws"}, {"r0", true, 1, "initial red"}, {"b0", true, 1, "initial blue"}};
    e.columns = {"red_fraction"};
    e.default_reps = 10000;
    e.run_rep = [](const ParamMap& p, RngStream& rng) {
        auto tr = polya_urn(I(p, "steps"), I(p, "r0"), I(p, "b0"), rng);
        const auto& s = tr.back();
        return RepResult{{double(s.red) / double(s.red + s.blue)}, {}};
    };
    e.summarize = [](const ParamMap& p, const std::vector<RepResult>& reps) {
        Summary s;
        const double ref = D(p, "r0") / (D(p, "r0") + D(p, "b0"));
        auto xs = column(reps, 0);
        s.rows.push_back(mean_row("red_fraction", xs, 0.95, ref));
        s.verdicts.push_back(sigma_verdict("mean_within_3se", xs, ref));
        if (I(p, "r0") == 1 && I(p, "b0") == 1)
            s.verdicts.push_back(ks_verdict("uniform_ks", xs, [](double x) { return std::clamp(x, 0.0, 1.0); }));
        return s;
    };
    return e;
}

ExperimentInfo clique_exp() {
    ExperimentInfo e;
    e.name = "clique";
    e.description = "Greedy clique of G(n, 1/2) against log2 n, and exact clique number on a 40-vertex prefix";
    e.params = {{"n", true, 2000, "vertices"}};
    e.columns = {"greedy_ratio", "prefix_exact", "prefix_greedy"};
    e.default_reps = 20;
    e.run_rep = [](const ParamMap& p, RngStream& rng) {
        const auto n = I(p, "n");
        auto g = sample_gnp(n, 0.5, rng);
        auto sub = induced_prefix(g, std::min<std::int64_t>(40, n));
        return RepResult{{double(clique_greedy(g)) / std::log2(double(n)), double(clique_max_exact(sub)),
                          double(clique_greedy(sub))}, {}};
    };
    e.summarize = [](const ParamMap&, const std::vector<RepResult>& reps) {
        Summary s;
        auto r = column(reps, 0);
        s.rows.push_back(mean_row("greedy/log2(n)", r, 0.95, 1.0));
        const double m = moments(r).mean;
        s.verdicts.push_back({"greedy_ratio_band", m >= 0.85 && m <= 1.15, format_number(m)});
        bool ok = true;
        for (const auto& rep : reps) ok = ok && rep.values[1] >= rep.values[2];
        s.verdicts.push_back({"exact_at_least_greedy", ok, ""});
        return s;
    };
    return e;
}

}  // namespace

const std::vector<ExperimentInfo>& experiment_registry() {
    static const std::vector<ExperimentInfo> reg = [] {
        std::vector<ExperimentInfo> r = {giant_exp(),   connectivity_exp(), fluid_exp(),        triangles_exp(),
                                         spectral_exp(), bgw_size_exp(),    parking_exp(),      ballot_exp(),
                                         cycles_exp(),   pd_exp(),          dickman_exp(),      rrt_exp(),
                                         ba_exp(),       yule_exp(),        coupon_exp(),       bins_exp(),
                                         pills_exp(),    corral_exp(),      many_to_one_exp(),  borel_tanner_exp(),
                                         independent_exp(), percolation_exp(), polya_exp(),     clique_exp()};
        return r;
    }();
    return reg;
}

const ExperimentInfo& find_experiment(const std::string& name) {
    for (const auto& e : experiment_registry())
        if (e.name == name) return e;
    std::string known;
    for (const auto& e : experiment_registry()) known += (known.empty() ? "" : ", ") + e.name;
    throw InvalidParameter("unknown experiment '" + name + "'; known experiments: " + known);
}

}  // namespace rs
