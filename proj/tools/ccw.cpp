// Command-line front end: parameter sweeps, phase-diagram grids, exact-N and
// Monte Carlo runs, and solver/oracle comparison reports. Output is CSV or
// JSON with a reproducibility header; reruns with identical inputs are
// byte-identical.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ccw/exactn.hpp"
#include "ccw/mcsim.hpp"
#include "ccw/phase.hpp"
#include "ccw/solver.hpp"
#include "ccw/version.hpp"

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

// Fixed float formatting: 17 significant digits.
std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

using MetaList = std::vector<std::pair<std::string, std::string>>;

void write_csv_header(std::ostream& os, const std::string& mode, const MetaList& meta) {
    os << "# ccw " << ccw::kVersion << " mode=" << mode;
    for (const auto& [key, value] : meta) os << ' ' << key << '=' << value;
    os << '\n';
}

ordered_json meta_json(const std::string& mode, const MetaList& meta) {
    ordered_json j;
    j["tool"] = "ccw";
    j["version"] = ccw::kVersion;
    j["mode"] = mode;
    for (const auto& [key, value] : meta) j[key] = value;
    return j;
}

// Output sink: a file (binary, so line endings stay LF) or stdout for "-".
class Output {
  public:
    explicit Output(const std::string& path) {
        if (path != "-") {
            file_.open(path, std::ios::binary);
            if (!file_) throw std::runtime_error("cannot open output file: " + path);
        }
    }
    std::ostream& os() { return file_.is_open() ? file_ : std::cout; }
    void finish() {
        os().flush();
        if (file_.is_open() && !file_) throw std::runtime_error("error writing output file");
    }

  private:
    std::ofstream file_;
};

// Applies a JSON config file to a parsed subcommand: a top-level object whose
// keys are the long option names without dashes; arrays expand to repeated
// values. Options given on the command line keep their values.
void apply_json_config(CLI::App* sub, const std::string& path) {
    if (path.empty()) return;
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot read config file: " + path);
    const json j = json::parse(in);
    if (!j.is_object()) throw std::invalid_argument("config file must hold a JSON object");
    for (auto it = j.begin(); it != j.end(); ++it) {
        if (it.key() == "config") continue;
        CLI::Option* opt = sub->get_option_no_throw("--" + it.key());
        if (opt == nullptr) continue;  // key for some other subcommand
        if (opt->count() > 0) continue;  // command line overrides config
        const json& v = it.value();
        if (v.is_array()) {
            for (const json& elem : v) {
                opt->add_result(elem.is_string() ? elem.get<std::string>() : elem.dump());
            }
        } else {
            opt->add_result(v.is_string() ? v.get<std::string>() : v.dump());
        }
        opt->run_callback();
    }
}

struct IoArgs {
    std::string format = "csv";
    std::string out = "-";
};

void add_io_options(CLI::App* sub, IoArgs& io, const char* default_format = "csv") {
    io.format = default_format;
    sub->add_option("--format", io.format, "output format")
        ->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--out", io.out, "output path, '-' for stdout");
}

void add_config_option(CLI::App* sub, std::string& path) {
    sub->add_option("--config", path, "JSON file with the same keys as the long options");
}

// All flags are long-form; in particular there is no -h shortcut, which
// frees --h for the external field.
CLI::App* add_subcommand(CLI::App& app, const std::string& name, const std::string& desc) {
    CLI::App* sub = app.add_subcommand(name, desc);
    sub->set_help_flag("--help", "print this help message and exit");
    return sub;
}

double grid_point(double lo, double hi, std::int64_t count, std::int64_t i) {
    return lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1);
}

struct PointSolution {
    double z = 0.0;
    double m = 0.0;
};

PointSolution solve_point(const ccw::ModelParams& p) {
    const ccw::MinimizerSet set = ccw::minimize_free_energy(p);
    if (set.minimizers.size() != 1) throw ccw::AmbiguousMagnetizationError(set);
    return {set.minimizers.front(), ccw::magnetization_from_z(p, set.minimizers.front())};
}

// ---------------------------------------------------------------------------
// sweep-h

struct SweepHArgs {
    std::string config;
    double beta = 1.0, s = 0.0, r = 0.0;
    double h_min = -0.5, h_max = 0.5;
    std::int64_t points = 101;
    IoArgs io;
};

void run_sweep_h(const SweepHArgs& a) {
    if (a.points < 2) throw std::invalid_argument("sweep-h: --points must be >= 2");
    if (!(a.h_min < a.h_max)) throw std::invalid_argument("sweep-h: need --h-min < --h-max");
    ccw::ModelParams{a.beta, a.s, a.r, a.h_min}.validate();

    const double rs = a.r - a.s;
    std::int64_t nearest = -1;
    if (rs >= a.h_min && rs <= a.h_max) {
        double best = std::numeric_limits<double>::infinity();
        for (std::int64_t i = 0; i < a.points; ++i) {
            const double d = std::fabs(grid_point(a.h_min, a.h_max, a.points, i) - rs);
            if (d < best) {
                best = d;
                nearest = i;
            }
        }
    }

    struct Row {
        double h, m, z;
        const char* branch;
    };
    std::vector<Row> rows;
    rows.reserve(static_cast<std::size_t>(a.points) + 1);
    for (std::int64_t i = 0; i < a.points; ++i) {
        if (i == nearest) {
            // The grid point closest to the singular field carries the two
            // directional limits instead of a misleading point value.
            const ccw::MagnetizationLimits lim = ccw::directional_limits(a.beta, a.s, a.r);
            rows.push_back({rs, lim.m_minus, lim.z_minus, "minus"});
            rows.push_back({rs, lim.m_plus, lim.z_plus, "plus"});
            continue;
        }
        const double h = grid_point(a.h_min, a.h_max, a.points, i);
        const ccw::ModelParams p{a.beta, a.s, a.r, h};
        const PointSolution sol = solve_point(p);
        rows.push_back({h, sol.m, sol.z, "regular"});
    }

    const MetaList meta = {{"beta", fmt(a.beta)},   {"s", fmt(a.s)},
                           {"r", fmt(a.r)},         {"h-min", fmt(a.h_min)},
                           {"h-max", fmt(a.h_max)}, {"points", std::to_string(a.points)}};
    Output out(a.io.out);
    if (a.io.format == "csv") {
        write_csv_header(out.os(), "sweep-h", meta);
        out.os() << "h,m,z,branch\n";
        for (const Row& row : rows) {
            out.os() << fmt(row.h) << ',' << fmt(row.m) << ',' << fmt(row.z) << ','
                     << row.branch << '\n';
        }
    } else {
        ordered_json j;
        j["meta"] = meta_json("sweep-h", meta);
        j["rows"] = ordered_json::array();
        for (const Row& row : rows) {
            j["rows"].push_back(
                {{"h", row.h}, {"m", row.m}, {"z", row.z}, {"branch", row.branch}});
        }
        out.os() << j.dump(2) << '\n';
    }
    out.finish();
}

// ---------------------------------------------------------------------------
// sweep-beta

struct SweepBetaArgs {
    std::string config;
    double beta_min = 0.5, beta_max = 3.0;
    std::int64_t points = 51;
    double s = 0.0, r = 0.0;
    IoArgs io;
};

void run_sweep_beta(const SweepBetaArgs& a) {
    if (a.points < 2) throw std::invalid_argument("sweep-beta: --points must be >= 2");
    if (!(a.beta_min < a.beta_max) || !(a.beta_min > 0.0)) {
        throw std::invalid_argument("sweep-beta: need 0 < --beta-min < --beta-max");
    }
    ccw::ModelParams{a.beta_min, a.s, a.r, 0.0}.validate();

    const MetaList meta = {{"beta-min", fmt(a.beta_min)}, {"beta-max", fmt(a.beta_max)},
                           {"points", std::to_string(a.points)}, {"s", fmt(a.s)},
                           {"r", fmt(a.r)}};
    Output out(a.io.out);
    ordered_json jrows = ordered_json::array();
    if (a.io.format == "csv") {
        write_csv_header(out.os(), "sweep-beta", meta);
        out.os() << "beta,z0,m_minus,m_plus,jump\n";
    }
    for (std::int64_t i = 0; i < a.points; ++i) {
        const double beta = grid_point(a.beta_min, a.beta_max, a.points, i);
        const ccw::MagnetizationLimits lim = ccw::directional_limits(beta, a.s, a.r);
        if (a.io.format == "csv") {
            out.os() << fmt(beta) << ',' << fmt(lim.z_plus) << ',' << fmt(lim.m_minus)
                     << ',' << fmt(lim.m_plus) << ',' << fmt(lim.jump) << '\n';
        } else {
            jrows.push_back({{"beta", beta},
                             {"z0", lim.z_plus},
                             {"m_minus", lim.m_minus},
                             {"m_plus", lim.m_plus},
                             {"jump", lim.jump}});
        }
    }
    if (a.io.format == "json") {
        ordered_json j;
        j["meta"] = meta_json("sweep-beta", meta);
        j["rows"] = std::move(jrows);
        out.os() << j.dump(2) << '\n';
    }
    out.finish();
}

// ---------------------------------------------------------------------------
// diagram

struct DiagramArgs {
    std::string config;
    double s_min = 0.0, s_max = 0.9, r_min = 0.0, r_max = 0.9;
    std::int64_t points = 50, s_points = 0, r_points = 0;
    std::optional<double> beta;
    std::optional<double> beta_factor;
    IoArgs io;
};

void run_diagram(const DiagramArgs& a) {
    const std::int64_t sp = a.s_points > 0 ? a.s_points : a.points;
    const std::int64_t rp = a.r_points > 0 ? a.r_points : a.points;
    if (sp < 2 || rp < 2) throw std::invalid_argument("diagram: grid needs >= 2 points per axis");
    if (a.beta.has_value() == a.beta_factor.has_value()) {
        throw std::invalid_argument("diagram: give exactly one of --beta or --beta-factor");
    }
    if (a.beta_factor && !(*a.beta_factor > 0.0)) {
        throw std::invalid_argument("diagram: --beta-factor must be > 0");
    }
    if (a.beta && !(*a.beta > 0.0)) throw std::invalid_argument("diagram: --beta must be > 0");

    MetaList meta = {{"s-min", fmt(a.s_min)},  {"s-max", fmt(a.s_max)},
                     {"s-points", std::to_string(sp)}, {"r-min", fmt(a.r_min)},
                     {"r-max", fmt(a.r_max)},  {"r-points", std::to_string(rp)}};
    if (a.beta) meta.emplace_back("beta", fmt(*a.beta));
    if (a.beta_factor) meta.emplace_back("beta-factor", fmt(*a.beta_factor));

    Output out(a.io.out);
    ordered_json jrows = ordered_json::array();
    if (a.io.format == "csv") {
        write_csv_header(out.os(), "diagram", meta);
        out.os() << "s,r,beta_star,beta_double_star,region,regime\n";
    }
    // Row-major in (s, r): s is the outer loop.
    for (std::int64_t i = 0; i < sp; ++i) {
        const double s = grid_point(a.s_min, a.s_max, sp, i);
        for (std::int64_t k = 0; k < rp; ++k) {
            const double r = grid_point(a.r_min, a.r_max, rp, k);
            const bool valid = s >= 0.0 && r >= 0.0 && s + r < 1.0 - 1e-12;
            if (!valid) {
                // Inadmissible cells are emitted, not dropped.
                if (a.io.format == "csv") {
                    out.os() << fmt(s) << ',' << fmt(r) << ",,,invalid,\n";
                } else {
                    jrows.push_back({{"s", s},
                                     {"r", r},
                                     {"beta_star", nullptr},
                                     {"beta_double_star", nullptr},
                                     {"region", "invalid"},
                                     {"regime", nullptr}});
                }
                continue;
            }
            const double beta = a.beta ? *a.beta : *a.beta_factor * ccw::beta_star(s, r);
            const ccw::TransitionReport rep = ccw::classify_transition(s, r, beta);
            if (a.io.format == "csv") {
                out.os() << fmt(s) << ',' << fmt(r) << ',' << fmt(rep.beta_star) << ',';
                if (rep.beta_double_star) out.os() << fmt(*rep.beta_double_star);
                out.os() << ',' << to_string(rep.region) << ',' << to_string(rep.regime)
                         << '\n';
            } else {
                ordered_json row = {{"s", s}, {"r", r}, {"beta_star", rep.beta_star}};
                if (rep.beta_double_star) {
                    row["beta_double_star"] = *rep.beta_double_star;
                } else {
                    row["beta_double_star"] = nullptr;
                }
                row["region"] = to_string(rep.region);
                row["regime"] = to_string(rep.regime);
                jrows.push_back(std::move(row));
            }
        }
    }
    if (a.io.format == "json") {
        ordered_json j;
        j["meta"] = meta_json("diagram", meta);
        j["rows"] = std::move(jrows);
        out.os() << j.dump(2) << '\n';
    }
    out.finish();
}

// ---------------------------------------------------------------------------
// solve / limits

struct PointArgs {
    std::string config;
    double beta = 1.0, s = 0.0, r = 0.0, h = 0.0;
    IoArgs io;
};

void run_solve(const PointArgs& a) {
    const ccw::ModelParams p{a.beta, a.s, a.r, a.h};
    const ccw::MinimizerSet set = ccw::minimize_free_energy(p);

    const MetaList meta = {{"beta", fmt(a.beta)}, {"s", fmt(a.s)}, {"r", fmt(a.r)},
                           {"h", fmt(a.h)}};
    Output out(a.io.out);
    if (a.io.format == "csv") {
        write_csv_header(out.os(), "solve", meta);
        out.os() << "z,m,free_energy,curvature\n";
        for (std::size_t i = 0; i < set.minimizers.size(); ++i) {
            out.os() << fmt(set.minimizers[i]) << ','
                     << fmt(ccw::magnetization_from_z(p, set.minimizers[i])) << ','
                     << fmt(set.value) << ',' << fmt(set.curvature[i]) << '\n';
        }
    } else {
        ordered_json j;
        j["meta"] = meta_json("solve", meta);
        j["minimizers"] = ordered_json::array();
        for (std::size_t i = 0; i < set.minimizers.size(); ++i) {
            j["minimizers"].push_back(
                {{"z", set.minimizers[i]},
                 {"m", ccw::magnetization_from_z(p, set.minimizers[i])},
                 {"free_energy", set.value},
                 {"curvature", set.curvature[i]}});
        }
        if (set.minimizers.size() == 1) {
            j["magnetization"] = ccw::magnetization_from_z(p, set.minimizers.front());
        } else {
            j["magnetization"] = nullptr;
        }
        out.os() << j.dump(2) << '\n';
    }
    out.finish();
}

void run_limits(const PointArgs& a) {
    const ccw::MagnetizationLimits lim = ccw::directional_limits(a.beta, a.s, a.r);
    const double bstar = ccw::beta_star(a.s, a.r);

    const MetaList meta = {{"beta", fmt(a.beta)}, {"s", fmt(a.s)}, {"r", fmt(a.r)}};
    Output out(a.io.out);
    if (a.io.format == "csv") {
        write_csv_header(out.os(), "limits", meta);
        out.os() << "beta,s,r,beta_star,z_minus,z_plus,m_minus,m_plus,jump\n";
        out.os() << fmt(a.beta) << ',' << fmt(a.s) << ',' << fmt(a.r) << ',' << fmt(bstar)
                 << ',' << fmt(lim.z_minus) << ',' << fmt(lim.z_plus) << ','
                 << fmt(lim.m_minus) << ',' << fmt(lim.m_plus) << ',' << fmt(lim.jump)
                 << '\n';
    } else {
        ordered_json j;
        j["meta"] = meta_json("limits", meta);
        j["beta_star"] = bstar;
        j["z_minus"] = lim.z_minus;
        j["z_plus"] = lim.z_plus;
        j["m_minus"] = lim.m_minus;
        j["m_plus"] = lim.m_plus;
        j["jump"] = lim.jump;
        out.os() << j.dump(2) << '\n';
    }
    out.finish();
}

// ---------------------------------------------------------------------------
// exact / mc

struct ExactArgs {
    std::string config;
    std::int64_t n = 1000;
    double s = 0.0, r = 0.0, beta = 1.0, h = 0.0;
    IoArgs io;
};

void run_exact(const ExactArgs& a) {
    const ccw::FiniteModel fm = ccw::FiniteModel::from_fractions(a.n, a.s, a.r);
    const ccw::ExactResult er = ccw::exact_moments(fm, a.beta, a.h);

    const MetaList meta = {{"n", std::to_string(a.n)}, {"s", fmt(a.s)}, {"r", fmt(a.r)},
                           {"beta", fmt(a.beta)},      {"h", fmt(a.h)}};
    Output out(a.io.out);
    if (a.io.format == "csv") {
        write_csv_header(out.os(), "exact", meta);
        out.os() << "n,n_plus,n_minus,n_free,s_n,r_n,log_partition,mean_magnetization,"
                    "mean_free_spin\n";
        out.os() << fm.n_total << ',' << fm.n_plus << ',' << fm.n_minus << ',' << fm.n_free
                 << ',' << fmt(fm.s_n()) << ',' << fmt(fm.r_n()) << ','
                 << fmt(er.log_partition) << ',' << fmt(er.mean_magnetization) << ','
                 << fmt(er.mean_free_spin) << '\n';
    } else {
        ordered_json j;
        j["meta"] = meta_json("exact", meta);
        j["n"] = fm.n_total;
        j["n_plus"] = fm.n_plus;
        j["n_minus"] = fm.n_minus;
        j["n_free"] = fm.n_free;
        j["s_n"] = fm.s_n();
        j["r_n"] = fm.r_n();
        j["log_partition"] = er.log_partition;
        j["mean_magnetization"] = er.mean_magnetization;
        j["mean_free_spin"] = er.mean_free_spin;
        out.os() << j.dump(2) << '\n';
    }
    out.finish();
}

struct McArgs {
    std::string config;
    std::int64_t n = 1000;
    double s = 0.0, r = 0.0, beta = 1.0, h = 0.0;
    std::uint64_t seed = 1;
    std::int64_t sweeps = 10000, burn_in = 1000;
    std::string dynamics = "metropolis";
    std::string init = "field-aligned";
    IoArgs io;
};

ccw::Dynamics parse_dynamics(const std::string& name) {
    return name == "glauber" ? ccw::Dynamics::Glauber : ccw::Dynamics::Metropolis;
}

ccw::StartMode parse_start(const std::string& name) {
    if (name == "up") return ccw::StartMode::AllUp;
    if (name == "down") return ccw::StartMode::AllDown;
    if (name == "random") return ccw::StartMode::Random;
    return ccw::StartMode::FieldAligned;
}

void run_mc(const McArgs& a) {
    ccw::ChainConfig cfg;
    cfg.fm = ccw::FiniteModel::from_fractions(a.n, a.s, a.r);
    cfg.beta = a.beta;
    cfg.h = a.h;
    cfg.seed = a.seed;
    cfg.sweeps = a.sweeps;
    cfg.burn_in_sweeps = a.burn_in;
    cfg.dynamics = parse_dynamics(a.dynamics);
    cfg.start = parse_start(a.init);
    const ccw::McEstimate est = ccw::run_chain(cfg);

    const MetaList meta = {{"n", std::to_string(a.n)},
                           {"s", fmt(a.s)},
                           {"r", fmt(a.r)},
                           {"beta", fmt(a.beta)},
                           {"h", fmt(a.h)},
                           {"dynamics", a.dynamics},
                           {"init", a.init},
                           {"sweeps", std::to_string(a.sweeps)},
                           {"burn-in", std::to_string(a.burn_in)},
                           {"rng", ccw::kRngName},
                           {"seed", std::to_string(a.seed)}};
    Output out(a.io.out);
    if (a.io.format == "csv") {
        write_csv_header(out.os(), "mc", meta);
        out.os() << "n,n_plus,n_minus,n_free,beta,h,dynamics,seed,sweeps,burn_in,"
                    "mean_magnetization,std_error,acceptance_rate,final_sector\n";
        out.os() << cfg.fm.n_total << ',' << cfg.fm.n_plus << ',' << cfg.fm.n_minus << ','
                 << cfg.fm.n_free << ',' << fmt(a.beta) << ',' << fmt(a.h) << ','
                 << a.dynamics << ',' << a.seed << ',' << a.sweeps << ',' << a.burn_in
                 << ',' << fmt(est.mean_magnetization) << ',' << fmt(est.std_error) << ','
                 << fmt(est.acceptance_rate) << ',' << est.final_sector << '\n';
    } else {
        ordered_json j;
        j["meta"] = meta_json("mc", meta);
        j["mean_magnetization"] = est.mean_magnetization;
        j["std_error"] = est.std_error;
        j["acceptance_rate"] = est.acceptance_rate;
        j["final_sector"] = est.final_sector;
        out.os() << j.dump(2) << '\n';
    }
    out.finish();
}

// ---------------------------------------------------------------------------
// compare

struct CompareArgs {
    std::string config;
    double s = 0.0, r = 0.0, beta = 1.0, h = 0.0;
    std::vector<std::int64_t> sizes = {500, 1000, 2000, 4000, 8000, 16000, 32000, 64000};
    std::uint64_t seed = 1;
    std::int64_t sweeps = 2000, burn_in = 500;
    std::string dynamics = "metropolis";
    IoArgs io;
};

void run_compare(const CompareArgs& a) {
    if (a.io.format != "json") {
        throw std::invalid_argument("compare: the report is JSON only; use --format json");
    }
    if (a.sizes.empty()) throw std::invalid_argument("compare: need at least one --n");

    const ccw::ModelParams p{a.beta, a.s, a.r, a.h};
    const PointSolution sol = solve_point(p);
    const std::vector<ccw::ConvergenceRow> conv =
        ccw::convergence_study(a.s, a.r, a.beta, a.h, a.sizes);

    const MetaList meta = {{"s", fmt(a.s)},
                           {"r", fmt(a.r)},
                           {"beta", fmt(a.beta)},
                           {"h", fmt(a.h)},
                           {"dynamics", a.dynamics},
                           {"sweeps", std::to_string(a.sweeps)},
                           {"burn-in", std::to_string(a.burn_in)},
                           {"rng", ccw::kRngName},
                           {"seed", std::to_string(a.seed)}};
    ordered_json j;
    j["meta"] = meta_json("compare", meta);
    j["solver"] = {{"m_infinity", sol.m}, {"z", sol.z}};

    j["exact"] = ordered_json::array();
    for (const ccw::ConvergenceRow& row : conv) {
        j["exact"].push_back({{"n", row.n},
                              {"mean_magnetization", row.mean_magnetization},
                              {"abs_error", row.abs_error}});
    }

    bool mc_ok = true;
    j["mc"] = ordered_json::array();
    for (std::size_t i = 0; i < a.sizes.size(); ++i) {
        ccw::ChainConfig cfg;
        cfg.fm = ccw::FiniteModel::from_fractions(a.sizes[i], a.s, a.r);
        cfg.beta = a.beta;
        cfg.h = a.h;
        cfg.seed = a.seed + i;
        cfg.sweeps = a.sweeps;
        cfg.burn_in_sweeps = a.burn_in;
        cfg.dynamics = parse_dynamics(a.dynamics);
        const ccw::McEstimate est = ccw::run_chain(cfg);
        const double diff = std::fabs(est.mean_magnetization - conv[i].mean_magnetization);
        const bool within = diff <= 3.0 * est.std_error;
        mc_ok = mc_ok && within;
        j["mc"].push_back({{"n", a.sizes[i]},
                           {"mean_magnetization", est.mean_magnetization},
                           {"std_error", est.std_error},
                           {"abs_error_vs_exact", diff},
                           {"within_three_sigma", within}});
    }

    // Error decay across sizes: nonincreasing, with one small inversion allowed.
    int inversions = 0;
    double worst_inversion = 0.0;
    for (std::size_t i = 1; i < conv.size(); ++i) {
        const double excess = conv[i].abs_error - conv[i - 1].abs_error;
        if (excess > 0.0) {
            ++inversions;
            worst_inversion = std::max(worst_inversion, excess);
        }
    }
    const bool decay_ok = inversions <= 1 && worst_inversion < 1e-5;
    const double final_error = conv.back().abs_error;
    const bool final_ok = final_error < 1e-3;

    j["checks"] = {{"error_decay_monotone", decay_ok},
                   {"largest_inversion", worst_inversion},
                   {"final_error", final_error},
                   {"final_error_below_1e-3", final_ok},
                   {"mc_within_three_sigma", mc_ok},
                   {"pass", decay_ok && final_ok && mc_ok}};

    Output out(a.io.out);
    out.os() << j.dump(2) << '\n';
    out.finish();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"conditional Curie-Weiss model: solver, phase classifier and finite-N "
                 "oracles"};
    app.require_subcommand(1);
    app.set_help_flag("--help", "print this help message and exit");

    SweepHArgs sweep_h;
    auto* sub_sweep_h = add_subcommand(app, "sweep-h", "magnetization curve across a field range");
    sub_sweep_h->add_option("--beta", sweep_h.beta, "inverse temperature");
    sub_sweep_h->add_option("--s", sweep_h.s, "pinned-plus fraction");
    sub_sweep_h->add_option("--r", sweep_h.r, "pinned-minus fraction");
    sub_sweep_h->add_option("--h-min", sweep_h.h_min, "field range start");
    sub_sweep_h->add_option("--h-max", sweep_h.h_max, "field range end");
    sub_sweep_h->add_option("--points", sweep_h.points, "grid size");
    add_io_options(sub_sweep_h, sweep_h.io);
    add_config_option(sub_sweep_h, sweep_h.config);
    sub_sweep_h->callback([&] {
        apply_json_config(sub_sweep_h, sweep_h.config);
        run_sweep_h(sweep_h);
    });

    SweepBetaArgs sweep_beta;
    auto* sub_sweep_beta =
        add_subcommand(app, "sweep-beta", "directional limits across a beta range");
    sub_sweep_beta->add_option("--beta-min", sweep_beta.beta_min, "beta range start");
    sub_sweep_beta->add_option("--beta-max", sweep_beta.beta_max, "beta range end");
    sub_sweep_beta->add_option("--points", sweep_beta.points, "grid size");
    sub_sweep_beta->add_option("--s", sweep_beta.s, "pinned-plus fraction");
    sub_sweep_beta->add_option("--r", sweep_beta.r, "pinned-minus fraction");
    add_io_options(sub_sweep_beta, sweep_beta.io);
    add_config_option(sub_sweep_beta, sweep_beta.config);
    sub_sweep_beta->callback([&] {
        apply_json_config(sub_sweep_beta, sweep_beta.config);
        run_sweep_beta(sweep_beta);
    });

    DiagramArgs diagram;
    auto* sub_diagram = add_subcommand(app, "diagram", "regime grid over the (s, r) plane");
    sub_diagram->add_option("--s-min", diagram.s_min);
    sub_diagram->add_option("--s-max", diagram.s_max);
    sub_diagram->add_option("--r-min", diagram.r_min);
    sub_diagram->add_option("--r-max", diagram.r_max);
    sub_diagram->add_option("--points", diagram.points, "grid size per axis");
    sub_diagram->add_option("--s-points", diagram.s_points, "override for the s axis");
    sub_diagram->add_option("--r-points", diagram.r_points, "override for the r axis");
    sub_diagram->add_option("--beta", diagram.beta, "fixed beta for the regime column");
    sub_diagram->add_option("--beta-factor", diagram.beta_factor,
                            "per-cell beta as a multiple of beta*");
    add_io_options(sub_diagram, diagram.io);
    add_config_option(sub_diagram, diagram.config);
    sub_diagram->callback([&] {
        apply_json_config(sub_diagram, diagram.config);
        run_diagram(diagram);
    });

    PointArgs solve_args;
    auto* sub_solve = add_subcommand(app, "solve", "free-energy minimizers at one point");
    sub_solve->add_option("--beta", solve_args.beta);
    sub_solve->add_option("--s", solve_args.s);
    sub_solve->add_option("--r", solve_args.r);
    sub_solve->add_option("--h", solve_args.h);
    add_io_options(sub_solve, solve_args.io);
    add_config_option(sub_solve, solve_args.config);
    sub_solve->callback([&] {
        apply_json_config(sub_solve, solve_args.config);
        run_solve(solve_args);
    });

    PointArgs limits_args;
    auto* sub_limits = add_subcommand(app, "limits", "directional limits at h = r - s");
    sub_limits->add_option("--beta", limits_args.beta);
    sub_limits->add_option("--s", limits_args.s);
    sub_limits->add_option("--r", limits_args.r);
    add_io_options(sub_limits, limits_args.io);
    add_config_option(sub_limits, limits_args.config);
    sub_limits->callback([&] {
        apply_json_config(sub_limits, limits_args.config);
        run_limits(limits_args);
    });

    ExactArgs exact;
    auto* sub_exact = add_subcommand(app, "exact", "exact finite-N moments");
    sub_exact->add_option("--n", exact.n, "population size");
    sub_exact->add_option("--s", exact.s);
    sub_exact->add_option("--r", exact.r);
    sub_exact->add_option("--beta", exact.beta);
    sub_exact->add_option("--h", exact.h);
    add_io_options(sub_exact, exact.io);
    add_config_option(sub_exact, exact.config);
    sub_exact->callback([&] {
        apply_json_config(sub_exact, exact.config);
        run_exact(exact);
    });

    McArgs mc;
    auto* sub_mc = add_subcommand(app, "mc", "Monte Carlo estimate at finite N");
    sub_mc->add_option("--n", mc.n, "population size");
    sub_mc->add_option("--s", mc.s);
    sub_mc->add_option("--r", mc.r);
    sub_mc->add_option("--beta", mc.beta);
    sub_mc->add_option("--h", mc.h);
    sub_mc->add_option("--seed", mc.seed);
    sub_mc->add_option("--sweeps", mc.sweeps);
    sub_mc->add_option("--burn-in", mc.burn_in);
    sub_mc->add_option("--dynamics", mc.dynamics)
        ->check(CLI::IsMember({"metropolis", "glauber"}));
    sub_mc->add_option("--init", mc.init)
        ->check(CLI::IsMember({"field-aligned", "up", "down", "random"}));
    add_io_options(sub_mc, mc.io);
    add_config_option(sub_mc, mc.config);
    sub_mc->callback([&] {
        apply_json_config(sub_mc, mc.config);
        run_mc(mc);
    });

    CompareArgs compare;
    auto* sub_compare =
        add_subcommand(app, "compare", "solver vs exact-N vs Monte Carlo report");
    sub_compare->add_option("--s", compare.s);
    sub_compare->add_option("--r", compare.r);
    sub_compare->add_option("--beta", compare.beta);
    sub_compare->add_option("--h", compare.h);
    sub_compare->add_option("--n", compare.sizes, "sizes to compare (repeat or comma-list)")
        ->delimiter(',');
    sub_compare->add_option("--seed", compare.seed);
    sub_compare->add_option("--sweeps", compare.sweeps);
    sub_compare->add_option("--burn-in", compare.burn_in);
    sub_compare->add_option("--dynamics", compare.dynamics)
        ->check(CLI::IsMember({"metropolis", "glauber"}));
    add_io_options(sub_compare, compare.io, "json");
    add_config_option(sub_compare, compare.config);
    sub_compare->callback([&] {
        apply_json_config(sub_compare, compare.config);
        run_compare(compare);
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "ccw: bad config file: " << e.what() << '\n';
        return 2;
    } catch (const ccw::AmbiguousMagnetizationError& e) {
        std::cerr << "ccw: " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "ccw: " << e.what() << '\n';
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "ccw: " << e.what() << '\n';
        return 2;
    } catch (const std::out_of_range& e) {
        std::cerr << "ccw: " << e.what() << '\n';
        return 2;
    } catch (const std::length_error& e) {
        std::cerr << "ccw: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "ccw: internal error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
