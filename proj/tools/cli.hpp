// Copyright 2026 The photon_budget Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/**
 * @file
 * Command-line front end. Every subcommand evaluates one row per sweep
 * point and writes it as an aligned table, CSV, or JSON.
 *
 * Exit codes: 0 success, 1 usage or argument error, 2 property-check failure.
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <limits>
#include <map>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "photon_budget/property_sweep.hpp"
#include "photon_budget/capacity.hpp"
#include "photon_budget/discrimination.hpp"
#include "photon_budget/infospec.hpp"
#include "photon_budget/loglaw.hpp"
#include "photon_budget/numerics.hpp"
#include "photon_budget/ppm.hpp"
#include "photon_budget/spectrum.hpp"

namespace photon_budget::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kCheckFailed = 2 };

//=========================================================================
// Tabular output
//=========================================================================

using Cell = std::variant<double, std::int64_t, std::string, bool>;

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
    std::map<std::string, std::string> params;
    std::vector<std::string> provenance;
};

/// Shortest decimal that reads back to the same double.
inline std::string format_double(double v) {
    if (std::isnan(v)) {
        return "nan";
    }
    if (std::isinf(v)) {
        return v > 0 ? "inf" : "-inf";
    }
    char buf[32];
    for (int precision = 6; precision <= 17; ++precision) {
        std::snprintf(buf, sizeof buf, "%.*g", precision, v);
        if (std::strtod(buf, nullptr) == v) {
            break;
        }
    }
    return buf;
}

inline std::string cell_text(const Cell &c) {
    struct Visitor {
        std::string operator()(double v) const { return format_double(v); }
        std::string operator()(std::int64_t v) const { return std::to_string(v); }
        std::string operator()(const std::string &v) const { return v; }
        std::string operator()(bool v) const { return v ? "true" : "false"; }
    };
    return std::visit(Visitor{}, c);
}

inline nlohmann::json cell_json(const Cell &c) {
    struct Visitor {
        nlohmann::json operator()(double v) const {
            return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr);
        }
        nlohmann::json operator()(std::int64_t v) const { return v; }
        nlohmann::json operator()(const std::string &v) const { return v; }
        nlohmann::json operator()(bool v) const { return v; }
    };
    return std::visit(Visitor{}, c);
}

inline void write_csv(const Table &t, std::ostream &os) {
    for (const auto &line : t.provenance) {
        os << "# " << line << '\n';
    }
    for (std::size_t i = 0; i < t.columns.size(); ++i) {
        os << (i ? "," : "") << t.columns[i];
    }
    os << '\n';
    for (const auto &row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            os << (i ? "," : "") << cell_text(row[i]);
        }
        os << '\n';
    }
}

inline void write_json(const Table &t, std::ostream &os) {
    nlohmann::json doc;
    doc["params"] = t.params;
    doc["provenance"] = t.provenance;
    doc["rows"] = nlohmann::json::array();
    for (const auto &row : t.rows) {
        nlohmann::json obj = nlohmann::json::object();
        for (std::size_t i = 0; i < row.size(); ++i) {
            obj[t.columns[i]] = cell_json(row[i]);
        }
        doc["rows"].push_back(std::move(obj));
    }
    os << doc.dump(2) << '\n';
}

inline void write_table(const Table &t, std::ostream &os) {
    std::vector<std::size_t> width(t.columns.size());
    std::vector<std::vector<std::string>> text;
    for (std::size_t i = 0; i < t.columns.size(); ++i) {
        width[i] = t.columns[i].size();
    }
    for (const auto &row : t.rows) {
        std::vector<std::string> line;
        for (std::size_t i = 0; i < row.size(); ++i) {
            std::string s = std::holds_alternative<double>(row[i])
                                ? [&] {
                                      std::ostringstream o;
                                      o << std::setprecision(10) << std::get<double>(row[i]);
                                      return o.str();
                                  }()
                                : cell_text(row[i]);
            width[i] = std::max(width[i], s.size());
            line.push_back(std::move(s));
        }
        text.push_back(std::move(line));
    }
    for (std::size_t i = 0; i < t.columns.size(); ++i) {
        os << (i ? "  " : "") << std::setw(static_cast<int>(width[i])) << t.columns[i];
    }
    os << '\n';
    for (const auto &line : text) {
        for (std::size_t i = 0; i < line.size(); ++i) {
            os << (i ? "  " : "") << std::setw(static_cast<int>(width[i])) << line[i];
        }
        os << '\n';
    }
}

//=========================================================================
// Sweeps
//=========================================================================

/// One swept variable over a linear/log range or an explicit list.
struct SweepSpec {
    std::string variable;
    std::string range;
    std::string values;
    bool log_spaced = false;

    [[nodiscard]] bool active() const { return !variable.empty(); }
};

inline double parse_number(const std::string &s) {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) {
        throw DomainError("not a number: '" + s + "'");
    }
    return v;
}

inline std::vector<double> sweep_points(const SweepSpec &spec) {
    std::vector<double> points;
    if (!spec.values.empty()) {
        std::stringstream ss(spec.values);
        std::string item;
        while (std::getline(ss, item, ',')) {
            points.push_back(parse_number(item));
        }
    } else {
        std::stringstream ss(spec.range);
        std::string a, b, c;
        if (!std::getline(ss, a, ':') || !std::getline(ss, b, ':') || !std::getline(ss, c)) {
            throw DomainError("--range expects start:stop:steps");
        }
        const double start = parse_number(a);
        const double stop = parse_number(b);
        const auto steps = static_cast<int>(parse_number(c));
        if (steps < 1) {
            throw DomainError("--range needs at least one step");
        }
        if (spec.log_spaced && (start <= 0.0 || stop <= 0.0)) {
            throw DomainError("--log requires a positive range");
        }
        for (int i = 0; i < steps; ++i) {
            const double f = steps == 1 ? 0.0 : static_cast<double>(i) / (steps - 1);
            points.push_back(spec.log_spaced
                                 ? std::exp(std::log(start) + f * (std::log(stop) - std::log(start)))
                                 : start + f * (stop - start));
        }
    }
    if (points.empty()) {
        throw DomainError("sweep range is empty");
    }
    return points;
}

/// Integral count from a double flag (accepts 1e6 style input).
inline std::uint64_t to_count(double v, const char *name) {
    if (!(v >= 0.0) || v != std::floor(v) || v > 9.0e18) {
        throw DomainError(std::string(name) + " must be a nonnegative integer");
    }
    return static_cast<std::uint64_t>(v);
}

struct OutputOptions {
    std::string format = "table";
    std::string path;
    SweepSpec sweep;
};

inline void add_output_options(CLI::App *cmd, OutputOptions &opt,
                               const std::vector<std::string> &sweepable) {
    cmd->add_option("--format", opt.format, "table, csv or json")
        ->check(CLI::IsMember({"table", "csv", "json"}));
    cmd->add_option("--output,-o", opt.path, "write to file instead of stdout");
    if (!sweepable.empty()) {
        cmd->add_option("--sweep", opt.sweep.variable, "variable to sweep")
            ->check(CLI::IsMember(sweepable));
        cmd->add_option("--range", opt.sweep.range, "start:stop:steps");
        cmd->add_option("--values", opt.sweep.values, "comma-separated list");
        cmd->add_flag("--log", opt.sweep.log_spaced, "log-spaced range");
    }
}

inline void emit(const Table &t, const OutputOptions &opt, std::ostream &out) {
    std::ofstream file;
    std::ostream *os = &out;
    if (!opt.path.empty()) {
        file.open(opt.path, std::ios::binary);
        if (!file) {
            throw DomainError("cannot open output file " + opt.path);
        }
        os = &file;
    }
    if (opt.format == "csv") {
        write_csv(t, *os);
    } else if (opt.format == "json") {
        write_json(t, *os);
    } else {
        write_table(t, *os);
    }
}

/// Values of the swept variable, or the single fixed value.
inline std::vector<double> points_for(const OutputOptions &opt, const std::string &name,
                                      double fixed) {
    if (opt.sweep.active() && opt.sweep.variable == name) {
        return sweep_points(opt.sweep);
    }
    return {fixed};
}

inline void validate_sweep(const OutputOptions &opt) {
    if (opt.sweep.active() && opt.sweep.range.empty() && opt.sweep.values.empty()) {
        throw DomainError("--sweep needs --range or --values");
    }
}

//=========================================================================
// Subcommand rows (also used by tests to recompute CSV output)
//=========================================================================

inline std::vector<Cell> capacity_row(double e, std::uint64_t k, double v, bool bits) {
    const double scale = bits ? 1.0 / std::numbers::ln2 : 1.0;
    const PeriodConfig cfg(EnergyBudget(e), k, v);
    const double expansion = e > 0.0 ? period_capacity_expansion(cfg) * scale
                                     : std::numeric_limits<double>::quiet_NaN();
    return {e,
            static_cast<std::int64_t>(k),
            v,
            holevo_capacity(EnergyBudget(e)) * scale,
            period_capacity(cfg) * scale,
            expansion,
            gaussian_period_capacity(cfg) * scale,
            gaussian_period_limit(cfg) * scale};
}

inline const std::vector<std::string> kCapacityColumns = {
    "e", "k", "v", "holevo_capacity", "period_capacity", "period_expansion",
    "gaussian_period_capacity", "gaussian_limit"};

inline std::vector<Cell> loglaw_row(double epsilon, double e) {
    const LogLawResult r = log_capacity(epsilon, EnergyBudget(e));
    Cell m = r.m_star ? Cell(static_cast<std::int64_t>(*r.m_star)) : Cell(std::string("none"));
    return {epsilon, e, m, r.cdf_at_m, r.cdf_at_m_plus_1};
}

inline std::vector<Cell> min_energy_row(std::uint64_t m, double epsilon) {
    const double e = min_energy(m, epsilon).value();
    return {static_cast<std::int64_t>(m), epsilon, e, poisson_cdf(EnergyBudget(e), m)};
}

struct BoundRow {
    std::vector<Cell> cells;
    bool oracle_ok = true;
};

inline BoundRow bound_row(double e, std::uint64_t m, std::optional<double> rate,
                          bool oracle) {
    const EnergyBudget budget(e);
    const double r = rate.value_or(std::log(static_cast<double>(m)));
    const auto ens = SymmetricEnsemble::from_energy(budget, m);
    BoundRow row;
    row.cells = {e,
                 static_cast<std::int64_t>(m),
                 r,
                 error_lower_bound(budget, m),
                 covariant_success(ens),
                 asymptotic_error(budget, r, RateDominant{}),
                 asymptotic_error(budget, r, Balanced{e - r}),
                 asymptotic_error(budget, r, EnergyDominant{})};
    if (oracle) {
        if (m < 2 || m > 256) {
            throw DomainError("--oracle needs 2 <= M <= 256");
        }
        const double srm = srm_success_oracle(ens);
        const double gap = std::abs(srm - covariant_success(ens));
        row.cells.push_back(srm);
        row.cells.push_back(gap);
        double residual = std::numeric_limits<double>::quiet_NaN();
        if (m <= 64) {
            const PovmReport povm = explicit_povm_check(ens);
            residual = povm.completeness_residual;
            row.oracle_ok = residual <= 1e-10 &&
                            std::abs(povm.success_probability - covariant_success(ens)) <= 1e-10;
        }
        row.cells.push_back(residual);
        row.oracle_ok = row.oracle_ok && gap <= 1e-10;
    }
    return row;
}

inline std::vector<std::string> bound_columns(bool oracle) {
    std::vector<std::string> cols = {"e", "m", "r", "error_lower_bound", "covariant_success",
                                     "rate_dominant", "balanced", "energy_dominant"};
    if (oracle) {
        cols.insert(cols.end(), {"srm_success", "oracle_gap", "povm_residual"});
    }
    return cols;
}

inline RadialMixture parse_atoms(const std::string &spec, double e) {
    if (spec.empty()) {
        return RadialMixture::delta(EnergyBudget(e));
    }
    std::vector<RadialAtom> atoms;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto colon = item.find(':');
        if (colon == std::string::npos) {
            throw DomainError("--atoms expects r:q[,r:q...]");
        }
        atoms.push_back({parse_number(item.substr(0, colon)),
                         parse_number(item.substr(colon + 1))});
    }
    return {std::move(atoms), EnergyBudget(e)};
}

struct SpectrumRow {
    std::vector<Cell> cells;
    bool checks_ok = true;
};

inline SpectrumRow spectrum_row(double e, std::uint64_t modes, double c,
                                const std::string &atoms, double tol) {
    const RadialMixture mix = parse_atoms(atoms, e);
    SpectrumRow row;
    const double cdf = spectral_cdf(c, modes, mix, tol);
    const double head = c < 0.0 ? 0.0
                                : poisson_cdf(EnergyBudget(e), static_cast<std::uint64_t>(std::floor(c)));
    row.cells = {e, static_cast<std::int64_t>(modes), c, cdf, head};
    if (c > 0.0) {
        const BoundReport upper = upper_bound_check(c, modes, mix);
        row.cells.insert(row.cells.end(), {upper.lhs, upper.rhs, upper.holds});
        row.checks_ok = upper.holds;
        if (std::log(static_cast<double>(modes)) >= e / c) {
            const LowerBoundReport lower = lower_bound_check(c, modes, mix);
            row.cells.insert(row.cells.end(),
                             {true, lower.head_sum - lower.spectral, lower.deficit_cap, lower.holds});
            row.checks_ok = row.checks_ok && lower.holds;
        } else {
            const double nan = std::numeric_limits<double>::quiet_NaN();
            row.cells.insert(row.cells.end(), {false, nan, nan, std::string("n/a")});
        }
    } else {
        const double nan = std::numeric_limits<double>::quiet_NaN();
        row.cells.insert(row.cells.end(), {nan, nan, std::string("n/a"), false, nan, nan,
                                           std::string("n/a")});
    }
    const SandwichReport sandwich = eigenvalue_sandwich_check(modes, mix, tol);
    row.cells.insert(row.cells.end(), {sandwich.holds, sandwich.worst_margin});
    return row;
}

inline const std::vector<std::string> kSpectrumColumns = {
    "e", "n_modes", "c", "spectral_cdf", "poisson_cdf_floor_c", "upper_lhs", "upper_rhs",
    "upper_holds", "lower_applicable", "lower_deficit", "lower_cap", "lower_holds",
    "sandwich_holds", "sandwich_worst_margin"};

struct PpmRow {
    std::vector<Cell> cells;
    bool consistent = true;
};

inline PpmRow ppm_row(double e, std::uint64_t slots, std::uint64_t trials, std::uint64_t seed,
                      unsigned shards) {
    const PpmCode code(slots, EnergyBudget(e));
    const SimulationReport sim = simulate(code, trials, seed, shards);
    PpmRow row;
    row.cells = {e,
                 static_cast<std::int64_t>(slots),
                 exact_error(code),
                 sim.empirical_error,
                 sim.ci95.lo,
                 sim.ci95.hi,
                 static_cast<std::int64_t>(sim.errors),
                 static_cast<std::int64_t>(sim.trials)};
    if (slots >= 2) {
        const ConsistencyReport cons = consistency_with_bound(code);
        row.cells.insert(row.cells.end(), {cons.lower_bound, cons.holds});
        row.consistent = cons.holds;
    } else {
        row.cells.insert(row.cells.end(),
                         {std::numeric_limits<double>::quiet_NaN(), std::string("n/a")});
    }
    return row;
}

inline const std::vector<std::string> kPpmColumns = {
    "e", "n_slots", "exact_error", "empirical_error", "ci95_lo", "ci95_hi",
    "errors", "trials", "lower_bound", "consistent"};

inline nlohmann::json counterexample_json(const Counterexample &c) {
    nlohmann::json states = nlohmann::json::array();
    for (const auto &psi : c.ensemble.states()) {
        nlohmann::json v = nlohmann::json::array();
        for (Eigen::Index i = 0; i < psi.size(); ++i) {
            v.push_back({psi(i).real(), psi(i).imag()});
        }
        states.push_back(std::move(v));
    }
    return {{"seed", c.seed},         {"instance", c.instance}, {"check", c.check},
            {"state_index", c.state_index}, {"s", c.level},     {"t_prime", c.test},
            {"observed", c.observed}, {"limit", c.limit},       {"prior", c.ensemble.prior()},
            {"states", states}};
}

//=========================================================================
// Entry point
//=========================================================================

inline std::string join_params(const std::vector<double> &v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        s += (i ? "," : "") + format_double(v[i]);
    }
    return s;
}

inline int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
    CLI::App app{"photon_budget: energy-constrained coherent-state channel numerics"};
    app.require_subcommand(1);

    // capacity
    OutputOptions cap_out;
    double cap_e = 1.0, cap_k = 1.0, cap_v = 1.0;
    bool cap_bits = false;
    auto *cap = app.add_subcommand("capacity", "per-pulse, per-period and Gaussian capacities");
    cap->add_option("--E", cap_e, "mean photon number per period");
    cap->add_option("--K", cap_k, "pulses per period");
    cap->add_option("--V", cap_v, "Gaussian noise variance");
    cap->add_flag("--bits", cap_bits, "report capacities in bits");
    add_output_options(cap, cap_out, {"E", "K"});

    // loglaw
    OutputOptions law_out;
    double law_eps = 0.5, law_e = 1.0;
    std::optional<double> law_m;
    auto *law = app.add_subcommand("loglaw", "logarithmic-order capacity staircase and min energy");
    law->add_option("--epsilon", law_eps, "tolerated error probability");
    law->add_option("--E", law_e, "mean photon number per codeword");
    law->add_option("--m", law_m, "target staircase level; switches to min-energy mode");
    add_output_options(law, law_out, {"E", "epsilon"});

    // bound
    OutputOptions bnd_out;
    double bnd_e = 1.0;
    std::optional<double> bnd_m, bnd_r;
    bool bnd_oracle = false;
    auto *bnd = app.add_subcommand("bound", "covariant error lower bound and regime approximations");
    bnd->add_option("--E", bnd_e, "mean photon number per codeword");
    auto *m_opt = bnd->add_option("--M", bnd_m, "number of messages");
    bnd->add_option("--R", bnd_r, "rate in nats; M = ceil(e^R)")->excludes(m_opt);
    bnd->add_flag("--oracle", bnd_oracle, "cross-check with the square-root measurement");
    add_output_options(bnd, bnd_out, {"E", "M"});

    // spectrum
    OutputOptions spc_out;
    double spc_e = 1.0, spc_n = 10.0, spc_c = 1.5, spc_tol = kDefaultSpectralTolerance;
    std::string spc_atoms;
    bool spc_blocks = false;
    auto *spc = app.add_subcommand("spectrum", "block spectrum, spectral CDF and its bounds");
    spc->add_option("--E", spc_e, "energy budget");
    spc->add_option("--N", spc_n, "number of modes");
    spc->add_option("--c", spc_c, "level (non-integer)");
    spc->add_option("--atoms", spc_atoms, "radial atoms r:q,... (default: point mass at sqrt(E))");
    spc->add_option("--tol", spc_tol, "truncation tolerance");
    spc->add_flag("--blocks", spc_blocks, "print the block table instead");
    add_output_options(spc, spc_out, {"E", "N", "c"});

    // infospec-test
    PropertySweepConfig sweep_cfg;
    std::string sweep_dump = "counterexamples.json";
    auto *inf = app.add_subcommand("infospec-test", "hypothesis-testing inequality sweeps");
    inf->add_option("--seed", sweep_cfg.seed, "base seed");
    inf->add_option("--instances", sweep_cfg.instances, "number of random ensembles");
    inf->add_option("--min-dim", sweep_cfg.min_dim, "smallest Hilbert-space dimension");
    inf->add_option("--max-dim", sweep_cfg.max_dim, "largest Hilbert-space dimension");
    inf->add_option("--tests", sweep_cfg.random_tests, "random effects per instance");
    inf->add_option("--dump", sweep_dump, "counterexample file written on failure");

    // ppm
    OutputOptions ppm_out;
    double ppm_e = 1.0, ppm_n = 16.0, ppm_trials = 1e6;
    std::uint64_t ppm_seed = 1;
    unsigned ppm_shards = kDefaultShards;
    auto *ppm = app.add_subcommand("ppm", "pulse-position code: exact and Monte-Carlo error");
    ppm->add_option("--E", ppm_e, "pulse mean photon number");
    ppm->add_option("--N", ppm_n, "slots (= messages)");
    ppm->add_option("--trials", ppm_trials, "Monte-Carlo trials");
    ppm->add_option("--seed", ppm_seed, "RNG seed");
    ppm->add_option("--shards", ppm_shards, "independent RNG streams");
    add_output_options(ppm, ppm_out, {"E", "N"});

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp &e) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError &e) {
        err << "error: " << e.what() << "\n" << app.help();
        return kUsage;
    }

    try {
        if (*cap) {
            validate_sweep(cap_out);
            Table t;
            t.columns = kCapacityColumns;
            t.params = {{"E", format_double(cap_e)}, {"K", format_double(cap_k)},
                        {"V", format_double(cap_v)}, {"unit", cap_bits ? "bits" : "nats"}};
            t.provenance = {"photon_budget capacity",
                            "holevo_capacity = (E+1)ln(E+1) - E ln E",
                            "period_capacity = K*C(E/K); period_expansion = E ln K + E - E ln E + E^2/(2K)",
                            "gaussian_period_capacity = (K/2) ln(1 + E/(K V)); gaussian_limit = E/(2V)",
                            std::string("unit: ") + (cap_bits ? "bits" : "nats")};
            for (double e : points_for(cap_out, "E", cap_e)) {
                for (double k : points_for(cap_out, "K", cap_k)) {
                    t.rows.push_back(capacity_row(e, to_count(std::round(k), "K"), cap_v, cap_bits));
                }
            }
            emit(t, cap_out, out);
            return kOk;
        }
        if (*law) {
            validate_sweep(law_out);
            Table t;
            if (law_m) {
                const std::uint64_t m = to_count(*law_m, "m");
                t.columns = {"m", "epsilon", "min_energy", "cdf_at_min_energy"};
                t.params = {{"m", std::to_string(m)}, {"epsilon", format_double(law_eps)}};
                t.provenance = {"photon_budget loglaw min-energy",
                                "min_energy = smallest E with P(Poisson(E) <= m) <= epsilon"};
                for (double eps : points_for(law_out, "epsilon", law_eps)) {
                    t.rows.push_back(min_energy_row(m, eps));
                }
            } else {
                t.columns = {"epsilon", "e", "m_star", "cdf_at_m", "cdf_at_m_plus_1"};
                t.params = {{"epsilon", format_double(law_eps)}, {"E", format_double(law_e)}};
                t.provenance = {"photon_budget loglaw",
                                "m_star = max{m >= 0 : sum_{n<=m} e^-E E^n/n! <= epsilon}; none if empty"};
                for (double eps : points_for(law_out, "epsilon", law_eps)) {
                    for (double e : points_for(law_out, "E", law_e)) {
                        t.rows.push_back(loglaw_row(eps, e));
                    }
                }
            }
            emit(t, law_out, out);
            return kOk;
        }
        if (*bnd) {
            validate_sweep(bnd_out);
            const double m_fixed =
                bnd_r ? static_cast<double>(messages_for_rate(*bnd_r)) : bnd_m.value_or(2.0);
            Table t;
            t.columns = bound_columns(bnd_oracle);
            t.params = {{"E", format_double(bnd_e)}, {"M", format_double(m_fixed)}};
            if (bnd_r) {
                t.params["R"] = format_double(*bnd_r);
            }
            t.provenance = {"photon_budget bound",
                            "error_lower_bound = 1 - ((1/M)sqrt(1+(M-1)e^-E) + (1-1/M)sqrt(1-e^-E))^2",
                            "regimes use R = ln M unless --R is given; balanced uses A = E - R"};
            bool ok = true;
            for (double e : points_for(bnd_out, "E", bnd_e)) {
                for (double m : points_for(bnd_out, "M", m_fixed)) {
                    const std::uint64_t mm = to_count(std::round(m), "M");
                    const bool swept_m = bnd_out.sweep.active() && bnd_out.sweep.variable == "M";
                    BoundRow row = bound_row(e, mm, swept_m ? std::nullopt : bnd_r, bnd_oracle);
                    ok = ok && row.oracle_ok;
                    t.rows.push_back(std::move(row.cells));
                }
            }
            emit(t, bnd_out, out);
            if (!ok) {
                err << "oracle cross-check failed (gap or POVM residual above 1e-10)\n";
                return kCheckFailed;
            }
            return kOk;
        }
        if (*spc) {
            validate_sweep(spc_out);
            auto nudge = [&](double c) {
                if (c == std::floor(c)) {
                    err << "warning: c = " << format_double(c)
                        << " is an integer; using c + 1e-9\n";
                    return c + 1e-9;
                }
                return c;
            };
            const std::uint64_t modes_fixed = to_count(spc_n, "N");
            Table t;
            t.params = {{"E", format_double(spc_e)}, {"N", std::to_string(modes_fixed)},
                        {"c", format_double(spc_c)}, {"tol", format_double(spc_tol)},
                        {"atoms", spc_atoms.empty() ? "delta" : spc_atoms}};
            if (spc_blocks) {
                const RadialMixture mix = parse_atoms(spc_atoms, spc_e);
                t.columns = {"n", "weight", "log_eigenvalue", "log_multiplicity", "level"};
                t.provenance = {"photon_budget spectrum blocks",
                                "lambda_n = w_n / C(N+n-1, N-1); level = -ln(lambda_n)/ln N"};
                const double log_n = std::log(static_cast<double>(modes_fixed));
                for (const auto &b : spectral_blocks(modes_fixed, mix, spc_tol)) {
                    t.rows.push_back({static_cast<std::int64_t>(b.n), b.weight,
                                      b.log_eigenvalue.value(), b.log_multiplicity.value(),
                                      -b.log_eigenvalue.value() / log_n});
                }
                emit(t, spc_out, out);
                return kOk;
            }
            t.columns = kSpectrumColumns;
            t.provenance = {"photon_budget spectrum",
                            "spectral_cdf = sum of w_n over blocks with -ln(lambda_n)/ln N <= c",
                            "upper: spectral_cdf <= sum_{n<=floor(c)} w_n",
                            "lower (N >= e^(E/c)): head_sum - spectral_cdf <= max_n 1 - exp(-L_n(N))",
                            "sandwich: lambda_n <= N^-n for n >= 1"};
            bool ok = true;
            for (double e : points_for(spc_out, "E", spc_e)) {
                for (double n : points_for(spc_out, "N", static_cast<double>(modes_fixed))) {
                    for (double c : points_for(spc_out, "c", spc_c)) {
                        SpectrumRow row = spectrum_row(e, to_count(std::round(n), "N"), nudge(c),
                                                       spc_atoms, spc_tol);
                        ok = ok && row.checks_ok;
                        t.rows.push_back(std::move(row.cells));
                    }
                }
            }
            emit(t, spc_out, out);
            if (!ok) {
                err << "spectral bound check failed\n";
                return kCheckFailed;
            }
            return kOk;
        }
        if (*inf) {
            const PropertySweepReport report = run_property_sweep(sweep_cfg);
            out << "instances: " << report.instances << "\n"
                << "checks:    " << report.checks << "\n"
                << "failures:  " << report.failures.size() << "\n";
            if (!report.passed()) {
                nlohmann::json dump = nlohmann::json::array();
                for (const auto &c : report.failures) {
                    dump.push_back(counterexample_json(c));
                }
                std::ofstream file(sweep_dump, std::ios::binary);
                file << dump.dump(2) << '\n';
                err << "counterexamples written to " << sweep_dump << "\n";
                return kCheckFailed;
            }
            return kOk;
        }
        if (*ppm) {
            validate_sweep(ppm_out);
            const std::uint64_t trials = to_count(ppm_trials, "trials");
            Table t;
            t.columns = kPpmColumns;
            t.params = {{"E", format_double(ppm_e)}, {"N", format_double(ppm_n)},
                        {"trials", std::to_string(trials)}, {"seed", std::to_string(ppm_seed)},
                        {"shards", std::to_string(ppm_shards)}};
            t.provenance = {"photon_budget ppm",
                            "exact_error = e^-E (dark pulsed slot); ci95 = Wilson score interval",
                            "lower_bound = covariant error bound for N messages at energy E"};
            bool ok = true;
            for (double e : points_for(ppm_out, "E", ppm_e)) {
                for (double n : points_for(ppm_out, "N", ppm_n)) {
                    PpmRow row = ppm_row(e, to_count(std::round(n), "N"), trials, ppm_seed, ppm_shards);
                    ok = ok && row.consistent;
                    t.rows.push_back(std::move(row.cells));
                }
            }
            emit(t, ppm_out, out);
            if (!ok) {
                err << "achieved error fell below the lower bound\n";
                return kCheckFailed;
            }
            return kOk;
        }
    } catch (const std::exception &e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    }
    return kUsage;
}

} // namespace photon_budget::cli
