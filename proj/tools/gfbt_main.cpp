// gfbt: weight spectra, ML-decoding error bounds (union/SB/TB/TSB), and
// Monte Carlo frame-error simulation for binary linear codes on BPSK-AWGN.
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <mutex>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "gfbt/bounds.hpp"
#include "gfbt/gfbt_core.hpp"
#include "gfbt/linear_code.hpp"
#include "gfbt/mc_sim.hpp"
#include "gfbt/numeric.hpp"

namespace {

struct InputOpts {
    std::string code;
    std::string gen_file;
    std::string spectrum_file;
};

struct ResolvedInput {
    std::optional<gfbt::GeneratorMatrix> generator;
    gfbt::WeightEnumerator enumerator;
    int k = 0;  // effective dimension (for the rate)
};

void add_input_flags(CLI::App* cmd, InputOpts& opts, bool allow_spectrum) {
    cmd->add_option("--code", opts.code,
                    "canned code name (hamming_7_4, ext_hamming_8_4, "
                    "hamming_15_11, golay_23_12, repetition_N, spc_N)");
    cmd->add_option("--gen-file", opts.gen_file,
                    "generator matrix file: \"k n\" header, then k rows of "
                    "0/1 characters");
    if (allow_spectrum)
        cmd->add_option("--spectrum-file", opts.spectrum_file,
                        "weight enumerator JSON file");
}

ResolvedInput load_input(const InputOpts& opts, bool need_generator) {
    const int given = !opts.code.empty() + !opts.gen_file.empty() +
                      !opts.spectrum_file.empty();
    if (given != 1)
        throw std::invalid_argument(
            "exactly one of --code / --gen-file / --spectrum-file is required");

    ResolvedInput out;
    if (!opts.spectrum_file.empty()) {
        if (need_generator)
            throw std::invalid_argument(
                "this command needs the actual code: use --code or --gen-file");
        std::ifstream in(opts.spectrum_file);
        if (!in)
            throw std::invalid_argument("cannot open " + opts.spectrum_file);
        out.enumerator = gfbt::parse_weight_enumerator_json(in);
        if (out.enumerator.k) {
            out.k = *out.enumerator.k;
        } else {
            // infer k from the enumerator total when the file omits it
            const auto total = out.enumerator.total_codewords();
            const auto codebook = total + 1;
            if ((codebook & (codebook - 1)) != 0)
                throw std::invalid_argument(
                    "spectrum file has no \"k\" and its total is not 2^k - 1; "
                    "add \"k\" to the file");
            int k = 0;
            for (auto v = codebook; v > 1; v >>= 1) ++k;
            out.k = k;
            out.enumerator.k = k;
        }
        return out;
    }

    if (!opts.code.empty())
        out.generator = gfbt::canned_code(opts.code);
    else {
        std::ifstream in(opts.gen_file);
        if (!in) throw std::invalid_argument("cannot open " + opts.gen_file);
        out.generator = gfbt::parse_generator_matrix(in);
    }
    out.enumerator = gfbt::weight_enumerator(*out.generator);
    out.k = out.generator->k();
    return out;
}

std::string fmt12(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.11e", v);
    return buf;
}

gfbt::QuadratureSpec quadrature_from_env() {
    gfbt::QuadratureSpec spec;
    if (const char* tol = std::getenv("GFBT_QUAD_TOL")) {
        char* end = nullptr;
        const double v = std::strtod(tol, &end);
        if (end == tol || !(v > 0.0))
            throw std::invalid_argument("GFBT_QUAD_TOL must be a positive number");
        spec.relative_tolerance = v;
    }
    return spec;
}

int default_workers() {
    const unsigned hw = std::thread::hardware_concurrency();
    return hw ? static_cast<int>(hw) : 1;
}

// ---------------------------------------------------------------- spectrum

struct SpectrumArgs {
    InputOpts input;
};

int run_spectrum(const SpectrumArgs& args) {
    const auto in = load_input(args.input, false);
    std::cout << gfbt::weight_enumerator_to_json(in.enumerator) << "\n";
    return 0;
}

// ------------------------------------------------------------------- sweep

struct SweepArgs {
    InputOpts input;
    double start = 0.0;
    double stop = 8.0;
    double step = 1.0;
    std::string bounds = "union,sb,tb,tsb";
    std::uint64_t trials = 0;
    std::uint64_t seed = 1;
    std::string format = "csv";
    bool two_term = false;
    int workers = 0;
};

struct SweepRow {
    double ebn0_db = 0.0;
    double sigma = 0.0;
    std::optional<double> union_v, sb, sb_r1, tb, tb_zstar, tsb, tsb_r1;
    std::optional<double> mc_fer, mc_ci;
};

int run_sweep(const SweepArgs& args) {
    if (!(args.step > 0.0) || args.start > args.stop)
        throw std::invalid_argument("sweep: need start <= stop and step > 0");

    std::set<std::string> selected;
    {
        std::stringstream ss(args.bounds);
        std::string item;
        while (std::getline(ss, item, ',')) {
            if (item != "union" && item != "sb" && item != "tb" && item != "tsb")
                throw std::invalid_argument("sweep: unknown bound '" + item + "'");
            selected.insert(item);
        }
        if (selected.empty())
            throw std::invalid_argument("sweep: at least one bound required");
    }
    if (args.format != "csv" && args.format != "json")
        throw std::invalid_argument("sweep: format must be csv or json");

    const auto in =
        load_input(args.input, /*need_generator=*/args.trials > 0);
    const auto& w = in.enumerator;
    const double rate = static_cast<double>(in.k) / w.n;
    const auto spec = quadrature_from_env();
    const auto form =
        args.two_term ? gfbt::BoundForm::two_term : gfbt::BoundForm::min_form;

    std::vector<double> grid;
    for (int i = 0;; ++i) {
        const double db = args.start + i * args.step;
        if (db > args.stop + 1e-9) break;
        grid.push_back(db);
    }

    std::vector<SweepRow> rows(grid.size());
    std::mutex warn_mutex;
    std::set<std::string> warned;
    auto warn_once = [&](const std::string& bound, const char* what) {
        std::lock_guard<std::mutex> lock(warn_mutex);
        if (warned.insert(bound).second)
            std::cerr << "warning: " << bound
                      << " unavailable for this input: " << what << "\n";
    };

    // bounds across the grid, evaluated by a worker pool; output order is
    // the grid order regardless of completion order
    std::atomic<std::size_t> next{0};
    std::atomic<bool> aborted{false};
    std::string abort_reason;
    std::mutex abort_mutex;
    auto body = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= grid.size() || aborted.load()) return;
            SweepRow& row = rows[i];
            row.ebn0_db = grid[i];
            try {
                const auto ch =
                    gfbt::ChannelParams::from_ebn0_db(grid[i], w.n, rate);
                row.sigma = ch.sigma;
                if (selected.count("union")) {
                    try {
                        row.union_v = gfbt::union_bound(w, ch);
                    } catch (const std::invalid_argument& e) {
                        warn_once("union", e.what());
                    }
                }
                if (selected.count("sb")) {
                    try {
                        const auto r = gfbt::sphere_bound(w, ch, form, spec);
                        row.sb = r.value;
                        row.sb_r1 = r.optimal_parameter;
                    } catch (const std::invalid_argument& e) {
                        warn_once("sb", e.what());
                    }
                }
                if (selected.count("tb")) {
                    try {
                        const auto r = gfbt::tangential_bound(w, ch, form, spec);
                        row.tb = r.value;
                        row.tb_zstar = r.optimal_parameter;
                    } catch (const std::invalid_argument& e) {
                        warn_once("tb", e.what());
                    }
                }
                if (selected.count("tsb")) {
                    try {
                        const auto r = gfbt::tangential_sphere_bound(w, ch, spec);
                        row.tsb = r.value;
                        row.tsb_r1 = gfbt::tsb_inner_radius(w, w.n);
                    } catch (const std::invalid_argument& e) {
                        warn_once("tsb", e.what());
                    }
                }
            } catch (const std::exception&) {
                std::lock_guard<std::mutex> lock(abort_mutex);
                aborted.store(true);
                try {
                    throw;
                } catch (const gfbt::NonConvergenceError& e) {
                    abort_reason = std::string("non-convergence: ") + e.what();
                } catch (const std::exception& e) {
                    abort_reason = e.what();
                }
                return;
            }
        }
    };
    {
        const int pool = std::max(
            1, std::min<int>(args.workers > 0 ? args.workers : default_workers(),
                             static_cast<int>(grid.size())));
        std::vector<std::thread> threads;
        for (int t = 0; t < pool; ++t) threads.emplace_back(body);
        for (auto& th : threads) th.join();
    }
    if (aborted.load()) {
        if (abort_reason.rfind("non-convergence", 0) == 0)
            throw gfbt::NonConvergenceError(abort_reason);
        throw std::invalid_argument(abort_reason);
    }

    // Monte Carlo pass (sequential over rows; trials parallelize inside)
    if (args.trials > 0) {
        for (std::size_t i = 0; i < grid.size(); ++i) {
            const auto est =
                gfbt::simulate_fer(*in.generator, rows[i].sigma, args.trials,
                                   args.seed, args.workers);
            rows[i].mc_fer = est.fer;
            rows[i].mc_ci = est.ci95_half_width;
        }
    }

    const bool with_mc = args.trials > 0;
    auto cell = [](const std::optional<double>& v) {
        return v ? fmt12(*v) : std::string("NA");
    };
    if (args.format == "csv") {
        std::cout << "ebn0_db,sigma,union,sb,sb_r1,tb,tb_zstar,tsb,tsb_inner_r1";
        if (with_mc) std::cout << ",mc_fer,mc_ci95";
        std::cout << "\n";
        for (const auto& row : rows) {
            std::cout << fmt12(row.ebn0_db) << ',' << fmt12(row.sigma) << ','
                      << cell(row.union_v) << ',' << cell(row.sb) << ','
                      << cell(row.sb_r1) << ',' << cell(row.tb) << ','
                      << cell(row.tb_zstar) << ',' << cell(row.tsb) << ','
                      << cell(row.tsb_r1);
            if (with_mc)
                std::cout << ',' << cell(row.mc_fer) << ',' << cell(row.mc_ci);
            std::cout << "\n";
        }
    } else {
        auto jcell = [](const std::optional<double>& v) {
            return v ? fmt12(*v) : std::string("null");
        };
        std::cout << "[\n";
        for (std::size_t i = 0; i < rows.size(); ++i) {
            const auto& row = rows[i];
            std::cout << "  {\"ebn0_db\": " << fmt12(row.ebn0_db)
                      << ", \"sigma\": " << fmt12(row.sigma)
                      << ", \"union\": " << jcell(row.union_v)
                      << ", \"sb\": " << jcell(row.sb)
                      << ", \"sb_r1\": " << jcell(row.sb_r1)
                      << ", \"tb\": " << jcell(row.tb)
                      << ", \"tb_zstar\": " << jcell(row.tb_zstar)
                      << ", \"tsb\": " << jcell(row.tsb)
                      << ", \"tsb_inner_r1\": " << jcell(row.tsb_r1);
            if (with_mc)
                std::cout << ", \"mc_fer\": " << jcell(row.mc_fer)
                          << ", \"mc_ci95\": " << jcell(row.mc_ci);
            std::cout << "}" << (i + 1 < rows.size() ? "," : "") << "\n";
        }
        std::cout << "]\n";
    }
    return 0;
}

// ---------------------------------------------------------------- simulate

struct SimulateArgs {
    InputOpts input;
    std::optional<double> sigma;
    std::optional<double> ebn0_db;
    std::uint64_t trials = 100000;
    std::uint64_t seed = 1;
    int workers = 0;
};

int run_simulate(const SimulateArgs& args) {
    if (args.sigma.has_value() == args.ebn0_db.has_value())
        throw std::invalid_argument(
            "simulate: exactly one of --sigma / --ebn0 is required");
    const auto in = load_input(args.input, true);
    double sigma;
    if (args.sigma) {
        sigma = *args.sigma;
    } else {
        const double rate = static_cast<double>(in.k) / in.generator->n();
        sigma = gfbt::ChannelParams::from_ebn0_db(*args.ebn0_db,
                                                  in.generator->n(), rate)
                    .sigma;
    }
    const auto est = gfbt::simulate_fer(*in.generator, sigma, args.trials,
                                        args.seed, args.workers);
    std::cout << "{\"fer\": " << fmt12(est.fer)
              << ", \"trials\": " << est.trials
              << ", \"errors\": " << est.errors
              << ", \"ci95\": " << fmt12(est.ci95_half_width)
              << ", \"seed\": " << est.seed << "}\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "ML-decoding error bounds (union, sphere, tangential, "
        "tangential-sphere) and Monte Carlo validation for binary linear "
        "codes over BPSK-AWGN"};
    app.require_subcommand(1);

    SpectrumArgs spectrum_args;
    auto* spectrum = app.add_subcommand(
        "spectrum", "compute a weight enumerator and print it as JSON");
    add_input_flags(spectrum, spectrum_args.input, true);

    SweepArgs sweep_args;
    auto* sweep = app.add_subcommand(
        "sweep", "tabulate bounds (and optionally simulation) over an "
                 "Eb/N0 grid");
    add_input_flags(sweep, sweep_args.input, true);
    sweep->add_option("--ebn0-start", sweep_args.start, "grid start in dB")
        ->required();
    sweep->add_option("--ebn0-stop", sweep_args.stop, "grid stop in dB")
        ->required();
    sweep->add_option("--ebn0-step", sweep_args.step, "grid step in dB")
        ->required();
    sweep->add_option("--bounds", sweep_args.bounds,
                      "comma list from union,sb,tb,tsb (default: all)");
    sweep->add_option("--trials", sweep_args.trials,
                      "Monte Carlo trials per grid point (0 disables)");
    sweep->add_option("--seed", sweep_args.seed, "simulation seed");
    sweep->add_option("--format", sweep_args.format, "csv or json");
    sweep->add_flag("--two-term", sweep_args.two_term,
                    "evaluate SB/TB through the two-term form at the optimal "
                    "parameter instead of the min-form");
    sweep->add_option("--workers", sweep_args.workers,
                      "worker threads (default: hardware)");

    SimulateArgs sim_args;
    auto* simulate = app.add_subcommand(
        "simulate", "Monte Carlo frame-error rate under brute-force ML "
                    "decoding, printed as JSON");
    add_input_flags(simulate, sim_args.input, false);
    double sigma_opt = 0.0, ebn0_opt = 0.0;
    auto* sigma_flag =
        simulate->add_option("--sigma", sigma_opt, "noise std per dimension");
    auto* ebn0_flag =
        simulate->add_option("--ebn0", ebn0_opt, "Eb/N0 in dB");
    simulate->add_option("--trials", sim_args.trials, "number of trials");
    simulate->add_option("--seed", sim_args.seed, "stream seed");
    simulate->add_option("--workers", sim_args.workers,
                         "worker threads (default: hardware)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (spectrum->parsed()) return run_spectrum(spectrum_args);
        if (sweep->parsed()) return run_sweep(sweep_args);
        if (simulate->parsed()) {
            if (sigma_flag->count()) sim_args.sigma = sigma_opt;
            if (ebn0_flag->count()) sim_args.ebn0_db = ebn0_opt;
            return run_simulate(sim_args);
        }
    } catch (const gfbt::NonConvergenceError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
