// Command-line front end: loads states from JSON, runs the analyses, and
// emits CSV/JSON artifacts. All numeric output is produced by the library
// calls; this file only parses flags and formats rows.

#include <cmath>
#include <complex>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "grover/algebraic.hpp"
#include "grover/averaging.hpp"
#include "grover/io.hpp"
#include "grover/mixed.hpp"
#include "grover/special_cases.hpp"
#include "grover/state.hpp"
#include "grover/statevector.hpp"
#include "grover/subsets.hpp"

namespace {

using grover::Index;
using grover::MarkedSet;
using State = grover::PureState<double>;
using Json = grover::io::json;

struct CommonOptions {
    std::string state_path;
    std::vector<Index> marked;
    Index r = 0;
    std::uint64_t marked_seed = 0;
    bool has_marked_seed = false;
    Index t_max = 0;
    Index samples = 0;
    std::uint64_t seed = 0;
    std::string output;
    std::string format = "csv";
    bool check = false;
    double p_threshold = 1e-12;
    double state_threshold = 1e-10;
    double epsilon = 0.0;
    int n_alice = 0;
    int k_bob = 0;
    int n = 0;
};

grover::io::Format parse_format(const std::string& format) {
    if (format == "csv") return grover::io::Format::csv;
    if (format == "json") return grover::io::Format::json;
    throw grover::ParseError("--format must be csv or json");
}

/// Pick the marked set from exactly one of --marked / (--r, --marked-seed).
MarkedSet resolve_marked(const CommonOptions& opt, int num_qubits) {
    const bool has_explicit = !opt.marked.empty();
    const bool has_sampled = opt.r > 0 || opt.has_marked_seed;
    if (has_explicit == has_sampled) {
        throw grover::ParseError(
            "exactly one of --marked or (--r, --marked-seed) must be given");
    }
    if (has_explicit) return MarkedSet(num_qubits, opt.marked);
    if (opt.r <= 0) throw grover::ParseError("--r must be >= 1");
    if (!opt.has_marked_seed) throw grover::ParseError("--marked-seed is required with --r");
    return MarkedSet(num_qubits,
                     grover::sample_subset(grover::dimension(num_qubits), opt.r, opt.marked_seed));
}

/// Output sink: --output path or stdout.
class Sink {
  public:
    explicit Sink(const std::string& path) {
        if (!path.empty()) {
            file_.open(path, std::ios::binary);
            if (!file_) throw grover::IoFailure("cannot open \"" + path + "\" for writing");
        }
    }
    std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }
    void finish() {
        stream().flush();
        if (!stream()) throw grover::IoFailure("failed to write output");
    }

  private:
    std::ofstream file_;
};

State load_state(const std::string& path) {
    if (path.empty()) throw grover::ParseError("--state is required");
    return grover::io::state_from_json(grover::io::load_json_file(path));
}

int run_simulate(const CommonOptions& opt) {
    const State state = load_state(opt.state_path);
    const MarkedSet marked = resolve_marked(opt, state.num_qubits());
    const auto trace = grover::trace_run(state, marked, opt.t_max);
    Sink sink(opt.output);
    grover::io::emit_trace(trace, parse_format(opt.format), sink.stream());
    sink.finish();
    return 0;
}

int run_closed_form(const CommonOptions& opt) {
    const State state = load_state(opt.state_path);
    const MarkedSet marked = resolve_marked(opt, state.num_qubits());
    const auto stats = grover::partition_stats(state, marked);
    const double omega = grover::rotation_angle<double>(stats.n_total, stats.r);
    const auto [p_min, p_max] = grover::probability_bounds(stats);

    grover::ProbabilityTrace<double> trace;
    trace.entries.reserve(static_cast<std::size_t>(opt.t_max) + 1);
    for (Index t = 0; t <= opt.t_max; ++t) {
        const auto [kbar, lbar] = grover::mean_amplitudes(stats, omega, t);
        trace.entries.push_back(
            {t, grover::success_probability_closed(stats, omega, t), p_min, p_max, kbar, lbar});
    }
    Sink sink(opt.output);
    grover::io::emit_trace(trace, parse_format(opt.format), sink.stream());
    sink.finish();
    return 0;
}

int run_compare(const CommonOptions& opt) {
    const State state = load_state(opt.state_path);
    const MarkedSet marked = resolve_marked(opt, state.num_qubits());
    const auto stats = grover::partition_stats(state, marked);
    const double omega = grover::rotation_angle<double>(stats.n_total, stats.r);
    const auto format = parse_format(opt.format);

    bool violated = false;
    Json rows = Json::array();
    Sink sink(opt.output);
    std::ostream& out = sink.stream();
    if (format == grover::io::Format::csv) {
        out << "t,p_sim,p_closed,p_residual,state_residual\n";
    }

    State current = state;
    for (Index t = 0; t <= opt.t_max; ++t) {
        if (t > 0) current = grover::grover_step(current, marked);
        const double p_sim = grover::success_probability(current, marked);
        const double p_closed = grover::success_probability_closed(stats, omega, t);
        const State rebuilt = grover::reconstruct_state(state, marked, t);
        const double p_residual = std::abs(p_sim - p_closed);
        const double state_residual =
            (current.amplitudes() - rebuilt.amplitudes()).template lpNorm<Eigen::Infinity>();
        violated = violated || p_residual > opt.p_threshold || state_residual > opt.state_threshold;

        if (format == grover::io::Format::csv) {
            out << t << ',' << grover::io::format_real(p_sim) << ','
                << grover::io::format_real(p_closed) << ','
                << grover::io::format_real(p_residual) << ','
                << grover::io::format_real(state_residual) << '\n';
        } else {
            rows.push_back({{"t", t},
                            {"p_sim", p_sim},
                            {"p_closed", p_closed},
                            {"p_residual", p_residual},
                            {"state_residual", state_residual}});
        }
    }
    if (format == grover::io::Format::json) out << rows.dump(2) << '\n';
    sink.finish();

    if (opt.check && violated) {
        std::cerr << "check failed: cross-engine residual above threshold\n";
        return 2;
    }
    return 0;
}

int run_average(const CommonOptions& opt) {
    const State state = load_state(opt.state_path);
    if (opt.r <= 0) throw grover::ParseError("--r is required");
    const bool monte_carlo = opt.samples > 0;

    Json entries = Json::array();
    Sink sink(opt.output);
    std::ostream& out = sink.stream();
    const auto format = parse_format(opt.format);
    if (format == grover::io::Format::csv) out << "t,mean,std_error,closed\n";

    Index total_samples = 0;
    for (Index t = 0; t <= opt.t_max; ++t) {
        const auto estimate = monte_carlo
                                  ? grover::average_success_mc(state, opt.r, t, opt.samples, opt.seed)
                                  : grover::average_success_exact(state, opt.r, t);
        const double closed = grover::average_success_closed(state, opt.r, t);
        total_samples = estimate.samples;
        if (format == grover::io::Format::csv) {
            out << t << ',' << grover::io::format_real(estimate.value) << ','
                << grover::io::format_real(estimate.std_error) << ','
                << grover::io::format_real(closed) << '\n';
        } else {
            entries.push_back({{"t", t},
                               {"mean", estimate.value},
                               {"std_error", estimate.std_error},
                               {"closed", closed}});
        }
    }
    if (format == grover::io::Format::json) {
        const Json doc = {{"r", opt.r},
                          {"method", monte_carlo ? "monte_carlo" : "enumeration"},
                          {"samples", total_samples},
                          {"entries", entries}};
        out << doc.dump(2) << '\n';
    }
    sink.finish();
    return 0;
}

int run_mixed(const CommonOptions& opt) {
    if (opt.state_path.empty()) throw grover::ParseError("--state is required");
    const auto ens = grover::io::ensemble_from_json(grover::io::load_json_file(opt.state_path));
    const MarkedSet marked = resolve_marked(opt, ens.num_qubits());

    Json rows = Json::array();
    Sink sink(opt.output);
    std::ostream& out = sink.stream();
    const auto format = parse_format(opt.format);
    if (format == grover::io::Format::csv) out << "t,p_success\n";
    for (Index t = 0; t <= opt.t_max; ++t) {
        const double p = grover::success_probability_mixed(ens, marked, t);
        if (format == grover::io::Format::csv) {
            out << t << ',' << grover::io::format_real(p) << '\n';
        } else {
            rows.push_back({{"t", t}, {"p_success", p}});
        }
    }
    if (format == grover::io::Format::json) out << rows.dump(2) << '\n';
    sink.finish();
    return 0;
}

int run_bipartite(const CommonOptions& opt) {
    if (opt.state_path.empty()) throw grover::ParseError("--state is required");
    const Json doc = grover::io::load_json_file(opt.state_path);

    std::optional<grover::BipartiteState<double>> state;
    if (doc.is_object() && doc.contains("n_alice")) {
        state = grover::io::bipartite_from_json(doc);
        if ((opt.n_alice != 0 && opt.n_alice != state->n_alice()) ||
            (opt.k_bob != 0 && opt.k_bob != state->k_bob())) {
            throw grover::ParseError("--n-alice/--k-bob disagree with the state file");
        }
    } else {
        // A plain register state split by the flags; the leading k_bob qubits
        // (most significant bits) belong to Bob, matching the Bob-major layout.
        if (opt.n_alice <= 0 || opt.k_bob <= 0) {
            throw grover::ParseError("--n-alice and --k-bob are required for a plain state file");
        }
        const State full = grover::io::state_from_json(doc);
        if (full.num_qubits() != opt.n_alice + opt.k_bob) {
            throw grover::ParseError("--n-alice + --k-bob must equal the state's qubit count");
        }
        state.emplace(opt.n_alice, opt.k_bob, full.amplitudes());
    }
    if (opt.r <= 0) throw grover::ParseError("--r is required");

    const auto report = grover::compare_partial_search(*state, opt.r);
    Sink sink(opt.output);
    std::ostream& out = sink.stream();
    if (parse_format(opt.format) == grover::io::Format::csv) {
        out << "p_ab,p_a,gap\n"
            << grover::io::format_real(report.p_ab) << ',' << grover::io::format_real(report.p_a)
            << ',' << grover::io::format_real(report.gap) << '\n';
    } else {
        const Json doc_out = {{"p_ab", report.p_ab}, {"p_a", report.p_a}, {"gap", report.gap}};
        out << doc_out.dump(2) << '\n';
    }
    sink.finish();
    return 0;
}

int run_pseudo_pure(const CommonOptions& opt) {
    const State state = load_state(opt.state_path);
    const double p_max = grover::pseudo_pure_max(opt.epsilon, state);
    Sink sink(opt.output);
    std::ostream& out = sink.stream();
    if (parse_format(opt.format) == grover::io::Format::csv) {
        out << "epsilon,p_max\n"
            << grover::io::format_real(opt.epsilon) << ',' << grover::io::format_real(p_max)
            << '\n';
    } else {
        const Json doc = {{"epsilon", opt.epsilon}, {"p_max", p_max}};
        out << doc.dump(2) << '\n';
    }
    sink.finish();
    return 0;
}

int run_classify(const CommonOptions& opt) {
    const State state = load_state(opt.state_path);
    const MarkedSet marked = resolve_marked(opt, state.num_qubits());
    const auto label = grover::classify(state, marked);
    Sink sink(opt.output);
    std::ostream& out = sink.stream();
    if (parse_format(opt.format) == grover::io::Format::csv) {
        out << "kind,c_psi_m,c_psi_u,c_eta_u,c_eta_m\n"
            << grover::to_string(label.kind) << ',' << grover::io::format_real(label.witness.c_psi_m)
            << ',' << grover::io::format_real(label.witness.c_psi_u) << ','
            << grover::io::format_real(label.witness.c_eta_u) << ','
            << grover::io::format_real(label.witness.c_eta_m) << '\n';
    } else {
        const Json doc = {{"kind", grover::to_string(label.kind)},
                          {"witness",
                           {{"c_psi_m", label.witness.c_psi_m},
                            {"c_psi_u", label.witness.c_psi_u},
                            {"c_eta_u", label.witness.c_eta_u},
                            {"c_eta_m", label.witness.c_eta_m}}}};
        out << doc.dump(2) << '\n';
    }
    sink.finish();
    return 0;
}

int run_optimal_tau(const CommonOptions& opt) {
    Index dim = 0;
    if (!opt.state_path.empty()) {
        dim = load_state(opt.state_path).size();
    } else if (opt.n > 0) {
        dim = grover::dimension(opt.n);
    } else {
        throw grover::ParseError("either --state or --n is required");
    }
    if (opt.r <= 0) throw grover::ParseError("--r is required");
    Sink sink(opt.output);
    sink.stream() << grover::optimal_iterations(dim, opt.r) << '\n';
    sink.finish();
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Grover search with arbitrary initial states: exact simulation and closed forms"};
    app.require_subcommand(1);

    CommonOptions opt;

    auto add_state = [&](CLI::App* cmd) { cmd->add_option("--state", opt.state_path, "state JSON file"); };
    auto add_marked = [&](CLI::App* cmd) {
        cmd->add_option("--marked", opt.marked, "explicit marked indices")->delimiter(',');
        cmd->add_option("--r", opt.r, "marked-set size");
        cmd->add_option("--marked-seed", opt.marked_seed, "seed for sampling the marked set")
            ->trigger_on_parse()
            ->each([&](const std::string&) { opt.has_marked_seed = true; });
    };
    auto add_tmax = [&](CLI::App* cmd) {
        cmd->add_option("--t-max", opt.t_max, "last iteration to report")
            ->check(CLI::NonNegativeNumber);
    };
    auto add_output = [&](CLI::App* cmd) {
        cmd->add_option("--output", opt.output, "output file (default: stdout)");
        cmd->add_option("--format", opt.format, "csv or json")
            ->check(CLI::IsMember({"csv", "json"}));
    };

    CLI::App* simulate = app.add_subcommand("simulate", "state-vector trace of the search");
    add_state(simulate), add_marked(simulate), add_tmax(simulate), add_output(simulate);

    CLI::App* closed = app.add_subcommand("closed-form", "closed-form trace of the search");
    add_state(closed), add_marked(closed), add_tmax(closed), add_output(closed);

    CLI::App* compare = app.add_subcommand("compare", "both engines with per-step residuals");
    add_state(compare), add_marked(compare), add_tmax(compare), add_output(compare);
    compare->add_flag("--check", opt.check, "exit 2 if a residual exceeds its threshold");
    compare->add_option("--p-threshold", opt.p_threshold, "probability residual threshold");
    compare->add_option("--state-threshold", opt.state_threshold, "state residual threshold");

    CLI::App* average = app.add_subcommand("average", "success probability averaged over marked sets");
    add_state(average), add_tmax(average), add_output(average);
    average->add_option("--r", opt.r, "marked-set size");
    average->add_option("--samples", opt.samples, "Monte Carlo samples (omit for exact enumeration)");
    average->add_option("--seed", opt.seed, "Monte Carlo seed");

    CLI::App* mixed = app.add_subcommand("mixed", "search from a mixed initial state");
    add_state(mixed), add_marked(mixed), add_tmax(mixed), add_output(mixed);

    CLI::App* bipartite = app.add_subcommand("bipartite", "joint vs partial-register search");
    add_state(bipartite), add_output(bipartite);
    bipartite->add_option("--r", opt.r, "marked-set size");
    bipartite->add_option("--n-alice", opt.n_alice, "Alice's qubit count");
    bipartite->add_option("--k-bob", opt.k_bob, "Bob's qubit count");

    CLI::App* pseudo = app.add_subcommand("pseudo-pure", "maximal success of a pseudo-pure state");
    add_state(pseudo), add_output(pseudo);
    pseudo->add_option("--epsilon", opt.epsilon, "pure-state weight in [0, 1]")->required();

    CLI::App* classify = app.add_subcommand("classify", "label the initial state's geometry");
    add_state(classify), add_marked(classify), add_output(classify);

    CLI::App* tau = app.add_subcommand("optimal-tau", "optimal number of iterations");
    add_state(tau), add_output(tau);
    tau->add_option("--n", opt.n, "qubit count (alternative to --state)");
    tau->add_option("--r", opt.r, "marked-set size");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }

    try {
        if (simulate->parsed()) return run_simulate(opt);
        if (closed->parsed()) return run_closed_form(opt);
        if (compare->parsed()) return run_compare(opt);
        if (average->parsed()) return run_average(opt);
        if (mixed->parsed()) return run_mixed(opt);
        if (bipartite->parsed()) return run_bipartite(opt);
        if (pseudo->parsed()) return run_pseudo_pure(opt);
        if (classify->parsed()) return run_classify(opt);
        if (tau->parsed()) return run_optimal_tau(opt);
    } catch (const grover::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
