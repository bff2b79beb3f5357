// Command-line front end: each subcommand binds the library into one stage
// of the design pipeline (search, extend, lift, ladder build, simulation,
// artifact inspection) with deterministic seeding and on-disk artifacts.

#include <bit>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "raldpc/alist.hpp"
#include "raldpc/bsc.hpp"
#include "raldpc/cycles.hpp"
#include "raldpc/density_evolution.hpp"
#include "raldpc/errors.hpp"
#include "raldpc/ladder.hpp"
#include "raldpc/ldpca.hpp"
#include "raldpc/peg.hpp"
#include "raldpc/protograph.hpp"
#include "raldpc/protograph_search.hpp"
#include "raldpc/rational.hpp"
#include "raldpc/rng.hpp"
#include "raldpc/sim.hpp"
#include "raldpc/typed_matrix.hpp"
#include "raldpc/version.hpp"

namespace {

using raldpc::IoError;
using raldpc::Rational;
namespace fs = std::filesystem;

std::string read_text(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path + "' for reading");
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    out << text;
    if (!out) throw IoError("write to '" + path + "' failed");
}

// Accepts both a bare protograph file and a wrapper object that keeps the
// protograph under a "protograph" key (optimize and extend write wrappers so
// their outputs carry the seed and tool version).
raldpc::proto::Protograph read_protograph(const std::string& path) {
    const std::string text = read_text(path);
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw IoError("'" + path + "': " + e.what());
    }
    if (j.is_object() && j.contains("protograph")) {
        return raldpc::proto::from_json(j.at("protograph").dump());
    }
    return raldpc::proto::from_json(text);
}

void seed_banner(const char* command, std::uint64_t seed) {
    std::cerr << "raldpc " << raldpc::kVersion << " " << command
              << " seed=" << seed << "\n";
}

struct OptimizeArgs {
    std::size_t cn = 0;
    std::size_t vn = 0;
    raldpc::search::SearchParams params;
    std::string out;
};

void cmd_optimize(const OptimizeArgs& args) {
    seed_banner("optimize", args.params.seed);
    const auto result =
        raldpc::search::optimize_protograph(args.cn, args.vn, args.params);
    for (const auto& w : result.warnings) std::cerr << "warning: " << w << "\n";
    // One extra evaluation buys the full probe history for the report.
    const auto report = raldpc::de::threshold(result.best, args.params.de);

    nlohmann::json j;
    j["version"] = raldpc::kVersion;
    j["seed"] = args.params.seed;
    j["threshold"] = result.best_threshold;
    j["evaluations"] = result.evaluations;
    j["generation_best"] = result.generation_best;
    j["protograph"] = nlohmann::json::parse(raldpc::proto::to_json(result.best));
    j["threshold_report"] = nlohmann::json::parse(raldpc::de::to_json(report));
    write_text(args.out, j.dump(2) + "\n");

    std::cout << "best threshold " << result.best_threshold << " after "
              << result.evaluations << " evaluations\n";
    for (const auto& row : result.best.entries()) {
        const char* sep = "";
        for (int v : row) {
            std::cout << sep << v;
            sep = " ";
        }
        std::cout << "\n";
    }
    std::cout << "wrote " << args.out << "\n";
}

struct ExtendArgs {
    std::string in;
    std::size_t ze = 2;
    std::uint64_t seed = 1;
    std::string out;
};

void cmd_extend(const ExtendArgs& args) {
    seed_banner("extend", args.seed);
    const auto s = read_protograph(args.in);
    const auto extended = raldpc::proto::extend_protograph(s, args.ze, args.seed);

    nlohmann::json j;
    j["version"] = raldpc::kVersion;
    j["seed"] = args.seed;
    j["ze"] = args.ze;
    j["protograph"] = nlohmann::json::parse(raldpc::proto::to_json(extended));
    write_text(args.out, j.dump(2) + "\n");

    std::cout << s.rows() << "x" << s.cols() << " -> " << extended.rows() << "x"
              << extended.cols() << ", wrote " << args.out << "\n";
}

struct LiftArgs {
    std::string in;
    std::size_t z = 0;
    std::string method = "peg";
    std::uint64_t seed = 1;
    std::string out;
};

void cmd_lift(const LiftArgs& args) {
    seed_banner("lift", args.seed);
    const auto s = read_protograph(args.in);
    const auto lifted = args.method == "peg"
                            ? raldpc::graph::peg_lift(s, args.z, args.seed)
                            : raldpc::graph::random_lift(s, args.z, args.seed);
    raldpc::graph::save_typed(args.out, lifted, {args.method, args.seed});
    std::cout << "wrote " << args.out << ".alist (" << lifted.matrix().rows()
              << "x" << lifted.matrix().cols() << "), 4-cycles "
              << raldpc::graph::count_4cycles(lifted.matrix()) << "\n";
}

struct LadderArgs {
    std::string in;
    std::size_t ze = 1;
    std::size_t z = 0;
    std::size_t k = 4;
    std::size_t repeats = 4;
    raldpc::de::DeParams de;
    std::uint64_t seed = 1;
    std::size_t workers = 0;
    std::string out;
};

void print_anchor_table(const raldpc::ladder::CodeLadder& lad) {
    const auto rows = raldpc::sim::cycle_report(lad);
    std::cout << std::left << std::setw(10) << "rate" << std::right
              << std::setw(7) << "m" << std::setw(12) << "threshold"
              << std::setw(12) << "n4.ladder" << std::setw(14) << "n4.accum"
              << "\n";
    for (std::size_t i = 0; i < rows.size(); ++i) {
        std::ostringstream thr;
        if (i == 0) {
            thr << "-";
        } else {
            thr << std::setprecision(4) << lad.anchors()[i - 1].threshold;
        }
        std::cout << std::left << std::setw(10) << rows[i].rate.str()
                  << std::right << std::setw(7) << rows[i].m << std::setw(12)
                  << thr.str() << std::setw(12) << rows[i].ladder_n4
                  << std::setw(14) << rows[i].ldpca_n4 << "\n";
    }
}

void cmd_ladder(const LadderArgs& args) {
    seed_banner("ladder", args.seed);
    auto s = read_protograph(args.in);
    if (args.ze > 1) {
        s = raldpc::proto::extend_protograph(s, args.ze,
                                             raldpc::derive_seed(args.seed, 1));
    }
    const auto h1 =
        raldpc::graph::peg_lift(s, args.z, raldpc::derive_seed(args.seed, 2));
    const auto lad = raldpc::ladder::build_ladder(h1, s, args.k, args.repeats,
                                                 args.seed, args.de, args.workers);
    raldpc::ladder::save_ladder(args.out, lad);
    std::cout << "mother " << lad.m1() << "x" << lad.n() << ", grid "
              << lad.grid().size() << " rates down to "
              << lad.rate_at(lad.m_min()).str() << "\n";
    print_anchor_table(lad);
    std::cout << "wrote " << args.out << "\n";
}

struct SimulateArgs {
    std::string spec_path;
    std::string out;
    std::size_t workers = 0;
    bool workers_set = false;
};

void run_ber_mode(const nlohmann::json&, const std::string& text,
                  const SimulateArgs& args) {
    auto spec = raldpc::sim::spec_from_json(text);
    if (args.workers_set) spec.workers = args.workers;
    const auto points = raldpc::sim::run_experiment(spec);
    raldpc::sim::write_csv(args.out, points);
    for (const auto& pt : points) {
        std::cout << pt.code_id << " rate " << pt.rate.str() << " p " << pt.p
                  << " ber " << pt.ber << " fer " << pt.fer << " frames "
                  << pt.frames << "\n";
    }
    std::cout << "wrote " << points.size() << " points to " << args.out << "\n";
}

void run_minrate_mode(const nlohmann::json& j, const SimulateArgs& args) {
    std::vector<std::string> ladders;
    std::vector<double> p_values;
    raldpc::sim::SweepConfig config;
    bool include_ldpca = false;
    try {
        ladders = j.value("ladders", ladders);
        include_ldpca = j.value("include_ldpca", false);
        p_values = j.value("p_values", p_values);
        config.couples = j.value("couples", config.couples);
        config.seed = j.value("seed", config.seed);
        config.workers = j.value("workers", config.workers);
        if (j.contains("decoder")) {
            const auto& d = j.at("decoder");
            config.decoder.max_iterations =
                d.value("max_iterations", config.decoder.max_iterations);
            config.decoder.llr_clamp = d.value("llr_clamp", config.decoder.llr_clamp);
        }
    } catch (const nlohmann::json::exception& e) {
        throw IoError(std::string("minrate spec: ") + e.what());
    }
    if (args.workers_set) config.workers = args.workers;
    if (ladders.empty()) throw IoError("minrate spec: empty 'ladders'");
    if (p_values.empty()) throw IoError("minrate spec: empty 'p_values'");
    const std::uint64_t base_seed = config.seed;

    std::ostringstream csv;
    csv << "code_id,p,entropy,couples,never,mean_rate,seed\n";
    for (std::size_t li = 0; li < ladders.size(); ++li) {
        const auto lad = raldpc::ladder::load_ladder(ladders[li]);
        std::string label = ladders[li];
        while (!label.empty() && label.back() == '/') label.pop_back();
        raldpc::ldpca::LdpcaCode baseline(lad.mother().matrix());
        const auto grid_rates = lad.grid();
        std::vector<std::size_t> grid_ms;
        for (auto it = grid_rates.rbegin(); it != grid_rates.rend(); ++it) {
            grid_ms.push_back(lad.rate_to_m(*it));
        }
        for (double p : p_values) {
            // Ladder and baseline share the derived seed, so both sweeps see
            // the same source/side-information couples.
            config.p = p;
            config.seed = raldpc::derive_seed(raldpc::derive_seed(base_seed, li),
                                              std::bit_cast<std::uint64_t>(p));
            const auto entropy = raldpc::binary_entropy(p);
            const auto ours = raldpc::sim::min_rate_sweep(lad, config);
            csv << label << ":ladder," << p << ',' << entropy << ','
                << ours.min_m.size() << ',' << ours.never_count << ','
                << ours.mean_rate << ',' << config.seed << "\n";
            std::cout << label << ":ladder p " << p << " H(p) " << entropy
                      << " mean rate " << ours.mean_rate << " never "
                      << ours.never_count << "\n";
            if (include_ldpca) {
                const auto acc =
                    raldpc::sim::min_rate_sweep(baseline, grid_ms, config);
                csv << label << ":ldpca," << p << ',' << entropy << ','
                    << acc.min_m.size() << ',' << acc.never_count << ','
                    << acc.mean_rate << ',' << config.seed << "\n";
                std::cout << label << ":ldpca p " << p << " H(p) " << entropy
                          << " mean rate " << acc.mean_rate << " never "
                          << acc.never_count << "\n";
            }
        }
    }
    write_text(args.out, csv.str());
    std::cout << "wrote " << args.out << "\n";
}

void run_cycles_mode(const nlohmann::json& j, const SimulateArgs& args) {
    std::vector<std::string> ladders;
    try {
        ladders = j.value("ladders", ladders);
    } catch (const nlohmann::json::exception& e) {
        throw IoError(std::string("cycles spec: ") + e.what());
    }
    if (ladders.empty()) throw IoError("cycles spec: empty 'ladders'");
    std::ostringstream csv;
    csv << "code_id,rate_num,rate_den,m,ladder_n4,ldpca_n4\n";
    for (const auto& dir : ladders) {
        const auto lad = raldpc::ladder::load_ladder(dir);
        std::string label = dir;
        while (!label.empty() && label.back() == '/') label.pop_back();
        for (const auto& row : raldpc::sim::cycle_report(lad)) {
            csv << label << ',' << row.rate.num << ',' << row.rate.den << ','
                << row.m << ',' << row.ladder_n4 << ',' << row.ldpca_n4 << "\n";
        }
    }
    write_text(args.out, csv.str());
    std::cout << "wrote " << args.out << "\n";
}

void cmd_simulate(const SimulateArgs& args) {
    const std::string text = read_text(args.spec_path);
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw IoError("'" + args.spec_path + "': " + e.what());
    }
    std::string mode = "ber";
    if (j.is_object()) mode = j.value("mode", mode);
    if (mode == "ber") {
        run_ber_mode(j, text, args);
    } else if (mode == "minrate") {
        run_minrate_mode(j, args);
    } else if (mode == "cycles") {
        run_cycles_mode(j, args);
    } else {
        throw IoError("unknown simulation mode '" + mode + "'");
    }
}

struct CyclesArgs {
    std::string ladder_dir;
    std::string out;
};

void cmd_cycles(const CyclesArgs& args) {
    const auto lad = raldpc::ladder::load_ladder(args.ladder_dir);
    print_anchor_table(lad);
    if (!args.out.empty()) {
        std::ostringstream csv;
        csv << "rate_num,rate_den,m,ladder_n4,ldpca_n4\n";
        for (const auto& row : raldpc::sim::cycle_report(lad)) {
            csv << row.rate.num << ',' << row.rate.den << ',' << row.m << ','
                << row.ladder_n4 << ',' << row.ldpca_n4 << "\n";
        }
        write_text(args.out, csv.str());
        std::cout << "wrote " << args.out << "\n";
    }
}

void inspect_ladder(const std::string& dir) {
    const auto lad = raldpc::ladder::load_ladder(dir);
    std::cout << "ladder " << dir << "\n";
    std::cout << "  mother " << lad.m1() << "x" << lad.n() << ", rate "
              << lad.rate_at(lad.m1()).str() << "\n";
    std::cout << "  grid " << lad.grid().size() << " rates, "
              << lad.rate_at(lad.m1()).str() << " down to "
              << lad.rate_at(lad.m_min()).str() << "\n";
    std::cout << "  build seed " << lad.seed() << ", k " << lad.k()
              << ", repeats " << lad.repeats() << "\n";
    std::cout << "  anchors:\n";
    for (const auto& anchor : lad.anchors()) {
        std::cout << "    " << std::left << std::setw(8) << anchor.rate.str()
                  << std::right << " m " << std::setw(5) << anchor.m
                  << "  threshold " << std::setprecision(4) << anchor.threshold
                  << "  n4 " << anchor.n4 << "  merged types ("
                  << anchor.type_pair.first << "," << anchor.type_pair.second
                  << ")  merges " << anchor.cprime.size() << "\n";
    }
}

void inspect_alist(const std::string& path) {
    const auto m = raldpc::io::read_alist_file(path);
    std::size_t edges = 0;
    for (std::size_t i = 0; i < m.rows(); ++i) edges += m.row_support(i).size();
    std::cout << "alist " << path << "\n";
    std::cout << "  " << m.rows() << "x" << m.cols() << ", " << edges
              << " edges, 4-cycles " << raldpc::graph::count_4cycles(m) << "\n";
}

void inspect_protograph(const std::string& path) {
    const auto s = read_protograph(path);
    std::cout << "protograph " << path << "\n";
    std::cout << "  " << s.rows() << "x" << s.cols() << ", " << s.total_edges()
              << " edges, max entry " << s.max_entry() << "\n";
    for (const auto& row : s.entries()) {
        std::cout << "  ";
        const char* sep = "";
        for (int v : row) {
            std::cout << sep << v;
            sep = " ";
        }
        std::cout << "\n";
    }
}

void cmd_inspect(const std::string& path) {
    std::error_code ec;
    if (fs::is_directory(path, ec)) {
        inspect_ladder(path);
    } else if (path.size() > 6 && path.substr(path.size() - 6) == ".alist") {
        inspect_alist(path);
    } else {
        inspect_protograph(path);
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"rate-adaptive LDPC code design and simulation"};
    app.set_version_flag("--version", std::string("raldpc ") + raldpc::kVersion);
    app.require_subcommand(1);

    OptimizeArgs opt;
    auto* opt_cmd = app.add_subcommand(
        "optimize", "search a protograph by differential evolution on the decoding threshold");
    opt_cmd->add_option("--cn", opt.cn, "check node types (rows)")->required();
    opt_cmd->add_option("--vn", opt.vn, "variable node types (columns)")->required();
    opt_cmd->add_option("--dmax", opt.params.max_entry, "largest protograph entry");
    opt_cmd->add_option("--pop", opt.params.population, "population size");
    opt_cmd->add_option("--iters", opt.params.generations, "generations");
    opt_cmd->add_option("--f", opt.params.f, "differential weight");
    opt_cmd->add_option("--cr", opt.params.cr, "crossover rate");
    opt_cmd->add_option("--samples", opt.params.de.samples_per_edge,
                        "density evolution samples per edge");
    opt_cmd->add_option("--bp-iters", opt.params.de.max_iterations,
                        "density evolution iterations per probe");
    opt_cmd->add_option("--tolerance", opt.params.de.tolerance,
                        "threshold bisection tolerance");
    opt_cmd->add_option("--seed", opt.params.seed, "search seed")
        ->envname("RALDPC_SEED");
    opt_cmd->add_option("-o,--out", opt.out, "output JSON path")->required();
    opt_cmd->callback([&] {
        opt.params.de.seed = raldpc::derive_seed(opt.params.seed, 0xDE);
        cmd_optimize(opt);
    });

    ExtendArgs ext;
    auto* ext_cmd = app.add_subcommand(
        "extend", "extend a protograph by replacing entries with random circulant sums");
    ext_cmd->add_option("-i,--in", ext.in, "input protograph JSON")->required();
    ext_cmd->add_option("--ze", ext.ze, "extension factor");
    ext_cmd->add_option("--seed", ext.seed, "shift seed")->envname("RALDPC_SEED");
    ext_cmd->add_option("-o,--out", ext.out, "output JSON path")->required();
    ext_cmd->callback([&] { cmd_extend(ext); });

    LiftArgs lift;
    auto* lift_cmd =
        app.add_subcommand("lift", "lift a protograph to a parity-check matrix");
    lift_cmd->add_option("-i,--in", lift.in, "input protograph JSON")->required();
    lift_cmd->add_option("-z,--z", lift.z, "lifting factor")->required();
    lift_cmd->add_option("--method", lift.method, "lifting method")
        ->check(CLI::IsMember({"peg", "random"}));
    lift_cmd->add_option("--seed", lift.seed, "lift seed")->envname("RALDPC_SEED");
    lift_cmd->add_option("-o,--out", lift.out, "output path prefix")->required();
    lift_cmd->callback([&] { cmd_lift(lift); });

    LadderArgs lad;
    auto* lad_cmd = app.add_subcommand(
        "ladder", "build the rate-adaptive ladder from a protograph");
    lad_cmd->add_option("-i,--in", lad.in, "input protograph JSON")->required();
    lad_cmd->add_option("--ze", lad.ze, "extension factor applied before lifting");
    lad_cmd->add_option("-z,--z", lad.z, "lifting factor")->required();
    lad_cmd->add_option("-k,--k", lad.k, "disjoint partner candidates per row draw");
    lad_cmd->add_option("--repeats", lad.repeats, "independent pairing repeats per anchor");
    lad_cmd->add_option("--samples", lad.de.samples_per_edge,
                        "density evolution samples per edge");
    lad_cmd->add_option("--bp-iters", lad.de.max_iterations,
                        "density evolution iterations per probe");
    lad_cmd->add_option("--tolerance", lad.de.tolerance,
                        "threshold bisection tolerance");
    lad_cmd->add_option("--seed", lad.seed, "build seed")->envname("RALDPC_SEED");
    lad_cmd->add_option("--workers", lad.workers, "threads for pairing repeats");
    lad_cmd->add_option("-o,--out", lad.out, "output directory")->required();
    lad_cmd->callback([&] {
        lad.de.seed = raldpc::derive_seed(lad.seed, 0xDE);
        cmd_ladder(lad);
    });

    SimulateArgs sim;
    auto* sim_cmd = app.add_subcommand(
        "simulate", "run a simulation spec (modes: ber, minrate, cycles)");
    sim_cmd->add_option("--spec", sim.spec_path, "experiment spec JSON")->required();
    sim_cmd->add_option("-o,--out", sim.out, "output CSV path")->required();
    auto* workers_opt =
        sim_cmd->add_option("--workers", sim.workers, "thread count override");
    sim_cmd->callback([&] {
        sim.workers_set = workers_opt->count() > 0;
        cmd_simulate(sim);
    });

    CyclesArgs cyc;
    auto* cyc_cmd = app.add_subcommand(
        "cycles", "4-cycle counts of ladder codes against the accumulator baseline");
    cyc_cmd->add_option("--ladder", cyc.ladder_dir, "ladder directory")->required();
    cyc_cmd->add_option("-o,--out", cyc.out, "optional CSV path");
    cyc_cmd->callback([&] { cmd_cycles(cyc); });

    std::string inspect_path;
    auto* ins_cmd = app.add_subcommand(
        "inspect", "summarize a ladder directory, alist file or protograph JSON");
    ins_cmd->add_option("path", inspect_path, "artifact path")->required();
    ins_cmd->callback([&] { cmd_inspect(inspect_path); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const IoError& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return 4;
    } catch (const raldpc::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid argument: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
