// corrbound - security bounds for linear TRNG correctors Y = G*X.
//
// Subcommands: bound, solve, oracle, scan, random-codes, gen.
// Exit codes: 0 success, 2 usage/input error, 3 domain error, 4 failed check.

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "corrbound/bounds.hpp"
#include "corrbound/gf2.hpp"
#include "corrbound/oracle.hpp"
#include "corrbound/polyeval.hpp"
#include "corrbound/random_codes.hpp"
#include "corrbound/scanner.hpp"
#include "corrbound/weights.hpp"

namespace fs = std::filesystem;
using namespace corrbound;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitusage = 2;
constexpr int kExitDomain = 3;
constexpr int kExitCheckFailed = 4;

constexpr double kDefaultDeltaRef = 0.1;
constexpr double kDefaultSecurityRef = 80.0;
constexpr std::size_t kDefaultSamples = 1000;
constexpr std::uint64_t kDefaultSeed = 1;

std::string read_file_or_die(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_output(const std::string& path, const std::string& contents) {
    if (path.empty() || path == "-") {
        std::cout << contents;
        return;
    }
    write_file(path, contents);
}

// `min:max:count:lin|log`
DeltaGrid parse_grid_spec(const std::string& spec) {
    std::vector<std::string> parts;
    std::istringstream is(spec);
    std::string part;
    while (std::getline(is, part, ':')) parts.push_back(part);
    if (parts.size() != 4) throw InvalidParams("grid spec must be min:max:count:lin|log");
    const double lo = std::stod(parts[0]);
    const double hi = std::stod(parts[1]);
    const std::size_t count = std::stoul(parts[2]);
    if (parts[3] == "lin") return DeltaGrid::linspace(lo, hi, count);
    if (parts[3] == "log") return DeltaGrid::logspace(lo, hi, count);
    throw InvalidParams("grid spacing must be `lin` or `log`");
}

struct CommonInput {
    std::string weights_path;
    std::string generator_path;
    bool allow_partial = false;
};

WeightDistribution load_distribution(const CommonInput& in, std::size_t enum_limit) {
    if (in.weights_path.empty() == in.generator_path.empty())
        throw InvalidParams("provide exactly one of --weights or --generator");
    if (!in.weights_path.empty())
        return parse_weights(read_file_or_die(in.weights_path), in.allow_partial);
    return weights_from_matrix(parse_generator(read_file_or_die(in.generator_path)), enum_limit);
}

int classify_error(const std::exception& e) {
    if (dynamic_cast<const RankDeficient*>(&e) || dynamic_cast<const TargetUnreachable*>(&e) ||
        dynamic_cast<const EmptyCode*>(&e) || dynamic_cast<const NotRankDeficient*>(&e))
        return kExitDomain;
    if (dynamic_cast<const InternalCheckError*>(&e)) return kExitCheckFailed;
    return kExitusage;
}

struct GlobalOpts {
    std::size_t enum_limit = kDefaultEnumerationLimit;
    unsigned workers = 1;
};

int cmd_bound(const GlobalOpts& g, const CommonInput& in, const std::string& grid_spec,
              double delta, bool has_delta, bool sharp_lower, const std::string& out_path) {
    if (has_delta == !grid_spec.empty())
        throw InvalidParams("provide exactly one of --delta or --grid");
    WeightDistribution dist = load_distribution(in, g.enum_limit);
    DeltaGrid grid = has_delta ? DeltaGrid::single(delta) : parse_grid_spec(grid_spec);
    const bool deficient = dist.corrector_rows() && *dist.corrector_rows() > dist.rank();
    if (deficient)
        std::cerr << "warning: generator is rank-deficient (rank " << dist.rank() << " < k "
                  << *dist.corrector_rows() << "); l1 columns left empty, the map is not an "
                  << "extractor\n";
    auto rows = report(dist, grid,
                       sharp_lower ? L1LowerDenominator::minus_one : L1LowerDenominator::full);
    std::ostringstream os;
    write_report_csv(os, rows);
    write_output(out_path, os.str());
    return kExitOk;
}

int cmd_solve(const GlobalOpts& g, const CommonInput& in, double security,
              const std::string& out_path) {
    WeightDistribution dist = load_distribution(in, g.enum_limit);
    double delta_star;
    if (security == 0.0) {
        delta_star = 1.0;  // vacuous target: epsilon = 2^0 = 1 rules nothing out
    } else {
        delta_star = max_bias_for_security(dist, security);
    }
    const double achieved =
        -0.5 * eval_w_minus_1_log2(dist, delta_star * delta_star);
    std::ostringstream os;
    os << "security_target,delta_star,achieved_security_bits\n"
       << format_double(security) << ',' << format_double(delta_star) << ','
       << format_double(achieved) << '\n';
    write_output(out_path, os.str());
    return kExitOk;
}

int cmd_oracle(const GlobalOpts& g, const std::string& generator_path, double delta,
               const std::vector<double>& per_bit) {
    const GeneratorMatrix gen = parse_generator(read_file_or_die(generator_path));
    const BiasModel bias =
        per_bit.empty() ? BiasModel::uniform(delta) : BiasModel::per_bit(per_bit);
    bias.check_length(gen.cols());

    bool all_pass = true;
    const auto check = [&](const std::string& name, bool ok, double value, double tol) {
        std::cout << (ok ? "PASS" : "FAIL") << "  " << name << "  value=" << format_double(value)
                  << "  tol=" << format_double(tol) << "\n";
        if (!ok) all_pass = false;
    };

    const ExactDistribution direct = exact_distribution_direct(gen, bias);
    const ExactDistribution fourier = exact_distribution_fourier(gen, bias);
    double max_diff = 0.0;
    for (std::size_t y = 0; y < direct.probs.size(); ++y)
        max_diff = std::max(max_diff, std::fabs(direct.probs[y] - fourier.probs[y]));
    check("direct-vs-fourier-max-abs-diff", max_diff <= 1e-10, max_diff, 1e-10);

    const ExactNorms norms = exact_norms(direct);
    check("plancherel-l2-gap", norms.plancherel_gap <= 1e-10, norms.plancherel_gap, 1e-10);

    const double linf_formula = linf_closed_form(gen, bias, g.enum_limit);
    check("linf-vs-closed-form", std::fabs(norms.linf - linf_formula) <= 1e-10,
          std::fabs(norms.linf - linf_formula), 1e-10);

    const std::uint64_t x_star = linf_maximizer_input(gen, bias);
    const std::uint64_t y_star = multiply(gen, x_star);
    const double max_gap = std::fabs(direct.probs[y_star] - norms.linf);
    check("linf-maximizer-y=Gx", max_gap <= 1e-12, max_gap, 1e-12);

    const std::size_t rank = gf2_rank(gen);
    if (rank < gen.rows()) {
        const RankDeficiencyCheck rd = check_rank_deficiency_claim(gen, bias);
        check("rank-deficiency-tv>=1/2", rd.pass, rd.tv, 0.5 - 1e-12);
    } else if (bias.is_uniform()) {
        const WeightDistribution dist = weights_from_matrix(gen, g.enum_limit);
        const double l2_formula = l2_distance(dist, delta).linear;
        check("l2-vs-closed-form", std::fabs(norms.l2 - l2_formula) <= 1e-10,
              std::fabs(norms.l2 - l2_formula), 1e-10);
        if (dist.min_distance()) {
            const L1Bounds l1 = l1_bounds(dist, delta);
            const bool inside =
                norms.l1 >= l1.lower.linear - 1e-10 && norms.l1 <= l1.upper.linear + 1e-10;
            check("l1-inside-sandwich", inside, norms.l1, 0.0);
        }
    }
    return all_pass ? kExitOk : kExitCheckFailed;
}

int cmd_scan(const GlobalOpts& g, const std::string& corpus_dir, double delta_ref,
             double security_ref, const std::string& out_dir) {
    const ScanResult result =
        scan_corpus(corpus_dir, delta_ref, security_ref, g.workers, g.enum_limit);
    fs::path out(out_dir.empty() ? "." : out_dir);
    std::ostringstream frontier, skips;
    write_frontier_csv(frontier, result.points);
    write_skips_csv(skips, result.skips);
    write_file(out / "frontier.csv", frontier.str());
    write_file(out / "skips.csv", skips.str());
    std::cerr << "scan: " << result.points.size() << " codes, " << result.skips.size()
              << " skipped\n";
    return kExitOk;
}

int cmd_random_codes(const GlobalOpts& g, const RandomCodeParams& params,
                     const std::string& out_path) {
    const ValueLog2 expected = expected_l2_sq(params);
    const ValueLog2 var_bound = variance_bound_l2_sq(params);
    const MonteCarloResult mc = monte_carlo_l2_sq(params, g.workers);
    const double stderr_mean =
        params.samples > 1 ? mc.stddev / std::sqrt(static_cast<double>(params.samples)) : 0.0;
    std::ostringstream os;
    os << "n,k,delta,samples,seed,expected_l2_sq,expected_l2_sq_log2,"
          "variance_bound,variance_bound_log2,mc_mean,mc_stddev,mc_stderr\n"
       << params.n << ',' << params.k << ',' << format_double(params.delta) << ','
       << params.samples << ',' << params.seed << ',' << format_double(expected.linear) << ','
       << format_double(expected.log2) << ',' << format_double(var_bound.linear) << ','
       << format_double(var_bound.log2) << ',' << format_double(mc.mean) << ','
       << format_double(mc.stddev) << ',' << format_double(stderr_mean) << '\n';
    write_output(out_path, os.str());
    return kExitOk;
}

int cmd_gen(const GlobalOpts& g, unsigned r, unsigned m, const std::string& out_dir,
            std::string name, bool emit_weights) {
    const GeneratorMatrix gen = reed_muller_generator(r, m);
    if (name.empty()) name = "rm_" + std::to_string(r) + "_" + std::to_string(m);
    const fs::path dir(out_dir.empty() ? "." : out_dir);
    write_file(dir / (name + ".gm"), serialize_generator(gen));
    std::cerr << "wrote " << (dir / (name + ".gm")).string() << " [" << gen.cols() << ","
              << gen.rows() << "]\n";
    if (emit_weights) {
        if (gen.rows() > g.enum_limit) {
            std::cerr << "warning: weights skipped, rank " << gen.rows()
                      << " exceeds enumeration limit " << g.enum_limit << "\n";
        } else {
            const WeightDistribution dist = weights_from_matrix(gen, g.enum_limit);
            write_file(dir / (name + ".wt"), serialize_weights(dist));
            std::cerr << "wrote " << (dir / (name + ".wt")).string() << "\n";
        }
    }
    return kExitOk;
}

std::string defaults_csv() {
    std::ostringstream os;
    os << "name,value\n"
       << "delta_ref," << format_double(kDefaultDeltaRef) << "\n"
       << "security_ref," << format_double(kDefaultSecurityRef) << "\n"
       << "enumeration_limit," << kDefaultEnumerationLimit << "\n"
       << "workers,1\n"
       << "samples," << kDefaultSamples << "\n"
       << "seed," << kDefaultSeed << "\n"
       << "oracle_max_bits," << kOracleMaxBits << "\n"
       << "bisection_relative_tolerance,1e-09\n"
       << "bisection_max_iterations,200\n"
       << "l1_lower_denominator,W(delta)\n";
    return os.str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Security bounds for linear TRNG correctors Y = G*X over GF(2)"};
    app.require_subcommand(0, 1);

    GlobalOpts global;
    app.add_option("--enum-limit", global.enum_limit,
                   "Max rank for 2^rank rowspan enumeration (default 28)")
        ->envname("CORRBOUND_ENUM_LIMIT");
    app.add_option("--workers", global.workers,
                   "Worker threads for scan / random-codes (default 1)")
        ->envname("CORRBOUND_WORKERS");
    std::string defaults_path;
    auto* defaults_flag = app.add_option(
        "--defaults-csv", defaults_path, "Write the defaults table as CSV to PATH and exit");

    // bound
    auto* bound = app.add_subcommand("bound", "Evaluate all security bounds on a delta grid");
    CommonInput bound_in;
    std::string bound_grid, bound_out;
    double bound_delta = 0.0;
    bool bound_sharp = false;
    bound->add_option("--weights", bound_in.weights_path, "Weight distribution file");
    bound->add_option("--generator", bound_in.generator_path, "Generator matrix file");
    bound->add_flag("--allow-partial", bound_in.allow_partial,
                    "Accept truncated weight files (lower bounds on W only)");
    bound->add_option("--grid", bound_grid, "Delta grid `min:max:count:lin|log`");
    auto* bound_delta_opt = bound->add_option("--delta", bound_delta, "Single delta value");
    bound->add_flag("--sharp-lower", bound_sharp,
                    "Use the sharper l1 lower bound denominator W(delta)-1");
    bound->add_option("-o,--out", bound_out, "Output CSV path (default stdout)");

    // solve
    auto* solve = app.add_subcommand("solve", "Max tolerable input bias for a security target");
    CommonInput solve_in;
    std::string solve_out;
    double solve_security = kDefaultSecurityRef;
    solve->add_option("--weights", solve_in.weights_path, "Weight distribution file");
    solve->add_option("--generator", solve_in.generator_path, "Generator matrix file");
    solve->add_option("--security", solve_security, "Target security bits s (epsilon = 2^-s)")
        ->required();
    solve->add_option("-o,--out", solve_out, "Output CSV path (default stdout)");

    // oracle
    auto* oracle = app.add_subcommand("oracle", "Brute-force verification on a small generator");
    std::string oracle_gen;
    double oracle_delta = kDefaultDeltaRef;
    std::vector<double> oracle_deltas;
    oracle->add_option("--generator", oracle_gen, "Generator matrix file")->required();
    oracle->add_option("--delta", oracle_delta, "Uniform bias magnitude (default 0.1)");
    oracle->add_option("--deltas", oracle_deltas,
                       "Per-bit signed biases (comma separated)")
        ->delimiter(',');

    // scan
    auto* scan = app.add_subcommand("scan", "Rate-vs-security scan over a weight-file corpus");
    std::string scan_dir, scan_out_dir;
    double scan_delta = kDefaultDeltaRef, scan_security = kDefaultSecurityRef;
    scan->add_option("--corpus", scan_dir, "Directory of weight files")->required();
    scan->add_option("--delta", scan_delta, "Reference input bias (default 0.1)");
    scan->add_option("--security", scan_security, "Reference security bits (default 80)");
    scan->add_option("-o,--out-dir", scan_out_dir,
                     "Directory for frontier.csv and skips.csv (default .)");

    // random-codes
    auto* random_codes =
        app.add_subcommand("random-codes", "Random-code closed forms plus Monte Carlo");
    RandomCodeParams rc_params;
    rc_params.samples = kDefaultSamples;
    rc_params.seed = kDefaultSeed;
    std::string rc_out;
    random_codes->add_option("-n,--block-length", rc_params.n, "Block length n")->required();
    random_codes->add_option("-k,--dimension", rc_params.k, "Dimension k")->required();
    random_codes->add_option("--delta", rc_params.delta, "Bias magnitude")->required();
    random_codes->add_option("--samples", rc_params.samples, "Monte Carlo samples (default 1000)");
    random_codes->add_option("--seed", rc_params.seed, "RNG seed (default 1)");
    random_codes->add_option("-o,--out", rc_out, "Output CSV path (default stdout)");

    // gen
    auto* gen = app.add_subcommand("gen", "Construct generator (and weight) files");
    std::string gen_family, gen_dir, gen_name;
    unsigned gen_r = 0, gen_m = 0;
    bool gen_weights = true;
    gen->add_option("family", gen_family, "Code family; `rm` for Reed-Muller")->required();
    gen->add_option("r", gen_r, "Monomial degree bound r")->required();
    gen->add_option("m", gen_m, "Number of variables m (n = 2^m)")->required();
    gen->add_option("-o,--out-dir", gen_dir, "Output directory (default .)");
    gen->add_option("--name", gen_name, "Output file stem (default rm_<r>_<m>)");
    gen->add_flag("--emit-weights,!--no-emit-weights", gen_weights,
                  "Also write the weight file when rank permits (default on)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitusage;
    }

    try {
        if (*defaults_flag) {
            write_output(defaults_path, defaults_csv());
            return kExitOk;
        }
        if (*bound)
            return cmd_bound(global, bound_in, bound_grid, bound_delta,
                             bound_delta_opt->count() > 0, bound_sharp, bound_out);
        if (*solve) return cmd_solve(global, solve_in, solve_security, solve_out);
        if (*oracle) return cmd_oracle(global, oracle_gen, oracle_delta, oracle_deltas);
        if (*scan) return cmd_scan(global, scan_dir, scan_delta, scan_security, scan_out_dir);
        if (*random_codes) return cmd_random_codes(global, rc_params, rc_out);
        if (*gen) {
            if (gen_family != "rm") throw InvalidParams("unknown code family: " + gen_family);
            return cmd_gen(global, gen_r, gen_m, gen_dir, gen_name, gen_weights);
        }
        std::cerr << app.help();
        return kExitusage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return classify_error(e);
    }
}
