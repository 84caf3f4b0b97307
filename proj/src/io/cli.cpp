#include <troplift/cli.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <sstream>

#include <CLI11.hpp>

#include <troplift/gen.hpp>
#include <troplift/io.hpp>

namespace troplift::cli
{

namespace
{

using io::OrderedJson;
using io::ParseError;

double elapsed_ms(std::chrono::steady_clock::time_point start)
{
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
}

double median(std::vector<double> values)
{
    std::sort(values.begin(), values.end());
    const std::size_t k = values.size() / 2;
    return values.size() % 2 == 1 ? values[k] : (values[k - 1] + values[k]) / 2;
}

const std::map<std::string, PivotRule> pivot_names{
    {"column-scan", PivotRule::ColumnScan},
    {"min-valuation", PivotRule::MinValuation},
};

const std::map<std::string, Reduction> reduction_names{
    {"auto", Reduction::Auto},
    {"exact", Reduction::Exact},
    {"series", Reduction::Series},
};

Instance load_instance(const std::string &path)
{
    try {
        return io::parse_instance(io::parse_json(io::read_file(path)));
    } catch (const ParseError &e) {
        throw ParseError(path + ":" + e.where(), std::string(e.what()).substr(e.where().size() + 2));
    }
}

TropPoint load_point(const std::string &path, const Instance &inst)
{
    TropPoint v;
    try {
        v = io::parse_point(io::parse_json(io::read_file(path)));
    } catch (const ParseError &e) {
        throw ParseError(path + ":" + e.where(), std::string(e.what()).substr(e.where().size() + 2));
    }
    if (v.size() != inst.cols()) {
        throw ParseError(path + ":/v", "expected " + std::to_string(inst.cols()) + " coordinates, got " +
                                           std::to_string(v.size()));
    }
    return v;
}

std::vector<PuiseuxRational> load_witness(const std::string &path, const Instance &inst)
{
    std::vector<PuiseuxRational> x;
    try {
        x = io::parse_witness(io::parse_json(io::read_file(path)));
    } catch (const ParseError &e) {
        throw ParseError(path + ":" + e.where(), std::string(e.what()).substr(e.where().size() + 2));
    }
    if (x.size() != inst.cols()) {
        throw ParseError(path + ":/witness", "expected " + std::to_string(inst.cols()) + " coordinates, got " +
                                                 std::to_string(x.size()));
    }
    return x;
}

struct CheckArgs {
    std::string instance;
    std::string point;
    std::string expand;
    std::string pivot = "column-scan";
    std::string reduction = "auto";
};

struct VerifyArgs {
    std::string instance;
    std::string point;
    std::string witness;
};

struct OracleArgs {
    std::string instance;
    std::string point;
    std::size_t max_cols = default_oracle_max_cols;
};

struct GenArgs {
    GenConfig cfg;
    bool member = false;
    std::string instance_out;
    std::string point_out;
    std::string witness_out;
};

struct BenchArgs {
    BenchConfig cfg;
    std::string output;
    std::string pivot = "min-valuation";
};

int run_check(const CheckArgs &args, std::ostream &out)
{
    const Instance inst = load_instance(args.instance);
    const TropPoint v = load_point(args.point, inst);
    std::optional<Rational> expand;
    if (!args.expand.empty()) {
        try {
            expand = parse_rational(args.expand);
        } catch (const std::invalid_argument &e) {
            throw ParseError("--expand", e.what());
        }
    }
    DecideOptions options;
    options.pivot = pivot_names.at(args.pivot);
    options.reduction = reduction_names.at(args.reduction);
    const LiftResult result = decide(inst, v, options);
    out << io::serialize_result(result, expand).dump(2) << '\n';
    return result.member ? exit_ok : exit_negative;
}

int run_verify(const VerifyArgs &args, std::ostream &out)
{
    const Instance inst = load_instance(args.instance);
    const TropPoint v = load_point(args.point, inst);
    const std::vector<PuiseuxRational> x = load_witness(args.witness, inst);
    const auto start = std::chrono::steady_clock::now();
    const bool valid = verify_witness(inst, v, x);
    OrderedJson result = OrderedJson::object();
    result["valid"] = valid;
    result["timings"] = OrderedJson::object({{"verify", elapsed_ms(start)}});
    out << result.dump(2) << '\n';
    return valid ? exit_ok : exit_negative;
}

int run_oracle(const OracleArgs &args, std::ostream &out)
{
    const Instance inst = load_instance(args.instance);
    const TropPoint v = load_point(args.point, inst);
    const auto start = std::chrono::steady_clock::now();
    bool member = false;
    try {
        member = member_oracle(inst, v, args.max_cols);
    } catch (const TooLarge &e) {
        throw ParseError("--max-cols", e.what());
    }
    OrderedJson result = OrderedJson::object();
    result["verdict"] = member ? "member" : "not_member";
    result["timings"] = OrderedJson::object({{"oracle", elapsed_ms(start)}});
    out << result.dump(2) << '\n';
    return member ? exit_ok : exit_negative;
}

int run_gen(const GenArgs &args, std::ostream &out)
{
    try {
        args.cfg.validate();
    } catch (const std::invalid_argument &e) {
        throw ParseError("gen", e.what());
    }
    Instance inst;
    TropPoint v;
    std::optional<std::vector<PuiseuxRational>> planted;
    if (args.member) {
        PlantedInstance p = gen_member(args.cfg);
        inst = std::move(p.inst);
        v = std::move(p.v);
        planted = std::move(p.planted);
    } else {
        inst = gen_random(args.cfg);
        v = gen_point(args.cfg);
    }
    const OrderedJson inst_json = io::serialize_instance(inst);
    const OrderedJson point_json = io::serialize_point(v);
    OrderedJson witness_json;
    if (planted) {
        witness_json = OrderedJson::object({{"witness", io::serialize_witness(*planted)}});
    }
    bool to_stdout = false;
    if (!args.instance_out.empty()) {
        io::write_file(args.instance_out, inst_json.dump(2) + "\n");
    } else {
        to_stdout = true;
    }
    if (!args.point_out.empty()) {
        io::write_file(args.point_out, point_json.dump(2) + "\n");
    } else {
        to_stdout = true;
    }
    if (planted && !args.witness_out.empty()) {
        io::write_file(args.witness_out, witness_json.dump(2) + "\n");
    }
    if (to_stdout) {
        OrderedJson all = OrderedJson::object();
        all["instance"] = inst_json;
        all["point"] = point_json;
        if (planted) {
            all["planted"] = witness_json["witness"];
        }
        out << all.dump(2) << '\n';
    }
    return exit_ok;
}

int run_bench_command(BenchArgs args, std::ostream &out)
{
    if (args.cfg.reps == 0) {
        throw ParseError("--reps", "must be positive");
    }
    for (const std::size_t n : args.cfg.sizes) {
        if (n < 2) {
            throw ParseError("--sizes", "sizes must be at least 2");
        }
    }
    for (const std::size_t n : args.cfg.oracle_sizes) {
        if (n < 2) {
            throw ParseError("--oracle-sizes", "sizes must be at least 2");
        }
    }
    args.cfg.options.pivot = pivot_names.at(args.pivot);
    const std::vector<BenchRow> rows = run_bench(args.cfg);
    const std::string csv = bench_csv(rows);
    if (args.output.empty()) {
        out << csv;
    } else {
        io::write_file(args.output, csv);
    }
    std::vector<std::pair<double, double>> points;
    for (const auto &row : rows) {
        if (std::find(args.cfg.sizes.begin(), args.cfg.sizes.end(), row.n) != args.cfg.sizes.end()) {
            points.emplace_back(static_cast<double>(row.n), row.decide_ms);
        }
    }
    if (points.size() >= 2 && !args.output.empty()) {
        out << "decide log-log slope over --sizes: " << loglog_slope(points) << '\n';
    }
    return exit_ok;
}

} // namespace

std::vector<BenchRow> run_bench(const BenchConfig &cfg)
{
    std::vector<std::size_t> all = cfg.sizes;
    all.insert(all.end(), cfg.oracle_sizes.begin(), cfg.oracle_sizes.end());
    std::sort(all.begin(), all.end());
    all.erase(std::unique(all.begin(), all.end()), all.end());
    std::vector<BenchRow> rows;
    for (const std::size_t n : all) {
        BenchRow row;
        row.n = n;
        row.m = std::max<std::size_t>(1, n / 2);
        const bool run_oracle = n + 1 <= cfg.max_cols;
        std::vector<double> decide_times;
        std::vector<double> oracle_times;
        for (std::size_t rep = 0; rep < cfg.reps; ++rep) {
            GenConfig g;
            g.seed = cfg.seed + 1000003 * n + rep;
            g.n = n;
            g.m = row.m;
            g.terms_per_entry = 3;
            g.exp_lo = -5;
            g.exp_hi = 5;
            const Instance inst = gen_random(g);
            const TropPoint v = gen_point(g);
            auto start = std::chrono::steady_clock::now();
            const LiftResult result = decide(inst, v, cfg.options);
            decide_times.push_back(elapsed_ms(start));
            row.members += result.member ? 1 : 0;
            if (run_oracle) {
                start = std::chrono::steady_clock::now();
                (void)member_oracle(inst, v, cfg.max_cols);
                oracle_times.push_back(elapsed_ms(start));
            }
        }
        row.decide_ms = median(decide_times);
        if (run_oracle) {
            row.oracle_ms = median(oracle_times);
        }
        rows.push_back(row);
    }
    return rows;
}

std::string bench_csv(const std::vector<BenchRow> &rows)
{
    std::ostringstream out;
    out << "n,m,decide_ms,oracle_ms\n";
    out.setf(std::ios::fixed);
    out.precision(3);
    for (const auto &row : rows) {
        out << row.n << ',' << row.m << ',' << row.decide_ms << ',';
        if (row.oracle_ms) {
            out << *row.oracle_ms;
        } else {
            out << "skipped";
        }
        out << '\n';
    }
    return out.str();
}

double loglog_slope(const std::vector<std::pair<double, double>> &points)
{
    double sx = 0;
    double sy = 0;
    for (const auto &[x, y] : points) {
        sx += std::log(x);
        sy += std::log(y);
    }
    const double k = static_cast<double>(points.size());
    const double mx = sx / k;
    const double my = sy / k;
    double sxy = 0;
    double sxx = 0;
    for (const auto &[x, y] : points) {
        sxy += (std::log(x) - mx) * (std::log(y) - my);
        sxx += (std::log(x) - mx) * (std::log(x) - mx);
    }
    return sxy / sxx;
}

int run_command(int argc, const char *const *argv, std::ostream &out, std::ostream &err)
{
    CLI::App app{"Decide membership of a point in the tropicalization of a linear system over Puiseux series"};
    app.require_subcommand(1);

    CheckArgs check_args;
    auto add_check = [&](const std::string &name, const std::string &help) {
        CLI::App *cmd = app.add_subcommand(name, help);
        cmd->add_option("-i,--instance", check_args.instance, "instance JSON file")->required();
        cmd->add_option("-p,--point", check_args.point, "point JSON file")->required();
        cmd->add_option("--expand", check_args.expand, "also print witness series terms up to this exponent");
        cmd->add_option("--pivot", check_args.pivot, "pivot rule")
            ->check(CLI::IsMember({"column-scan", "min-valuation"}));
        cmd->add_option("--reduction", check_args.reduction, "row reduction route")
            ->check(CLI::IsMember({"auto", "exact", "series"}));
        return cmd;
    };
    CLI::App *check = add_check("check", "decide membership and print the result");
    CLI::App *lift = add_check("lift", "same as check");

    VerifyArgs verify_args;
    CLI::App *verify = app.add_subcommand("verify", "check a witness exactly");
    verify->add_option("-i,--instance", verify_args.instance, "instance JSON file")->required();
    verify->add_option("-p,--point", verify_args.point, "point JSON file")->required();
    verify->add_option("-w,--witness", verify_args.witness, "result JSON file with a witness")->required();

    OracleArgs oracle_args;
    CLI::App *oracle = app.add_subcommand("oracle", "brute-force membership through circuits");
    oracle->add_option("-i,--instance", oracle_args.instance, "instance JSON file")->required();
    oracle->add_option("-p,--point", oracle_args.point, "point JSON file")->required();
    oracle->add_option("--max-cols", oracle_args.max_cols, "column guard of the homogenized system");

    GenArgs gen_args;
    CLI::App *gen = app.add_subcommand("gen", "generate an instance and a point");
    gen->add_option("--seed", gen_args.cfg.seed, "random seed")->required();
    gen->add_option("--m", gen_args.cfg.m, "rows")->required();
    gen->add_option("--n", gen_args.cfg.n, "columns")->required();
    gen->add_flag("--member", gen_args.member, "plant a solution and use its valuations as the point");
    gen->add_option("--terms", gen_args.cfg.terms_per_entry, "maximal number of terms per entry");
    gen->add_option("--exp-lo", gen_args.cfg.exp_lo, "smallest grid exponent");
    gen->add_option("--exp-hi", gen_args.cfg.exp_hi, "largest grid exponent");
    gen->add_option("--grid-den", gen_args.cfg.grid_den, "grid denominator q");
    gen->add_option("--coeff-bound", gen_args.cfg.coeff_bound, "coefficient numerator/denominator bound");
    gen->add_option("-i,--instance-out", gen_args.instance_out, "instance output file");
    gen->add_option("-p,--point-out", gen_args.point_out, "point output file");
    gen->add_option("-w,--witness-out", gen_args.witness_out, "planted solution output file (with --member)");

    BenchArgs bench_args;
    CLI::App *bench = app.add_subcommand("bench", "time decide and the oracle over a size sweep");
    bench->add_option("--sizes", bench_args.cfg.sizes, "values of n (m = n/2)")->delimiter(',');
    bench->add_option("--oracle-sizes", bench_args.cfg.oracle_sizes, "extra small values of n")->delimiter(',');
    bench->add_option("--seed", bench_args.cfg.seed, "random seed");
    bench->add_option("--reps", bench_args.cfg.reps, "instances per size (median reported)");
    bench->add_option("--max-cols", bench_args.cfg.max_cols, "oracle column guard");
    bench->add_option("--pivot", bench_args.pivot, "pivot rule")
        ->check(CLI::IsMember({"column-scan", "min-valuation"}));
    bench->add_option("-o,--output", bench_args.output, "CSV output file (default: standard output)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? exit_ok : exit_input;
    }

    try {
        if (check->parsed() || lift->parsed()) {
            return run_check(check_args, out);
        }
        if (verify->parsed()) {
            return run_verify(verify_args, out);
        }
        if (oracle->parsed()) {
            return run_oracle(oracle_args, out);
        }
        if (gen->parsed()) {
            return run_gen(gen_args, out);
        }
        if (bench->parsed()) {
            return run_bench_command(bench_args, out);
        }
    } catch (const ParseError &e) {
        err << "error: " << e.what() << '\n';
        return exit_input;
    } catch (const std::exception &e) {
        err << "internal error: " << e.what() << '\n';
        return exit_internal;
    }
    return exit_internal;
}

} // namespace troplift::cli
