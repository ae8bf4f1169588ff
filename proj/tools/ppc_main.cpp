// ppc: product-polar code construction, decoding, latency evaluation, and
// Monte-Carlo simulation.

#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "ppc/channel.hpp"
#include "ppc/construction.hpp"
#include "ppc/frozen.hpp"
#include "ppc/latency.hpp"
#include "ppc/simulator.hpp"
#include "ppc/two_step.hpp"

using nlohmann::json;
using namespace ppc;

namespace {

ReliabilityOrder order_for(std::size_t n, double z0, const std::string& order_file)
{
    if (!order_file.empty()) {
        ReliabilityOrder order = load_reliability_order(order_file);
        if (order.code_length != n)
            throw std::runtime_error("order file length does not match N=" + std::to_string(n));
        return order;
    }
    return bhattacharyya_order(n, z0);
}

struct ConstructArgs {
    std::string mode = "flat";
    std::size_t n = 0, k = 0;
    std::size_t nr = 0, nc = 0, kr = 0, kc = 0;
    double z0 = 0.5;
    std::string order_file;
    std::string output;
    bool emit_order = false;
};

int run_construct(const ConstructArgs& args)
{
    std::optional<FrozenSet> frozen;
    std::optional<ReliabilityOrder> order_out;

    if (args.emit_order) {
        if (args.n == 0)
            throw std::runtime_error("--emit-order requires --n");
        order_out = order_for(args.n, args.z0, args.order_file);
    } else if (args.mode == "flat") {
        if (args.n == 0)
            throw std::runtime_error("flat construction requires --n and --k");
        frozen = frozen_from_order(order_for(args.n, args.z0, args.order_file), args.k);
    } else if (args.mode == "product" || args.mode == "hybrid") {
        if (args.nr == 0 || args.nc == 0)
            throw std::runtime_error(args.mode + " construction requires --nr and --nc");
        const FrozenSet f_r = frozen_from_order(bhattacharyya_order(args.nr, args.z0), args.kr);
        const FrozenSet f_c = frozen_from_order(bhattacharyya_order(args.nc, args.z0), args.kc);
        if (args.mode == "product") {
            frozen = product_frozen_set(f_r, f_c);
        } else {
            const auto order = order_for(args.nr * args.nc, args.z0, args.order_file);
            frozen = hybrid_frozen_set(f_r, f_c, args.k, order).frozen;
        }
    } else {
        throw std::runtime_error("unknown mode: " + args.mode);
    }

    std::ostream* out = &std::cout;
    std::ofstream file;
    if (!args.output.empty()) {
        file.open(args.output);
        if (!file)
            throw std::runtime_error("cannot open output file: " + args.output);
        out = &file;
    }
    if (order_out)
        write_reliability_order_file(*out, *order_out);
    else
        write_frozen_set_file(*out, *frozen);
    return 0;
}

LlrVector read_llrs(const std::string& path)
{
    std::istream* in = &std::cin;
    std::ifstream file;
    if (!path.empty() && path != "-") {
        file.open(path);
        if (!file)
            throw std::runtime_error("cannot open LLR file: " + path);
        in = &file;
    }
    LlrVector y;
    double v;
    while (*in >> v)
        y.push_back(v);
    return y;
}

json candidate_json(const ListCandidate& c)
{
    return json{{"u_hat", c.u_hat}, {"x_hat", c.x_hat}, {"metric", c.metric}};
}

struct DecodeArgs {
    std::string frozen_file;
    std::string llr_file = "-";
    std::size_t list = 0;
    std::string metric = "minsum";
    bool two_step = false;
    std::string variant = "sc-hd";
    std::size_t t = 4;
    std::size_t list_size = 8;
    double saturation = 1000.0;
    double agreement = 1000.0;
    bool frozen_check = true;
    std::size_t nr = 0, nc = 0;
};

MetricMode parse_metric(const std::string& name)
{
    if (name == "minsum")
        return MetricMode::MinSum;
    if (name == "exact")
        return MetricMode::Exact;
    throw std::runtime_error("unknown metric mode: " + name);
}

TwoStepVariant parse_variant(const std::string& name)
{
    if (name == "sc-hd")
        return TwoStepVariant::ScHd;
    if (name == "scl-hd")
        return TwoStepVariant::SclHd;
    if (name == "scl-sd")
        return TwoStepVariant::SclSd;
    throw std::runtime_error("unknown two-step variant: " + name);
}

int run_decode(const DecodeArgs& args)
{
    const FrozenSet frozen = load_frozen_set(args.frozen_file);
    const LlrVector y = read_llrs(args.llr_file);
    if (y.size() != frozen.code_length)
        throw std::runtime_error("LLR count does not match the code length");
    const MetricMode mode = parse_metric(args.metric);

    if (args.two_step) {
        if (args.nr == 0 || args.nc == 0)
            throw std::runtime_error("--two-step requires --nr and --nc");
        CodeSpec spec = make_flat_spec(frozen);
        attach_product_structure(spec, args.nr, args.nc);
        TwoStepConfig cfg;
        cfg.variant = parse_variant(args.variant);
        cfg.max_iterations = args.t;
        cfg.list_size = args.list_size;
        cfg.saturation = args.saturation;
        cfg.agreement = args.agreement;
        cfg.frozen_check = args.frozen_check;
        cfg.metric_mode = mode;
        TwoStepDecoder dec(spec, cfg);
        const TwoStepOutcome out = dec.decode(y);
        json j{{"u_hat", out.u_hat},
               {"iterations_used", out.iterations_used},
               {"step2_used", out.step2_used},
               {"time_steps", out.time_steps},
               {"agreement_achieved", out.agreement_achieved}};
        std::cout << j.dump() << "\n";
        return 0;
    }

    if (args.list > 0) {
        for (const ListCandidate& c : scl_decode(y, frozen, args.list, mode))
            std::cout << candidate_json(c).dump() << "\n";
    } else {
        std::cout << candidate_json(sc_decode(y, frozen, mode)).dump() << "\n";
    }
    return 0;
}

std::map<std::string, std::string> parse_config_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open config file: " + path);
    std::map<std::string, std::string> kv;
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos)
            line.erase(hash);
        const auto strip = [](std::string s) {
            const auto b = s.find_first_not_of(" \t\r");
            const auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
        };
        line = strip(line);
        if (line.empty())
            continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error("malformed config line: " + line);
        kv[strip(line.substr(0, eq))] = strip(line.substr(eq + 1));
    }
    return kv;
}

std::vector<double> parse_grid(const std::string& csv)
{
    std::vector<double> grid;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ','))
        grid.push_back(std::stod(item));
    return grid;
}

SimDecoder parse_decoder(const std::string& name)
{
    if (name == "sc")
        return SimDecoder::Sc;
    if (name == "scl")
        return SimDecoder::Scl;
    if (name == "sc-hd")
        return SimDecoder::ScHd;
    if (name == "scl-hd")
        return SimDecoder::SclHd;
    if (name == "scl-sd")
        return SimDecoder::SclSd;
    throw std::runtime_error("unknown decoder: " + name);
}

int run_simulate(const std::string& config_path)
{
    auto kv = parse_config_file(config_path);
    const auto take = [&](const std::string& key, const std::string& fallback) {
        auto it = kv.find(key);
        if (it == kv.end())
            return fallback;
        std::string v = it->second;
        kv.erase(it);
        return v;
    };

    Experiment exp;
    const std::string mode = take("mode", "product");
    const double z0 = std::stod(take("design_z0", "0.5"));
    const std::string frozen_file = take("frozen_file", "");
    const std::string order_file = take("order_file", "");
    const std::size_t nr = std::stoul(take("nr", "0"));
    const std::size_t nc = std::stoul(take("nc", "0"));

    if (!frozen_file.empty()) {
        exp.spec = make_flat_spec(load_frozen_set(frozen_file));
        if (nr && nc)
            attach_product_structure(exp.spec, nr, nc);
    } else if (mode == "flat") {
        const std::size_t n = std::stoul(take("n", "0"));
        const std::size_t k = std::stoul(take("k", "0"));
        exp.spec = make_flat_spec(frozen_from_order(order_for(n, z0, order_file), k));
        if (nr && nc)
            attach_product_structure(exp.spec, nr, nc);
    } else if (mode == "product" || mode == "hybrid") {
        const std::size_t kr = std::stoul(take("kr", "0"));
        const std::size_t kc = std::stoul(take("kc", "0"));
        const FrozenSet f_r = frozen_from_order(bhattacharyya_order(nr, z0), kr);
        const FrozenSet f_c = frozen_from_order(bhattacharyya_order(nc, z0), kc);
        if (mode == "product") {
            exp.spec = make_product_spec(f_r, f_c);
        } else {
            const std::size_t k = std::stoul(take("k", "0"));
            exp.spec = hybrid_frozen_set(f_r, f_c, k, order_for(nr * nc, z0, order_file));
        }
    } else {
        throw std::runtime_error("unknown mode: " + mode);
    }

    exp.decoder = parse_decoder(take("decoder", "sc-hd"));
    exp.two_step.max_iterations = std::stoul(take("t", "4"));
    exp.two_step.list_size = std::stoul(take("list_size", "8"));
    exp.two_step.saturation = std::stod(take("saturation", "1000"));
    exp.two_step.agreement = std::stod(take("agreement", "1000"));
    exp.two_step.frozen_check = take("frozen_check", "1") != "0";
    exp.two_step.sd_blend = std::stod(take("sd_blend", "0"));
    exp.two_step.metric_mode = parse_metric(take("metric", "minsum"));
    exp.metric_mode = exp.two_step.metric_mode;
    exp.list_size = exp.two_step.list_size;
    exp.eb_n0_grid_db = parse_grid(take("snr_db", ""));
    exp.seed = std::stoull(take("seed", "1"));
    exp.stop.max_frames = std::stoull(take("max_frames", "1000000"));
    exp.stop.min_frame_errors = std::stoull(take("min_frame_errors", "100"));
    exp.workers = std::stoul(take("workers", "0"));

    const std::string output = take("output", "");
    const std::string jsonl_output = take("jsonl_output", "");
    if (!kv.empty())
        throw std::runtime_error("unknown config key: " + kv.begin()->first);

    const auto stats = run_experiment(exp);
    if (!output.empty())
        emit_results(output, stats, ResultFormat::Csv);
    if (!jsonl_output.empty())
        emit_results(jsonl_output, stats, ResultFormat::JsonLines);
    if (output.empty() && jsonl_output.empty())
        write_results(std::cout, stats, ResultFormat::Csv);
    return 0;
}

struct LatencyArgs {
    std::size_t t = 4;
    std::size_t nr = 0;
    double rate_r = 7.0 / 8.0;
    double t_avg = 4.0;
    std::size_t threshold_n = 0;
    double rate = 0.0;
};

void print_table_rows(const std::vector<LatencyTableRow>& rows)
{
    std::printf("%10s %10s | %8s %8s %8s | %8s %8s %8s | %8s %8s\n", "N", "K", "d_SC",
                "HD_WC", "HD_BC", "d_SCL", "HD_WC", "HD_BC", "SD_WC", "SD_BC");
    for (const auto& r : rows)
        std::printf("%10zu %10zu | %8lld %8lld %8lld | %8lld %8lld %8lld | %8lld %8lld\n",
                    r.n, r.k, r.sc_full, r.hd_sc_wc, r.hd_sc_bc, r.scl_full, r.hd_scl_wc,
                    r.hd_scl_bc, r.sd_scl_wc, r.sd_scl_bc);
}

int run_latency(const LatencyArgs& args)
{
    std::vector<LatencyTableRow> rows;
    if (args.nr > 0) {
        const std::size_t k = static_cast<std::size_t>(
            static_cast<double>(args.nr) * args.rate_r + 0.5);
        rows.push_back(latency_table_row(args.nr, args.rate_r, args.t, k * k));
    } else {
        for (std::size_t nr : {32u, 64u, 128u, 256u, 512u}) {
            for (double rr : {7.0 / 8.0, 0.9}) {
                const std::size_t k =
                    static_cast<std::size_t>(static_cast<double>(nr) * rr + 0.5);
                rows.push_back(latency_table_row(nr, rr, args.t, k * k));
            }
        }
    }
    print_table_rows(rows);

    if (args.threshold_n > 0) {
        const std::size_t nr = args.nr ? args.nr : 32;
        const double rate = args.rate > 0.0 ? args.rate : args.rate_r * args.rate_r;
        std::printf("\ngamma_max_sc(N=%zu, Nr=%zu, t_avg=%g) = %.12g\n", args.threshold_n,
                    nr, args.t_avg, gamma_max_sc(args.threshold_n, nr, args.t_avg));
        std::printf("gamma_max_scl(N=%zu, Nr=%zu, R=%g, Rr=%g, t_avg=%g) = %.12g\n",
                    args.threshold_n, nr, rate, args.rate_r,
                    args.t_avg, gamma_max_scl(args.threshold_n, nr, rate, args.rate_r, args.t_avg));
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"product-polar code toolkit"};
    app.require_subcommand(1);

    ConstructArgs cons;
    CLI::App* construct = app.add_subcommand("construct", "design frozen sets");
    construct->add_option("--mode", cons.mode, "flat | product | hybrid");
    construct->add_option("--n", cons.n, "code length (flat)");
    construct->add_option("--k", cons.k, "code dimension (flat / hybrid target)");
    construct->add_option("--nr", cons.nr, "row component length");
    construct->add_option("--nc", cons.nc, "column component length");
    construct->add_option("--kr", cons.kr, "row component dimension");
    construct->add_option("--kc", cons.kc, "column component dimension");
    construct->add_option("--design-z0", cons.z0, "initial Bhattacharyya value");
    construct->add_option("--order-file", cons.order_file, "reliability order file");
    construct->add_option("--output", cons.output, "output path (default stdout)");
    construct->add_flag("--emit-order", cons.emit_order, "write the reliability order");

    DecodeArgs dec;
    CLI::App* decode = app.add_subcommand("decode", "decode one LLR vector");
    decode->add_option("--frozen", dec.frozen_file, "frozen-set file")->required();
    decode->add_option("--llr", dec.llr_file, "LLR file, '-' for stdin");
    decode->add_option("--list", dec.list, "SCL list size; emits all candidates");
    decode->add_option("--metric", dec.metric, "minsum | exact");
    decode->add_flag("--two-step", dec.two_step, "use the two-step product decoder");
    decode->add_option("--variant", dec.variant, "sc-hd | scl-hd | scl-sd");
    decode->add_option("--t", dec.t, "max step-1 iterations");
    decode->add_option("--list-size", dec.list_size, "component list size");
    decode->add_option("--saturation", dec.saturation, "saturation magnitude");
    decode->add_option("--agreement", dec.agreement, "soft-output consensus magnitude");
    decode->add_flag("--frozen-check,!--no-frozen-check", dec.frozen_check,
                     "re-encode check on the full frozen set");
    decode->add_option("--nr", dec.nr, "row component length");
    decode->add_option("--nc", dec.nc, "column component length");

    std::string config_path;
    CLI::App* simulate = app.add_subcommand("simulate", "Monte-Carlo BER simulation");
    simulate->add_option("--config", config_path, "key=value experiment config")->required();

    LatencyArgs lat;
    CLI::App* latency = app.add_subcommand("latency", "time-step model evaluation");
    latency->add_option("--t", lat.t, "max step-1 iterations");
    latency->add_option("--nr", lat.nr, "component length (single row)");
    latency->add_option("--rate-r", lat.rate_r, "component rate");
    latency->add_option("--t-avg", lat.t_avg, "average iterations for thresholds");
    latency->add_option("--threshold-n", lat.threshold_n,
                        "competing flat code length; prints gamma thresholds");
    latency->add_option("--rate", lat.rate, "competing flat code rate");

    CLI11_PARSE(app, argc, argv);

    try {
        if (construct->parsed())
            return run_construct(cons);
        if (decode->parsed())
            return run_decode(dec);
        if (simulate->parsed())
            return run_simulate(config_path);
        if (latency->parsed())
            return run_latency(lat);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
