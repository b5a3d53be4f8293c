#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <iostream>

#include "sfd/bench.hpp"
#include "sfd/common.hpp"
#include "sfd/io.hpp"
#include "sfd/sketch.hpp"

using nlohmann::json;

namespace {

struct SketchArgs {
    std::string input;
    std::string output;
    std::string algo = "sfd";
    std::size_t ell = 50;
    double delta = 0.1;
    std::uint64_t seed = 0;
    double epsilon = 0.25;
    double q_const = 1.0;
    bool fast_q = false;
    long long q_override = -1;
    long long cols = -1;
};

json power_json(const sfd::PowerConfig& p) {
    json j;
    j["epsilon"] = p.epsilon;
    j["q_constant"] = p.q_constant;
    if (p.q_override) j["q_override"] = *p.q_override;
    return j;
}

int run_sketch(const SketchArgs& a) {
    sfd::SketchConfig cfg;
    cfg.ell = a.ell;
    cfg.delta = a.delta;
    cfg.seed = a.seed;
    cfg.power.epsilon = a.epsilon;
    cfg.power.q_constant = a.q_const;
    if (a.fast_q) cfg.power.q_override = 8;
    if (a.q_override >= 0) cfg.power.q_override = static_cast<std::size_t>(a.q_override);

    std::optional<std::size_t> plain_cols;
    if (a.cols >= 0) plain_cols = static_cast<std::size_t>(a.cols);
    auto stream = sfd::open_row_stream(a.input, plain_cols);
    cfg.d = stream->cols();

    sfd::DenseMatrix sketch;
    if (a.algo == "fd") {
        sfd::FdSketcher fd(cfg.ell, cfg.d);
        sfd::SparseRow row;
        std::vector<double> dense(cfg.d, 0.0);
        while (stream->next(row)) {
            std::fill(dense.begin(), dense.end(), 0.0);
            for (std::size_t k = 0; k < row.indices.size(); ++k)
                dense[row.indices[k]] = row.values[k];
            fd.append(dense);
        }
        sketch = fd.finalize();
    } else if (a.algo == "sfd") {
        sfd::SfdSketcher sfd_state(cfg);
        sfd::SparseRow row;
        while (stream->next(row)) sfd_state.append(row);
        sketch = sfd_state.finalize();
    } else {
        throw std::invalid_argument("sketch: --algo must be fd or sfd");
    }
    sfd::write_sketch_csv(a.output, sketch);

    json manifest;
    manifest["command"] = "sketch";
    manifest["version"] = sfd::kToolVersion;
    manifest["input"] = a.input;
    manifest["output"] = a.output;
    manifest["algo"] = a.algo;
    manifest["ell"] = cfg.ell;
    manifest["d"] = cfg.d;
    manifest["delta"] = cfg.delta;
    manifest["seed"] = cfg.seed;
    manifest["power"] = power_json(cfg.power);
    sfd::write_manifest(a.output, manifest.dump(2));
    return 0;
}

int run_generate(std::size_t n, std::size_t d, std::size_t z, std::uint64_t seed,
                 const std::string& output) {
    sfd::SyntheticSpec spec{n, d, z, 0.9, seed};
    spec.validate();
    sfd::SyntheticStream gen(spec);
    sfd::MatrixMarketWriter writer(output, n, d, n * z);
    std::size_t row_index = 0;
    while (gen.has_next()) writer.append_row(row_index++, gen.next());
    writer.close();

    json manifest;
    manifest["command"] = "generate";
    manifest["version"] = sfd::kToolVersion;
    manifest["output"] = output;
    manifest["n"] = n;
    manifest["d"] = d;
    manifest["z"] = z;
    manifest["p_head"] = spec.p_head;
    manifest["seed"] = seed;
    sfd::write_manifest(output, manifest.dump(2));
    return 0;
}

sfd::SparseBuffer load_matrix(const std::string& path, long long cols) {
    std::optional<std::size_t> plain_cols;
    if (cols >= 0) plain_cols = static_cast<std::size_t>(cols);
    auto stream = sfd::open_row_stream(path, plain_cols);
    sfd::SparseBuffer buf(stream->cols());
    sfd::SparseRow row;
    while (stream->next(row)) buf.append_row(row);
    return buf;
}

int run_eval(const std::string& matrix_path, const std::string& sketch_path, std::size_t k,
             const std::string& output, long long cols, std::uint64_t seed) {
    sfd::SparseBuffer a = load_matrix(matrix_path, cols);
    sfd::DenseMatrix sketch = sfd::read_sketch_csv(sketch_path);
    if (sketch.cols != a.cols())
        throw std::invalid_argument("eval: matrix and sketch dimensions are incompatible");

    sfd::Rng rng(seed);
    sfd::TailResult tail = sfd::exact_tail(a, k, rng);

    sfd::MetricsRow row;
    row.algo = "eval";
    row.n = a.rows();
    row.d = a.cols();
    row.ell = sketch.rows;
    row.z = a.rows() ? a.nnz() / a.rows() : 0;
    row.k = k;
    row.seed = seed;
    if (k >= 1) row.proj_err = sfd::proj_err(a, sketch, k, tail);
    row.cov_err = sfd::cov_err(a, sketch, rng);
    sfd::write_metrics_csv(output, {row});

    json manifest;
    manifest["command"] = "eval";
    manifest["version"] = sfd::kToolVersion;
    manifest["matrix"] = matrix_path;
    manifest["sketch"] = sketch_path;
    manifest["output"] = output;
    manifest["k"] = k;
    manifest["seed"] = seed;
    sfd::write_manifest(output, manifest.dump(2));
    return 0;
}

std::size_t scaled(std::size_t v, double scale, std::size_t lo) {
    const auto s = static_cast<std::size_t>(std::llround(static_cast<double>(v) * scale));
    return std::max(lo, s);
}

int run_bench(const std::string& sweep, const std::string& out_csv, double scale,
              std::uint64_t seed, bool fast_q) {
    const std::size_t def_n = scaled(10000, scale, 50);
    const std::size_t def_d = scaled(1000, scale, 20);
    const std::size_t def_ell = scaled(50, scale, 4);
    const std::size_t def_z = scaled(100, scale, 2);

    std::vector<std::size_t> values;
    if (sweep == "n")
        for (std::size_t v : {10000u, 20000u, 30000u, 40000u, 50000u, 60000u})
            values.push_back(scaled(v, scale, 50));
    else if (sweep == "d")
        for (std::size_t v : {1000u, 2000u, 3000u, 4000u, 5000u, 6000u})
            values.push_back(scaled(v, scale, 20));
    else if (sweep == "ell")
        for (std::size_t v : {5u, 10u, 25u, 50u, 75u, 100u})
            values.push_back(scaled(v, scale, 2));
    else if (sweep == "nnz")
        for (std::size_t v : {5u, 25u, 50u, 100u, 250u, 500u})
            values.push_back(scaled(v, scale, 2));
    else
        throw std::invalid_argument("bench: --sweep must be one of n, d, ell, nnz");

    std::vector<sfd::MetricsRow> rows;
    std::size_t cell = 0;
    for (std::size_t v : values) {
        std::size_t n = def_n, d = def_d, ell = def_ell, z = def_z;
        if (sweep == "n") n = v;
        else if (sweep == "d") d = v;
        else if (sweep == "ell") ell = v;
        else z = v;
        z = std::min(z, d);
        ell = std::min(ell, d);
        const std::size_t k = std::max<std::size_t>(1, std::min<std::size_t>(10, ell - 1));

        sfd::SyntheticSpec spec{n, d, z, 0.9, seed + 1000 * cell};
        sfd::SyntheticStream gen(spec);
        sfd::SparseBuffer a(d);
        while (gen.has_next()) a.append_row(gen.next());

        sfd::SketchConfig cfg;
        cfg.ell = ell;
        cfg.d = d;
        cfg.seed = seed + 1000 * cell;
        if (fast_q) cfg.power.q_override = 8;

        sfd::Rng tail_rng(cfg.seed ^ 0x5bf03635ULL);
        sfd::TailResult tail = sfd::exact_tail(a, k, tail_rng);
        rows.push_back(sfd::timed_run("fd", a, cfg, k, z, &tail));
        rows.push_back(sfd::timed_run("sfd", a, cfg, k, z, &tail));
        std::cerr << "bench: " << sweep << "=" << v << " done\n";
        cell += 1;
    }
    sfd::write_metrics_csv(out_csv, rows);

    json manifest;
    manifest["command"] = "bench";
    manifest["version"] = sfd::kToolVersion;
    manifest["sweep"] = sweep;
    manifest["scale"] = scale;
    manifest["seed"] = seed;
    manifest["fast_q"] = fast_q;
    manifest["out_csv"] = out_csv;
    sfd::write_manifest(out_csv, manifest.dump(2));
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Streaming matrix sketching: FrequentDirections and "
                 "SparseFrequentDirections"};
    app.require_subcommand(1);

    SketchArgs sk;
    auto* sketch_cmd = app.add_subcommand("sketch", "Sketch a row stream into an ell x d matrix");
    sketch_cmd->add_option("--input", sk.input)->required();
    sketch_cmd->add_option("--output", sk.output)->required();
    sketch_cmd->add_option("--algo", sk.algo)->check(CLI::IsMember({"fd", "sfd"}));
    sketch_cmd->add_option("--ell", sk.ell)->required();
    sketch_cmd->add_option("--delta", sk.delta);
    sketch_cmd->add_option("--seed", sk.seed);
    sketch_cmd->add_option("--epsilon", sk.epsilon);
    sketch_cmd->add_option("--q-const", sk.q_const);
    sketch_cmd->add_flag("--fast-q", sk.fast_q, "Use 8 power sweeps instead of the theory default");
    sketch_cmd->add_option("--q-override", sk.q_override);
    sketch_cmd->add_option("--cols", sk.cols, "Column count (required for plain format input)");

    std::size_t gn = 10000, gd = 1000, gz = 100;
    std::uint64_t gseed = 0;
    std::string gout;
    auto* gen_cmd = app.add_subcommand("generate", "Generate a synthetic sparse row stream");
    gen_cmd->add_option("--n", gn);
    gen_cmd->add_option("--d", gd);
    gen_cmd->add_option("--z", gz);
    gen_cmd->add_option("--seed", gseed);
    gen_cmd->add_option("--output", gout)->required();

    std::string ematrix, esketch, eout;
    std::size_t ek = 10;
    long long ecols = -1;
    std::uint64_t eseed = 0;
    auto* eval_cmd = app.add_subcommand("eval", "Evaluate a sketch against its source matrix");
    eval_cmd->add_option("--matrix", ematrix)->required();
    eval_cmd->add_option("--sketch", esketch)->required();
    eval_cmd->add_option("--k", ek);
    eval_cmd->add_option("--output", eout)->required();
    eval_cmd->add_option("--cols", ecols);
    eval_cmd->add_option("--seed", eseed);

    std::string bsweep, bout;
    double bscale = 1.0;
    std::uint64_t bseed = 0;
    bool bfast = false;
    auto* bench_cmd = app.add_subcommand("bench", "Sweep one parameter, benchmark fd vs sfd");
    bench_cmd->add_option("--sweep", bsweep)->required()->check(CLI::IsMember({"n", "d", "ell", "nnz"}));
    bench_cmd->add_option("--out-csv", bout)->required();
    bench_cmd->add_option("--scale", bscale);
    bench_cmd->add_option("--seed", bseed);
    bench_cmd->add_flag("--fast-q", bfast);

    try {
        app.parse(argc, argv);
        if (*sketch_cmd) return run_sketch(sk);
        if (*gen_cmd) return run_generate(gn, gd, gz, gseed, gout);
        if (*eval_cmd) return run_eval(ematrix, esketch, ek, eout, ecols, eseed);
        if (*bench_cmd) return run_bench(bsweep, bout, bscale, bseed, bfast);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    } catch (const sfd::numerical_error& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
