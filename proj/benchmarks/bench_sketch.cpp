#include <benchmark/benchmark.h>

#include <functional>

#include "sfd/bench.hpp"
#include "sfd/sketch.hpp"

namespace {

sfd::SparseBuffer make_stream(std::size_t n, std::size_t d, std::size_t z, std::uint64_t seed) {
    sfd::SyntheticSpec spec{n, d, z, 0.9, seed};
    sfd::SyntheticStream gen(spec);
    sfd::SparseBuffer buf(d);
    while (gen.has_next()) buf.append_row(gen.next());
    return buf;
}

void each_row(const sfd::SparseBuffer& a,
              const std::function<void(const sfd::SparseRow&)>& fn) {
    const auto& offs = a.row_offsets();
    sfd::SparseRow row;
    for (std::size_t i = 0; i + 1 < offs.size(); ++i) {
        row.indices.assign(a.col_indices().begin() + offs[i],
                           a.col_indices().begin() + offs[i + 1]);
        row.values.assign(a.values().begin() + offs[i], a.values().begin() + offs[i + 1]);
        fn(row);
    }
}

void BM_SparseMatvec(benchmark::State& state) {
    const auto d = static_cast<std::size_t>(state.range(0));
    sfd::SparseBuffer a = make_stream(2000, d, 30, 1);
    std::vector<double> x(d, 1.0);
    for (auto _ : state) {
        auto y = a.matvec(x);
        benchmark::DoNotOptimize(y.data());
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) *
                            static_cast<std::int64_t>(a.nnz()));
}
BENCHMARK(BM_SparseMatvec)->Arg(500)->Arg(2000);

void BM_FdAppend(benchmark::State& state) {
    const auto z = static_cast<std::size_t>(state.range(0));
    const std::size_t n = 2000, d = 500, ell = 20;
    sfd::SparseBuffer a = make_stream(n, d, z, 2);
    for (auto _ : state) {
        sfd::FdSketcher fd(ell, d);
        std::vector<double> dense(d, 0.0);
        each_row(a, [&](const sfd::SparseRow& r) {
            std::fill(dense.begin(), dense.end(), 0.0);
            for (std::size_t k = 0; k < r.indices.size(); ++k) dense[r.indices[k]] = r.values[k];
            fd.append(dense);
        });
        auto b = fd.finalize();
        benchmark::DoNotOptimize(b.data.data());
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) *
                            static_cast<std::int64_t>(a.nnz()));
}
BENCHMARK(BM_FdAppend)->Arg(10)->Arg(50)->Unit(benchmark::kMillisecond);

void BM_SfdAppend(benchmark::State& state) {
    const auto z = static_cast<std::size_t>(state.range(0));
    const std::size_t n = 2000, d = 500, ell = 20;
    sfd::SparseBuffer a = make_stream(n, d, z, 2);
    for (auto _ : state) {
        sfd::SketchConfig cfg;
        cfg.ell = ell;
        cfg.d = d;
        cfg.seed = 3;
        cfg.power.q_override = 8;
        sfd::SfdSketcher s(cfg);
        each_row(a, [&](const sfd::SparseRow& r) { s.append(r); });
        auto b = s.finalize();
        benchmark::DoNotOptimize(b.data.data());
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) *
                            static_cast<std::int64_t>(a.nnz()));
}
BENCHMARK(BM_SfdAppend)->Arg(10)->Arg(50)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
