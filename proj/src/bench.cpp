#include "ttc/bench.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <thread>

#include "ttc/bplus_interval_set.hpp"
#include "ttc/interval_set.hpp"
#include "ttc/ttc.hpp"

namespace ttc::bench {

std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t bound) {
    // Rejection keeps the draw unbiased: discard the low values that would
    // make some residues more likely than others.
    const std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
        const std::uint64_t r = rng();
        if (r >= threshold) return r % bound;
    }
}

std::vector<Interval> interval_workload(Time tau, std::uint64_t seed) {
    std::vector<Interval> out;
    out.reserve(std::size_t{tau} * (std::size_t{tau} + 1) / 2);
    for (Time t1 = 1; t1 <= tau; ++t1)
        for (Time t2 = t1; t2 <= tau; ++t2) out.push_back({t1, t2});
    shuffle(out, seed);
    return out;
}

std::vector<Contact> contact_workload(Vertex n, Time tau, Time delta, std::uint64_t seed) {
    std::vector<Contact> out;
    if (std::uint64_t{tau} + 1 <= delta) return out;
    const Time last = tau + 1 - delta;
    out.reserve(std::size_t{n} * (n > 0 ? n - 1 : 0) * last);
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = 0; v < n; ++v)
            if (u != v)
                for (Time t = 1; t <= last; ++t) out.push_back({u, v, t});
    shuffle(out, seed);
    return out;
}

namespace {

using Clock = std::chrono::steady_clock;

template <class Apply, class Bytes>
RunResult drive(std::size_t ops, std::uint64_t sample_every, Apply apply, Bytes bytes) {
    RunResult res;
    res.ops = ops;
    std::uint64_t elapsed = 0;
    for (std::size_t k = 0; k < ops; ++k) {
        const auto start = Clock::now();
        apply(k);
        const auto stop = Clock::now();
        elapsed += static_cast<std::uint64_t>(
            std::chrono::duration_cast<std::chrono::nanoseconds>(stop - start).count());
        const std::uint64_t index = k + 1;
        if (index % sample_every == 0 || index == ops) res.samples.push_back({index, elapsed, bytes()});
    }
    res.total_ns = elapsed;
    res.final_bytes = res.samples.empty() ? 0 : res.samples.back().accounted_bytes;
    return res;
}

template <class Set>
RunResult run_intervals(const Spec& spec, std::uint64_t seed) {
    const auto work = interval_workload(spec.tau, seed);
    Set set;
    auto res = drive(
        work.size(), spec.sample_every, [&](std::size_t k) { set.insert(work[k].departure, work[k].arrival); },
        [&] { return set.memory_bytes(); });
    std::ostringstream os;
    for (const auto& iv : set.enumerate()) os << iv << '\n';
    res.dump = os.str();
    return res;
}

template <class Set>
RunResult run_contacts(const Spec& spec, std::uint64_t seed) {
    const auto work = contact_workload(spec.n, spec.tau, spec.delta, seed);
    TemporalClosure<Set> ttc({spec.n, spec.tau, spec.delta});
    auto res = drive(
        work.size(), spec.sample_every, [&](std::size_t k) { ttc.add_contact(work[k]); },
        [&] { return ttc.memory_bytes(); });
    std::ostringstream os;
    for (Vertex u = 0; u < spec.n; ++u)
        for (Vertex v = 0; v < spec.n; ++v) {
            const auto entries = ttc.set(u, v).entries();
            if (entries.empty()) continue;
            os << u << ' ' << v << ':';
            for (const auto& e : entries) os << ' ' << e.interval << '>' << e.successor;
            os << '\n';
        }
    res.dump = os.str();
    return res;
}

}  // namespace

RunResult run_once(const Spec& spec, unsigned rep) {
    require(spec.sample_every >= 1, "bench: sample interval must be at least 1");
    require(spec.delta >= 1, "bench: delta must be at least 1");
    const std::uint64_t seed = spec.seed + rep;
    if (spec.workload == Workload::intervals) {
        switch (spec.impl) {
            case Impl::compact_dense: return run_intervals<DenseIntervalSet>(spec, seed);
            case Impl::compact_sparse: return run_intervals<SparseIntervalSet>(spec, seed);
            case Impl::bptree: return run_intervals<BPlusIntervalSet<>>(spec, seed);
        }
    }
    require(spec.n >= 1, "bench: need at least one vertex");
    switch (spec.impl) {
        case Impl::compact_dense: return run_contacts<DenseReachSet>(spec, seed);
        case Impl::compact_sparse: return run_contacts<SparseReachSet>(spec, seed);
        case Impl::bptree: return run_contacts<BaselineReachSet>(spec, seed);
    }
    return {};
}

std::vector<RunResult> run_all(const Spec& spec, unsigned threads) {
    std::vector<RunResult> runs(spec.reps);
    threads = std::max(1u, std::min(threads, spec.reps));
    std::atomic<unsigned> next{0};
    auto worker = [&] {
        for (unsigned r; (r = next++) < spec.reps;) runs[r] = run_once(spec, r);
    };
    if (threads == 1) {
        worker();
        return runs;
    }
    std::vector<std::thread> pool;
    for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    return runs;
}

void write_csv(std::ostream& os, const std::vector<RunResult>& runs) {
    os << "rep,op_index,cumulative_ns,accounted_bytes\n";
    for (std::size_t r = 0; r < runs.size(); ++r)
        for (const auto& s : runs[r].samples)
            os << r << ',' << s.op_index << ',' << s.cumulative_ns << ',' << s.accounted_bytes << '\n';
}

void write_summary(std::ostream& os, const std::vector<RunResult>& runs) {
    os << "rep,ops,total_ns,final_bytes\n";
    double ns = 0, bytes = 0;
    for (std::size_t r = 0; r < runs.size(); ++r) {
        os << r << ',' << runs[r].ops << ',' << runs[r].total_ns << ',' << runs[r].final_bytes << '\n';
        ns += static_cast<double>(runs[r].total_ns);
        bytes += static_cast<double>(runs[r].final_bytes);
    }
    if (!runs.empty()) {
        const auto k = static_cast<double>(runs.size());
        os << "mean," << runs.front().ops << ',' << static_cast<std::uint64_t>(ns / k) << ','
           << static_cast<std::uint64_t>(bytes / k) << '\n';
    }
}

void write_gnuplot(std::ostream& os, const std::string& csv_path, const Spec& spec) {
    const std::string title = std::string(to_string(spec.workload)) + ", " + to_string(spec.impl) +
                              ", tau=" + std::to_string(spec.tau);
    os << "# gnuplot " << csv_path << ".gp\n"
       << "set datafile separator ','\n"
       << "set key autotitle columnhead\n"
       << "set terminal pngcairo size 1200,500\n"
       << "set output '" << csv_path << ".png'\n"
       << "set multiplot layout 1,2 title '" << title << "'\n"
       << "set xlabel 'insertions'\n"
       << "set ylabel 'cumulative time (ms)'\n"
       << "plot for [r=0:" << (spec.reps ? spec.reps - 1 : 0) << "] '" << csv_path
       << "' using ($1==r ? $2 : 1/0):($3/1e6) with lines notitle\n"
       << "set ylabel 'memory (KiB)'\n"
       << "plot for [r=0:" << (spec.reps ? spec.reps - 1 : 0) << "] '" << csv_path
       << "' using ($1==r ? $2 : 1/0):($4/1024) with lines notitle\n"
       << "unset multiplot\n";
}

const char* to_string(Impl impl) {
    switch (impl) {
        case Impl::compact_dense: return "compact-dense";
        case Impl::compact_sparse: return "compact-sparse";
        case Impl::bptree: return "bptree";
    }
    return "?";
}

const char* to_string(Workload w) { return w == Workload::intervals ? "intervals" : "contacts"; }

namespace {

unsigned env_threads() {
    const char* v = std::getenv("TTC_BENCH_THREADS");
    if (!v || !*v) return 1;
    char* end = nullptr;
    const unsigned long n = std::strtoul(v, &end, 10);
    if (*end != '\0' || n == 0) return 1;
    return static_cast<unsigned>(std::min<unsigned long>(n, 1024));
}

bool write_file(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    f << text;
    f.close();
    return static_cast<bool>(f);
}

}  // namespace

int cli_main(int argc, char** argv) {
    CLI::App app{"Cumulative insertion time and memory of interval-set implementations"};
    Spec spec;
    std::string out = "-";
    std::string dump_path;
    const std::map<std::string, Workload> workloads{{"intervals", Workload::intervals},
                                                    {"contacts", Workload::contacts}};
    const std::map<std::string, Impl> impls{
        {"compact-dense", Impl::compact_dense}, {"compact-sparse", Impl::compact_sparse}, {"bptree", Impl::bptree}};
    app.add_option("--workload", spec.workload, "intervals or contacts")
        ->required()
        ->transform(CLI::CheckedTransformer(workloads, CLI::ignore_case));
    app.add_option("--tau", spec.tau, "lifetime length")->required();
    app.add_option("--n", spec.n, "vertices (contacts workload)")->capture_default_str()->check(CLI::PositiveNumber);
    app.add_option("--delta", spec.delta, "traversal latency")->capture_default_str()->check(CLI::PositiveNumber);
    app.add_option("--seed", spec.seed, "shuffle seed of repetition 0")->capture_default_str();
    app.add_option("--reps", spec.reps, "repetitions")->capture_default_str();
    app.add_option("--impl", spec.impl, "compact-dense, compact-sparse or bptree")
        ->required()
        ->transform(CLI::CheckedTransformer(impls, CLI::ignore_case));
    app.add_option("--out", out, "CSV path, '-' for stdout")->capture_default_str();
    app.add_option("--sample-every", spec.sample_every, "record every k-th insertion")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    app.add_option("--dump", dump_path, "write the final structure of every repetition here");
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    std::vector<RunResult> runs;
    try {
        runs = run_all(spec, env_threads());
    } catch (const std::exception& e) {
        std::cerr << "ttc_bench: " << e.what() << '\n';
        return 1;
    }

    std::ostringstream csv;
    write_csv(csv, runs);
    if (out == "-") {
        std::cout << csv.str();
    } else {
        std::ostringstream summary, gp;
        write_summary(summary, runs);
        write_gnuplot(gp, out, spec);
        if (!write_file(out, csv.str()) || !write_file(out + ".summary.csv", summary.str()) ||
            !write_file(out + ".gp", gp.str())) {
            std::cerr << "ttc_bench: cannot write " << out << '\n';
            return 2;
        }
    }
    if (!dump_path.empty()) {
        std::ostringstream d;
        for (std::size_t r = 0; r < runs.size(); ++r) d << "# rep " << r << '\n' << runs[r].dump;
        if (!write_file(dump_path, d.str())) {
            std::cerr << "ttc_bench: cannot write " << dump_path << '\n';
            return 2;
        }
    }
    return 0;
}

}  // namespace ttc::bench
