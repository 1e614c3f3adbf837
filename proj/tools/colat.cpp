// colat: exact-arithmetic lattice decoding toolkit.
//
// Subcommands: gen (instances), solve (single target), batch (precompute
// once, decode many), bench-tradeoff (time/quality table over block sizes),
// verify (exact invariant suites).

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "colat/colattice.hpp"
#include "colat/cvpp.hpp"
#include "colat/io.hpp"
#include "colat/latgen.hpp"
#include "colat/selftest.hpp"

using namespace colat;
using nlohmann::json;
using Clock = std::chrono::steady_clock;

namespace {

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

Instance load_instance(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw error("cannot open basis file '" + path + "'");
    return read_instance(in);
}

std::vector<RatVec> load_targets(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw error("cannot open target file '" + path + "'");
    return read_targets(in);
}

double normalized_distance(const Rat& dist_sq, double log2_covol_sq, std::size_t n) {
    if (sgn(dist_sq) == 0) return 0.0;
    return std::exp2(0.5 * rat_log2(dist_sq) - log2_covol_sq / (2.0 * double(n)));
}

json rat_vec_json(const RatVec& v) {
    json a = json::array();
    for (const auto& x : v) a.push_back(format_rat(x));
    return a;
}

json int_vec_json(const IntVec& v) {
    json a = json::array();
    for (const auto& x : v) a.push_back(x.get_str());
    return a;
}

json decode_result_json(const DecodeResult& r, double log2_covol_sq, std::size_t n) {
    json j;
    j["point"] = int_vec_json(r.point);
    j["dist_sq"] = format_rat(r.dist_sq);
    j["per_block_dist_sq"] = rat_vec_json(r.per_block_dist_sq);
    j["normalized_distance"] = normalized_distance(r.dist_sq, log2_covol_sq, n);
    return j;
}

RemainderPlacement placement_of(const std::string& s) {
    if (s == "trailing") return RemainderPlacement::trailing;
    if (s == "penultimate") return RemainderPlacement::penultimate;
    throw error("unknown remainder placement '" + s + "'");
}

HsvpOracleKind oracle_of(const std::string& name, std::size_t beta, int tours,
                         const std::string& delta) {
    if (name == "enum") return HsvpOracleKind::exact_enum();
    if (name == "lll") return HsvpOracleKind::lll(parse_rat(delta));
    if (name == "bkz") return HsvpOracleKind::bkz(beta, tours);
    throw error("unknown oracle kind '" + name + "'");
}

int cmd_gen(const std::string& kind, unsigned n, unsigned bits, std::uint64_t seed,
            const std::string& out_path) {
    Instance inst;
    if (kind == "gm")
        inst = goldstein_mayer(n, bits, seed);
    else if (kind == "knapsack")
        inst = knapsack(n, bits, seed);
    else
        throw error("unknown instance kind '" + kind + "'");
    std::ofstream out(out_path);
    if (!out) throw error("cannot open output file '" + out_path + "'");
    write_instance(out, inst);
    return 0;
}

int cmd_solve(const std::string& basis_path, const std::string& target_path,
              const std::string& algo, std::size_t beta, const std::string& remainder,
              const std::string& oracle, std::size_t oracle_beta, int oracle_tours,
              const std::string& oracle_delta) {
    Instance inst = load_instance(basis_path);
    auto targets = load_targets(target_path);
    if (targets.size() != 1) throw error("solve expects exactly one target vector");
    RatVec t = targets[0];
    if (t.size() != inst.basis.dim()) throw error("target dimension mismatch");
    std::size_t n = inst.basis.rank();
    double log2_covol_sq = rat_log2(covolume_sq(inst.basis));
    CounterSnapshot before = instrument::counters();

    json rec;
    rec["command"] = "solve";
    rec["algo"] = algo;
    rec["n"] = n;
    rec["seed"] = inst.seed;
    DecodeResult result;
    double pre_s = 0, dec_s = 0;
    if (algo == "babai" || algo == "colattice" || algo == "exact") {
        if (algo != "colattice" && beta != 0)
            throw error("--beta only applies to --algo colattice");
        std::size_t eff_beta = algo == "babai" ? 1 : (algo == "exact" ? n : beta);
        if (eff_beta == 0) throw error("--beta is required for --algo colattice");
        rec["params"] = {{"beta", eff_beta}, {"remainder", remainder}};
        auto t0 = Clock::now();
        PrecomputedDecoder dec = precompute(inst.basis, eff_beta, placement_of(remainder));
        pre_s = seconds_since(t0);
        auto t1 = Clock::now();
        result = algo == "babai" ? nearest_plane(dec.basis, dec.gso, t)
                                 : nearest_colattice(dec, t);
        dec_s = seconds_since(t1);
    } else if (algo == "cvpp") {
        HsvpOracleKind kind = oracle_of(oracle, oracle_beta, oracle_tours, oracle_delta);
        rec["params"] = {{"oracle", oracle}};
        auto t0 = Clock::now();
        CvppPrecomp pre = cvpp_precompute(inst.basis, kind);
        pre_s = seconds_since(t0);
        auto t1 = Clock::now();
        result = cvpp_decode(pre, t);
        dec_s = seconds_since(t1);
    } else {
        throw error("unknown algorithm '" + algo + "'");
    }
    json out = decode_result_json(result, log2_covol_sq, n);
    for (auto& [k, v] : out.items()) rec[k] = v;
    rec["wall_times"] = {{"precompute_s", pre_s}, {"decode_s", dec_s}};
    rec["oracle_call_count"] = instrument::counters().oracle_calls() - before.oracle_calls();
    std::cout << rec.dump() << "\n";
    return 0;
}

int cmd_batch(const std::string& basis_path, const std::string& targets_path, std::size_t beta,
              const std::string& remainder, unsigned threads) {
    Instance inst = load_instance(basis_path);
    auto targets = load_targets(targets_path);
    std::size_t n = inst.basis.rank();
    double log2_covol_sq = rat_log2(covolume_sq(inst.basis));
    CounterSnapshot before = instrument::counters();
    auto t0 = Clock::now();
    PrecomputedDecoder dec = precompute(inst.basis, beta, placement_of(remainder));
    double pre_s = seconds_since(t0);
    json meta;
    meta["command"] = "batch";
    meta["n"] = n;
    meta["beta"] = beta;
    meta["seed"] = inst.seed;
    meta["targets"] = targets.size();
    meta["precompute_s"] = pre_s;
    meta["oracle_call_count_precompute"] =
        instrument::counters().oracle_calls() - before.oracle_calls();
    std::cout << meta.dump() << "\n";

    struct Slot {
        json record;
        bool failed = false;
    };
    std::vector<Slot> slots(targets.size());
    auto work = [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i) {
            auto s0 = Clock::now();
            json j;
            j["index"] = i;
            try {
                DecodeResult r = nearest_colattice(dec, targets[i]);
                json body = decode_result_json(r, log2_covol_sq, n);
                for (auto& [k, v] : body.items()) j[k] = v;
            } catch (const error& e) {
                j["error"] = e.what();
                slots[i].failed = true;
            }
            j["decode_s"] = seconds_since(s0);
            slots[i].record = std::move(j);
        }
    };
    if (threads <= 1 || targets.size() < 2) {
        work(0, targets.size());
    } else {
        unsigned nt = std::min<unsigned>(threads, targets.size());
        std::vector<std::thread> pool;
        std::size_t chunk = (targets.size() + nt - 1) / nt;
        for (unsigned w = 0; w < nt; ++w) {
            std::size_t lo = w * chunk;
            std::size_t hi = std::min(targets.size(), lo + chunk);
            if (lo < hi) pool.emplace_back(work, lo, hi);
        }
        for (auto& th : pool) th.join();
    }
    bool any_failed = false;
    for (auto& s : slots) {
        std::cout << s.record.dump() << "\n";
        any_failed |= s.failed;
    }
    return any_failed ? 1 : 0;
}

int cmd_bench_tradeoff(const std::string& kind, unsigned n, unsigned bits,
                       const std::vector<std::size_t>& betas, unsigned target_count,
                       unsigned seed_count, const std::string& remainder,
                       const std::string& out_path) {
    for (std::size_t i = 1; i < betas.size(); ++i)
        if (betas[i] <= betas[i - 1]) throw error("--betas must be strictly increasing");
    std::ostream* os = &std::cout;
    std::ofstream file;
    if (!out_path.empty()) {
        file.open(out_path);
        if (!file) throw error("cannot open output file '" + out_path + "'");
        os = &file;
    }
    (*os) << "n,beta,seed,mean_normalized_distance,precompute_s,mean_decode_s,gso_profile\n";
    for (std::uint64_t seed = 1; seed <= seed_count; ++seed) {
        Instance inst = kind == "knapsack" ? knapsack(n, bits, seed)
                                           : goldstein_mayer(n, bits, seed);
        double log2_covol_sq = rat_log2(covolume_sq(inst.basis));
        std::vector<RatVec> targets;
        for (unsigned ti = 0; ti < target_count; ++ti)
            targets.push_back(uniform_target(inst.basis, seed * 1000003 + ti));
        for (std::size_t beta : betas) {
            auto t0 = Clock::now();
            PrecomputedDecoder dec = precompute(inst.basis, beta, placement_of(remainder));
            double pre_s = seconds_since(t0);
            double nd_sum = 0;
            auto t1 = Clock::now();
            for (const auto& t : targets) {
                DecodeResult r = nearest_colattice(dec, t);
                nd_sum += normalized_distance(r.dist_sq, log2_covol_sq, n);
            }
            double dec_s = seconds_since(t1) / double(targets.size());
            std::ostringstream profile;
            profile.setf(std::ios::fixed);
            profile.precision(4);
            for (std::size_t i = 0; i < dec.gso.rank(); ++i)
                profile << (i ? ";" : "") << 0.5 * rat_log2(dec.gso.bstar_sq[i]);
            std::ostringstream line;
            line.setf(std::ios::fixed);
            line.precision(6);
            line << n << ',' << beta << ',' << seed << ',' << nd_sum / targets.size() << ','
                 << pre_s << ',' << dec_s << ',' << profile.str();
            (*os) << line.str() << "\n";
        }
    }
    return 0;
}

int cmd_verify(const std::string& suite, std::uint64_t seed) {
    selftest::Context ctx;
    ctx.seed_base = seed;
    return selftest::run_suite(suite, ctx) ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact-arithmetic lattice decoding toolkit"};
    app.require_subcommand(1);

    auto* gen = app.add_subcommand("gen", "generate a lattice instance file");
    std::string gen_kind = "gm", gen_out;
    unsigned gen_n = 0, gen_bits = 0;
    std::uint64_t gen_seed = 1;
    gen->add_option("--kind", gen_kind, "instance kind: gm or knapsack");
    gen->add_option("--n", gen_n, "lattice rank")->required();
    gen->add_option("--bits", gen_bits, "modulus bit size")->required();
    gen->add_option("--seed", gen_seed, "generator seed");
    gen->add_option("--out", gen_out, "output file")->required();

    auto* solve = app.add_subcommand("solve", "decode one target vector");
    std::string so_basis, so_target, so_algo = "colattice", so_rem = "trailing";
    std::string so_oracle = "enum", so_oracle_delta = "3/4";
    std::size_t so_beta = 0, so_oracle_beta = 4;
    int so_oracle_tours = 8;
    solve->add_option("--basis", so_basis, "basis/instance file")->required();
    solve->add_option("--target", so_target, "target vector file (one line)")->required();
    solve->add_option("--algo", so_algo, "babai | colattice | cvpp | exact");
    solve->add_option("--beta", so_beta, "block size for --algo colattice");
    solve->add_option("--remainder", so_rem, "remainder block placement: trailing | penultimate");
    solve->add_option("--oracle", so_oracle, "HSVP oracle for cvpp: enum | lll | bkz");
    solve->add_option("--oracle-beta", so_oracle_beta, "block size of the bkz oracle");
    solve->add_option("--oracle-tours", so_oracle_tours, "tour cap of the bkz oracle");
    solve->add_option("--oracle-delta", so_oracle_delta, "delta of the lll oracle");

    auto* batch = app.add_subcommand("batch", "precompute once, decode many targets");
    std::string ba_basis, ba_targets, ba_rem = "trailing";
    std::size_t ba_beta = 0;
    unsigned ba_threads = 1;
    batch->add_option("--basis", ba_basis, "basis/instance file")->required();
    batch->add_option("--targets", ba_targets, "targets file, one vector per line")->required();
    batch->add_option("--beta", ba_beta, "block size")->required();
    batch->add_option("--remainder", ba_rem, "remainder block placement");
    batch->add_option("--threads", ba_threads, "decode worker threads");

    auto* bench = app.add_subcommand("bench-tradeoff", "quality/time table over block sizes");
    std::string be_kind = "gm", be_rem = "trailing", be_out;
    unsigned be_n = 0, be_bits = 0, be_targets = 20, be_seeds = 5;
    std::vector<std::size_t> be_betas;
    bench->add_option("--kind", be_kind, "instance kind: gm or knapsack");
    bench->add_option("--n", be_n, "lattice rank")->required();
    bench->add_option("--bits", be_bits, "modulus bit size")->required();
    bench->add_option("--betas", be_betas, "comma-separated block sizes")
        ->required()
        ->delimiter(',');
    bench->add_option("--targets", be_targets, "targets per seed");
    bench->add_option("--seeds", be_seeds, "number of seeds");
    bench->add_option("--remainder", be_rem, "remainder block placement");
    bench->add_option("--out", be_out, "CSV output file (stdout if omitted)");

    auto* verify = app.add_subcommand("verify", "run exact invariant suites");
    std::string ve_suite = "all";
    std::uint64_t ve_seed = 1;
    verify->add_option("--suite", ve_suite, "exact | colattice | cvpp | transference | all");
    verify->add_option("--seed", ve_seed, "corpus seed base");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (gen->parsed()) return cmd_gen(gen_kind, gen_n, gen_bits, gen_seed, gen_out);
        if (solve->parsed())
            return cmd_solve(so_basis, so_target, so_algo, so_beta, so_rem, so_oracle,
                             so_oracle_beta, so_oracle_tours, so_oracle_delta);
        if (batch->parsed()) return cmd_batch(ba_basis, ba_targets, ba_beta, ba_rem, ba_threads);
        if (bench->parsed())
            return cmd_bench_tradeoff(be_kind, be_n, be_bits, be_betas, be_targets, be_seeds,
                                      be_rem, be_out);
        if (verify->parsed()) return cmd_verify(ve_suite, ve_seed);
    } catch (const parse_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
