#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

namespace {

std::string g_bin;
std::filesystem::path g_tmp;

struct RunResult {
    int code = -1;
    std::string out;
};

RunResult run_cli(const std::string& args) {
    RunResult r;
    std::string cmd = g_bin + " " + args + " 2>/dev/null";
    FILE* p = ::popen(cmd.c_str(), "r");
    if (!p) return r;
    char buf[4096];
    std::size_t got;
    while ((got = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, got);
    int status = ::pclose(p);
    r.code = WEXITSTATUS(status);
    return r;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void spit(const std::filesystem::path& p, const std::string& content) {
    std::ofstream out(p);
    out << content;
}

std::vector<nlohmann::json> json_lines(const std::string& s) {
    std::vector<nlohmann::json> out;
    std::istringstream ss(s);
    std::string line;
    while (std::getline(ss, line))
        if (!line.empty()) out.push_back(nlohmann::json::parse(line));
    return out;
}

nlohmann::json strip_timing(nlohmann::json j) {
    j.erase("wall_times");
    j.erase("decode_s");
    j.erase("precompute_s");
    return j;
}

nlohmann::json strip_timing_and_index(nlohmann::json j) {
    j = strip_timing(std::move(j));
    j.erase("index");
    return j;
}

TEST(Gen, DeterministicFiles) {
    auto a = g_tmp / "gen_a.lat";
    auto b = g_tmp / "gen_b.lat";
    ASSERT_EQ(run_cli("gen --kind gm --n 10 --bits 100 --seed 1 --out " + a.string()).code, 0);
    ASSERT_EQ(run_cli("gen --kind gm --n 10 --bits 100 --seed 1 --out " + b.string()).code, 0);
    EXPECT_EQ(slurp(a), slurp(b));
    // header is a JSON object on the first line
    std::string first = slurp(a).substr(0, slurp(a).find('\n'));
    auto hdr = nlohmann::json::parse(first);
    EXPECT_EQ(hdr["kind"], "gm");
    EXPECT_EQ(hdr["n"], 10);
    EXPECT_EQ(hdr["seed"], 1);
}

TEST(Gen, MissingFlagIsUsageError) {
    EXPECT_EQ(run_cli("gen --kind gm --bits 100 --out " + (g_tmp / "x.lat").string()).code, 2);
    EXPECT_EQ(run_cli("frobnicate").code, 2);
}

TEST(Solve, ExactMatchesFullBlockColattice) {
    auto basis = g_tmp / "solve_basis.lat";
    ASSERT_EQ(run_cli("gen --kind gm --n 6 --bits 60 --seed 3 --out " + basis.string()).code, 0);
    auto target = g_tmp / "solve_target.txt";
    spit(target, "1/3 7/2 0 5 9/7 2\n");
    auto exact = run_cli("solve --basis " + basis.string() + " --target " + target.string() +
                         " --algo exact");
    auto blocks = run_cli("solve --basis " + basis.string() + " --target " + target.string() +
                          " --algo colattice --beta 6");
    ASSERT_EQ(exact.code, 0);
    ASSERT_EQ(blocks.code, 0);
    auto je = json_lines(exact.out).at(0);
    auto jb = json_lines(blocks.out).at(0);
    EXPECT_EQ(je["dist_sq"], jb["dist_sq"]);
}

TEST(Solve, BabaiEqualsBetaOne) {
    auto basis = g_tmp / "solve_basis2.lat";
    ASSERT_EQ(run_cli("gen --kind gm --n 6 --bits 60 --seed 4 --out " + basis.string()).code, 0);
    auto target = g_tmp / "solve_target2.txt";
    spit(target, "1/2 2 3 4/5 5 6\n");
    auto babai = run_cli("solve --basis " + basis.string() + " --target " + target.string() +
                         " --algo babai");
    auto beta1 = run_cli("solve --basis " + basis.string() + " --target " + target.string() +
                         " --algo colattice --beta 1");
    ASSERT_EQ(babai.code, 0);
    ASSERT_EQ(beta1.code, 0);
    auto ja = json_lines(babai.out).at(0);
    auto jb = json_lines(beta1.out).at(0);
    EXPECT_EQ(ja["dist_sq"], jb["dist_sq"]);
    EXPECT_EQ(ja["point"], jb["point"]);
}

TEST(Solve, LatticePointTargetHasZeroDistance) {
    auto basis = g_tmp / "solve_basis3.lat";
    spit(basis, "2 2\n2 1\n1 3\n");
    auto target = g_tmp / "solve_target3.txt";
    spit(target, "3 4\n");
    auto r = run_cli("solve --basis " + basis.string() + " --target " + target.string() +
                     " --algo colattice --beta 2");
    ASSERT_EQ(r.code, 0);
    auto j = json_lines(r.out).at(0);
    EXPECT_EQ(j["dist_sq"], "0");
    EXPECT_EQ(j["normalized_distance"], 0.0);
}

TEST(Solve, DimensionMismatchFails) {
    auto basis = g_tmp / "solve_basis4.lat";
    spit(basis, "2 2\n1 0\n0 1\n");
    auto target = g_tmp / "solve_target4.txt";
    spit(target, "1 2 3\n");
    EXPECT_EQ(run_cli("solve --basis " + basis.string() + " --target " + target.string() +
                      " --algo colattice --beta 2")
                  .code,
              1);
    // rank-deficient basis is rejected loudly
    auto bad = g_tmp / "solve_bad.lat";
    spit(bad, "2 2\n1 2\n2 4\n");
    auto t2 = g_tmp / "solve_target5.txt";
    spit(t2, "1 2\n");
    EXPECT_EQ(run_cli("solve --basis " + bad.string() + " --target " + t2.string() +
                      " --algo colattice --beta 2")
                  .code,
              1);
    // algo/beta mismatch
    auto good = g_tmp / "solve_good.lat";
    spit(good, "2 2\n1 0\n0 1\n");
    EXPECT_EQ(run_cli("solve --basis " + good.string() + " --target " + t2.string() +
                      " --algo babai --beta 2")
                  .code,
              1);
}

TEST(Solve, CvppRuns) {
    auto basis = g_tmp / "solve_basis5.lat";
    ASSERT_EQ(run_cli("gen --kind gm --n 4 --bits 40 --seed 5 --out " + basis.string()).code, 0);
    auto target = g_tmp / "solve_target6.txt";
    spit(target, "1/2 3 5/3 7\n");
    auto r = run_cli("solve --basis " + basis.string() + " --target " + target.string() +
                     " --algo cvpp --oracle enum");
    ASSERT_EQ(r.code, 0);
    auto j = json_lines(r.out).at(0);
    EXPECT_GT(j["oracle_call_count"].get<long>(), 0);
}

TEST(Batch, IdenticalTargetsAndDeterminism) {
    auto basis = g_tmp / "batch_basis.lat";
    ASSERT_EQ(run_cli("gen --kind gm --n 8 --bits 80 --seed 6 --out " + basis.string()).code, 0);
    auto targets = g_tmp / "batch_targets.txt";
    spit(targets, "1 2 3 4 5 6 7 8\n1 2 3 4 5 6 7 8\n1 2 3 4 5 6 7 8\n");
    auto r1 = run_cli("batch --basis " + basis.string() + " --targets " + targets.string() +
                      " --beta 4");
    ASSERT_EQ(r1.code, 0);
    auto lines = json_lines(r1.out);
    ASSERT_EQ(lines.size(), 4u);  // meta + 3 records
    EXPECT_EQ(lines[0]["command"], "batch");
    EXPECT_EQ(strip_timing_and_index(lines[1]), strip_timing_and_index(lines[2]));
    EXPECT_EQ(strip_timing_and_index(lines[1]), strip_timing_and_index(lines[3]));
    // identical non-timing bytes across reruns
    auto r2 = run_cli("batch --basis " + basis.string() + " --targets " + targets.string() +
                      " --beta 4");
    auto lines2 = json_lines(r2.out);
    ASSERT_EQ(lines2.size(), 4u);
    for (std::size_t i = 0; i < 4; ++i)
        EXPECT_EQ(strip_timing(lines[i]), strip_timing(lines2[i]));
    // threaded run keeps input order and results
    auto r4 = run_cli("batch --basis " + basis.string() + " --targets " + targets.string() +
                      " --beta 4 --threads 3");
    auto lines4 = json_lines(r4.out);
    ASSERT_EQ(lines4.size(), 4u);
    for (std::size_t i = 0; i < 4; ++i)
        EXPECT_EQ(strip_timing(lines4[i]), strip_timing(lines[i]));
}

TEST(Batch, EmptyTargetsFile) {
    auto basis = g_tmp / "batch_basis2.lat";
    spit(basis, "2 2\n1 0\n0 1\n");
    auto targets = g_tmp / "batch_targets2.txt";
    spit(targets, "");
    auto r = run_cli("batch --basis " + basis.string() + " --targets " + targets.string() +
                     " --beta 2");
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(json_lines(r.out).size(), 1u);  // meta only
}

TEST(Batch, ParseErrorsCarryLineNumbers) {
    auto basis = g_tmp / "batch_basis3.lat";
    spit(basis, "2 2\n1 0\n0 1\n");
    auto targets = g_tmp / "batch_targets3.txt";
    spit(targets, "1 2\nnot a number\n");
    auto r = run_cli("batch --basis " + basis.string() + " --targets " + targets.string() +
                     " --beta 2");
    EXPECT_EQ(r.code, 1);
}

TEST(BenchTradeoff, CsvShapeAndDeterminism) {
    auto out1 = g_tmp / "bench1.csv";
    auto out2 = g_tmp / "bench2.csv";
    std::string flags = "bench-tradeoff --n 6 --bits 60 --betas 2,3,6 --targets 3 --seeds 2 --out ";
    ASSERT_EQ(run_cli(flags + out1.string()).code, 0);
    ASSERT_EQ(run_cli(flags + out2.string()).code, 0);
    std::istringstream csv(slurp(out1));
    std::string header;
    std::getline(csv, header);
    EXPECT_EQ(header,
              "n,beta,seed,mean_normalized_distance,precompute_s,mean_decode_s,gso_profile");
    std::vector<std::vector<std::string>> rows;
    std::string line;
    while (std::getline(csv, line)) {
        std::vector<std::string> cols;
        std::istringstream ls(line);
        std::string c;
        while (std::getline(ls, c, ',')) cols.push_back(c);
        rows.push_back(cols);
    }
    ASSERT_EQ(rows.size(), 6u);  // 2 seeds x 3 betas
    // beta column strictly increasing within each seed, as given
    EXPECT_EQ(rows[0][1], "2");
    EXPECT_EQ(rows[1][1], "3");
    EXPECT_EQ(rows[2][1], "6");
    // bit-identical rerun except the timing columns
    std::istringstream csv2(slurp(out2));
    std::getline(csv2, line);
    std::size_t ri = 0;
    while (std::getline(csv2, line)) {
        std::vector<std::string> cols;
        std::istringstream ls(line);
        std::string c;
        while (std::getline(ls, c, ',')) cols.push_back(c);
        ASSERT_EQ(cols.size(), rows[ri].size());
        for (std::size_t i = 0; i < cols.size(); ++i)
            if (i != 4 && i != 5) EXPECT_EQ(cols[i], rows[ri][i]) << "row " << ri << " col " << i;
        ++ri;
    }
    EXPECT_EQ(run_cli("bench-tradeoff --n 6 --bits 60 --betas 3,2 --targets 1 --seeds 1").code, 1);
}

TEST(Verify, ExactSuitePasses) {
    EXPECT_EQ(run_cli("verify --suite exact").code, 0);
    EXPECT_EQ(run_cli("verify --suite transference").code, 0);
    EXPECT_EQ(run_cli("verify --suite nonsense").code, 1);
}

}  // namespace

int main(int argc, char** argv) {
    ::testing::InitGoogleTest(&argc, argv);
    if (argc < 2) {
        std::fprintf(stderr, "usage: cli_test <path-to-colat-binary>\n");
        return 2;
    }
    g_bin = argv[1];
    g_tmp = std::filesystem::temp_directory_path() / "colat_cli_test";
    std::filesystem::create_directories(g_tmp);
    return RUN_ALL_TESTS();
}
