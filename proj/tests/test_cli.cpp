// End-to-end checks of the dimlab binary: pipelines, exit codes, witness
// round trips, and byte-level determinism. The binary path arrives as argv[1].
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <json.hpp>

static int failures = 0;

#define EXPECT(cond, msg)                                          \
    do {                                                           \
        if (!(cond)) {                                             \
            std::cerr << "FAIL: " << msg << "\n";                  \
            ++failures;                                            \
        }                                                          \
    } while (0)

namespace {

std::string g_bin;

struct RunResult {
    int exit_code = -1;
    std::string out;
};

RunResult run(const std::string& args, const std::string& stdin_file = "") {
    std::string cmd = g_bin + " " + args;
    if (!stdin_file.empty()) cmd += " < " + stdin_file;
    cmd += " 2>/dev/null";
    RunResult r;
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return r;
    char buf[4096];
    while (std::size_t got = fread(buf, 1, sizeof(buf), pipe)) r.out.append(buf, got);
    int status = pclose(pipe);
    r.exit_code = WEXITSTATUS(status);
    return r;
}

std::string tmp_path(const std::string& name) {
    return std::string("/tmp/dimlab_cli_") + name;
}

} // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::cerr << "usage: cli_tests <dimlab binary>\n";
        return 2;
    }
    g_bin = argv[1];
    using nlohmann::json;

    // gen | dim pipeline
    {
        auto gen = run("gen powerset 3");
        EXPECT(gen.exit_code == 0, "gen powerset exits 0");
        std::ofstream(tmp_path("ps3.json")) << gen.out;
        auto dim = run("dim vc -", tmp_path("ps3.json"));
        EXPECT(dim.exit_code == 0, "dim vc from stdin exits 0");
        auto j = json::parse(dim.out);
        EXPECT(j.at("dim") == 3, "vc(powerset 3) = 3 through the pipeline");
    }

    // missing input file -> exit 2
    {
        auto r = run("dim vc /нет/missing.json");
        EXPECT(r.exit_code == 2, "missing class file exits 2");
    }

    // resource caps -> exit 3
    {
        auto gen = run("gen powerset 5 --out " + tmp_path("ps5.json"));
        EXPECT(gen.exit_code == 0, "gen powerset 5 exits 0");
        auto r = run("dim online " + tmp_path("ps5.json"));
        EXPECT(r.exit_code == 3, "online dim beyond |Y| = 16 exits 3");
    }

    // agnostic game spot value
    {
        std::ofstream(tmp_path("two.json"))
            << R"({"x":["x"],"y":["c0","c1"],"values":[["0/1","1/1"]]})";
        auto r = run("game agnostic " + tmp_path("two.json") +
                     " --T 1 --pred-grid 0,1/2,1 --label-grid 0,1");
        EXPECT(r.exit_code == 0, "agnostic game exits 0");
        auto j = json::parse(r.out);
        EXPECT(j.at("value") == "1/2", "two-constant one-round value is 1/2");
    }

    // witness production + verify round trip
    {
        auto r = run("dim seqfat " + tmp_path("ps3.json") + " --gamma 1/2 --witness " +
                     tmp_path("w.json"));
        EXPECT(r.exit_code == 0, "seqfat with witness output exits 0");
        auto v = run("verify " + tmp_path("ps3.json") + " --witness " + tmp_path("w.json"));
        EXPECT(v.exit_code == 0, "verify accepts the emitted witness");
        EXPECT(json::parse(v.out).at("ok") == true, "verify reports ok");
    }

    // convert rs2tree on a threshold-class witness, then verify
    {
        auto gen = run("gen threshold 3 --out " + tmp_path("t3.json"));
        EXPECT(gen.exit_code == 0, "gen threshold 3");
        auto dim = run("dim threshold-rs " + tmp_path("t3.json") +
                       " --r 0 --s 1 --witness " + tmp_path("rsw.json"));
        EXPECT(dim.exit_code == 0, "threshold-rs witness emitted");
        // truncate the witness to length 3 = 2^2 - 1 for the converter
        auto wj = json::parse(std::ifstream(tmp_path("rsw.json")));
        wj["pairs"] = json::array({wj["pairs"][0], wj["pairs"][1], wj["pairs"][2]});
        std::ofstream(tmp_path("rsw3.json")) << wj.dump();
        auto cv = run("convert rs2tree --class " + tmp_path("t3.json") + " --witness " +
                      tmp_path("rsw3.json") + " --out " + tmp_path("tree.json"));
        EXPECT(cv.exit_code == 0, "rs2tree conversion exits 0");
        auto v = run("verify " + tmp_path("t3.json") + " --witness " + tmp_path("tree.json"));
        EXPECT(v.exit_code == 0, "converted tree witness verifies");
    }

    // byte-identical reruns with fixed seed
    {
        std::ofstream(tmp_path("dx.json"))
            << R"({"over":"x","support":[0,1,2],"weights":["1/3","1/3","1/3"]})";
        auto b = run("pac gc " + tmp_path("ps3.json") +
                     " --dist " + tmp_path("dx.json") + " --m 8 --trials 50 --seed 7");
        auto c = run("pac gc " + tmp_path("ps3.json") +
                     " --dist " + tmp_path("dx.json") + " --m 8 --trials 50 --seed 7");
        EXPECT(b.exit_code == 0, "pac gc exits 0");
        EXPECT(b.out == c.out, "identical inputs and seed give byte-identical output");
    }

    // bounds evaluator + csv sweep
    {
        auto r = run("bounds littlestone-regret --d 4 --T 9");
        EXPECT(r.exit_code == 0, "bounds evaluator exits 0");
        EXPECT(json::parse(r.out).at("value") == 6.0, "littlestone-regret(4,9) = 6");
        auto s = run("bounds sigmod-baseline --sweep lambda --from 1 --to 3 --steps 3 "
                     "--eps 0.1 --jobs 2 --format csv");
        EXPECT(s.exit_code == 0, "bounds sweep exits 0");
        EXPECT(s.out.find("lambda,value") == 0, "csv header present");
    }

    // derive + game simulate
    {
        auto d = run("derive dual " + tmp_path("t3.json"));
        EXPECT(d.exit_code == 0, "derive dual exits 0");
        auto sim = run("game simulate " + tmp_path("two.json") +
                       " --T 3 --learner minimax --adversary consistent:1 --seed 5");
        EXPECT(sim.exit_code == 0, "simulation exits 0");
        auto j = json::parse(sim.out);
        EXPECT(j.at("rounds").size() == 3, "three simulated rounds");
    }

    if (failures == 0) {
        std::cout << "cli_tests: all checks passed\n";
        return 0;
    }
    std::cerr << "cli_tests: " << failures << " failures\n";
    return 1;
}
