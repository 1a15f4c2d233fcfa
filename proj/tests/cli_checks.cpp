// Drives the CLI binary end to end: parsing, exit codes, determinism, and
// agreement between the table and JSON outputs.

#include <array>
#include <cstdio>
#include <iostream>
#include <string>

#include <json.hpp>

namespace {

std::string gBinary;
int gFailures = 0;

struct RunResult {
    int status;
    std::string out;
};

RunResult run(const std::string& args) {
    std::string cmd = gBinary + " " + args + " 2>&1";
    std::array<char, 4096> buf;
    std::string out;
    FILE* p = popen(cmd.c_str(), "r");
    if (!p) return {-1, ""};
    while (fgets(buf.data(), buf.size(), p)) out += buf.data();
    int rc = pclose(p);
    return {WEXITSTATUS(rc), out};
}

void expect(bool ok, const std::string& what) {
    if (ok) {
        std::cout << "[ok] " << what << "\n";
    } else {
        std::cout << "[FAIL] " << what << "\n";
        ++gFailures;
    }
}

std::string dataPath(const std::string& name) { return std::string(WEBQ_DATA_DIR) + "/" + name; }

}  // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::cerr << "usage: webq_cli_checks <path-to-webq>\n";
        return 2;
    }
    gBinary = argv[1];

    {
        auto r = run("cs --gamma 1,2,3");
        expect(r.status == 0 && r.out == "4\n", "cs prints the color size");
        auto j = run("cs --gamma 1,2,3 --format json");
        expect(j.status == 0 && nlohmann::json::parse(j.out)["colorSize"] == 4,
               "cs json output matches");
    }
    {
        auto r = run("purity --word " + dataPath("ft-infty.json") + " --count 4");
        expect(r.status == 0 && r.out == "2\n4\n6\n8\n", "purity lists the twist boundaries");
    }
    {
        auto r = run("clasp --word \"1 2 1 2 1 2\" --gamma 1,2,3 --n 3");
        expect(r.status == 0 && r.out.find("word: 1 1 2 1 1 2") != std::string::npos &&
                   r.out.find("clasp at: 1,2") != std::string::npos,
               "clasp rewrites the braid and reports the position");
    }
    {
        auto r = run("certify --word " + dataPath("ft-infty.json") + " --cert " +
                     dataPath("empty-cert.json"));
        expect(r.status == 0 && r.out.find("Verified") != std::string::npos,
               "certify accepts the infinite twist");
    }
    {
        auto r = run("certify --word " + dataPath("fig1.json") + " --cert " +
                     dataPath("fig1-cert.json"));
        expect(r.status == 1 && r.out.find("Mismatch") != std::string::npos,
               "certify rejects the two-block pattern with a definite mismatch");
    }
    {
        auto r = run("bound --word " + dataPath("ft-infty.json") + " --cert " +
                     dataPath("empty-cert.json") + " --ell 3");
        expect(r.status == 0 && r.out.find("b = 6") != std::string::npos,
               "bound computes 2z at the third step");
    }
    {
        auto r = run("euler --word \"1 1\" --gamma 1,2 --n 2 --N 2 --format json");
        expect(r.status == 0, "euler emits an operator");
        if (r.status == 0) {
            auto j = nlohmann::json::parse(r.out);
            expect(j["dim"][0] == 2 && !j["entries"].empty(), "euler operator has entries");
        }
    }
    {
        auto r = run("skeleton --word \"1 1\" --gamma 1,1 --n 2 --N 2 --format json");
        expect(r.status == 0, "skeleton runs on a uni-colored clasp");
        if (r.status == 0) {
            auto j = nlohmann::json::parse(r.out);
            expect(j["X"].size() == 2, "skeleton X has one term per crossing");
        }
    }
    {
        auto r = run("projector --n 2 --gamma 1,1 --N 2 --k 2 --format json");
        expect(r.status == 0, "projector truncation runs");
    }
    {
        std::string cmd = "stabilize --a " + dataPath("ft.json") + " --b " +
                          dataPath("s1s1s2s2.json") + " --N 2 --steps 5 -M 12";
        auto r = run(cmd);
        expect(r.status == 0 && r.out.find("verdict: Converging") != std::string::npos,
               "stabilize converges on the worked pair");
        auto j1 = run(cmd + " --format json");
        auto j2 = run(cmd + " --format json");
        expect(j1.status == 0 && j1.out == j2.out, "stabilize json output is byte-identical");
        if (j1.status == 0) {
            auto rep = nlohmann::json::parse(j1.out);
            expect(rep["verdict"] == "Converging" && rep["steps"].size() == 5,
                   "stabilize json verdict and steps match the table");
        }
    }
    {
        // results are independent of the worker pool size
        std::string cmd = "stabilize --a " + dataPath("ft.json") + " --b " +
                          dataPath("s1s1s2s2.json") + " --N 2 --steps 4 -M 10 --format json";
        auto one = run(cmd + " --threads 1");
        auto two = run(cmd + " --threads 2");
        expect(one.status == 0 && one.out == two.out, "thread count does not affect the report");
    }
    {
        // euler on a word file truncation agrees with the inline word
        auto a = run("euler --word " + dataPath("ft-infty.json") + " --truncate 2 --format json");
        auto b = run("euler --word \"1 1\" --gamma 1,2 --n 2 --N 2 --format json");
        expect(a.status == 0 && b.status == 0 && a.out == b.out,
               "file and inline euler operators agree");
    }
    {
        auto r = run("bi --word " + dataPath("bi-ft-core.json") + " --N 2 --steps 3 -M 6");
        expect(r.status == 0 && r.out.find("verdict: Converging") != std::string::npos,
               "bi-infinite analysis converges");
    }
    {
        auto r = run("euler --word \"1 2\" --gamma 1,2 --n 3 --N 2");
        expect(r.status == 2, "bad coloring length is an input error");
    }

    if (gFailures) {
        std::cout << gFailures << " CLI check(s) failed\n";
        return 1;
    }
    std::cout << "all CLI checks passed\n";
    return 0;
}
