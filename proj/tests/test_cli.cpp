// End-to-end checks of the odyn binary: round trips, determinism, exit codes.
#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

namespace {

std::string g_binary;
int g_failures = 0;

struct RunResult {
    int exit_code;
    std::string output;
};

RunResult run(const std::string& args) {
    std::string cmd = g_binary + " " + args + " 2>/dev/null";
    std::array<char, 4096> buf;
    std::string out;
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return {-1, ""};
    while (std::size_t n = fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), n);
    int status = pclose(pipe);
    return {WEXITSTATUS(status), out};
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream f(path);
    f << content;
}

void check(bool ok, const std::string& what) {
    if (!ok) {
        std::cerr << "FAILED: " << what << "\n";
        ++g_failures;
    }
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::cerr << "usage: test_cli <path-to-odyn>\n";
        return 1;
    }
    g_binary = argv[1];
    std::string dir = "/tmp/odyn_cli_test";
    if (std::system(("mkdir -p " + dir).c_str()) != 0) {
        std::cerr << "cannot create scratch directory\n";
        return 1;
    }

    write_file(dir + "/dep.json", R"({"additive": [["2","0"],["0","4"]]})");
    write_file(dir + "/indep.json", R"({"additive": [["2","0"],["0","3"]]})");
    write_file(dir + "/rot.json", R"({"torus": [[0,-1],[1,0]]})");
    write_file(dir + "/mixed.json", R"({"additive": [["2"]], "torus": [[2]]})");
    // companion-style matrix with charpoly (x^2-2)^2: Jordan-coordinate witness
    write_file(dir + "/quad.json",
               R"({"additive": [["0","0","0","-4"],["1","0","0","0"],)"
               R"(["0","1","0","4"],["0","0","1","0"]]})");
    write_file(dir + "/sing.json", R"({"additive": [["1","0"],["0","0"]]})");
    write_file(dir + "/bad.json", "{nope");
    write_file(dir + "/forged.json",
               R"({"kind":"fibration","coordinates":"original",)"
               R"("witness_function":{"num":[["1",[1,0]]],"den":[["1",[0,0]]]}})");

    // classify examples
    auto dep = run("classify --input " + dir + "/dep.json");
    check(dep.exit_code == 0, "classify exits 0 on a fibration");
    check(dep.output.find("\"fibration\"") != std::string::npos, "dependent diagonal is a fibration");
    check(dep.output.find("x1^2/x2") != std::string::npos, "monomial witness rendered as x1^2/x2");

    auto indep = run("classify --input " + dir + "/indep.json");
    check(indep.exit_code == 0, "classify exits 0 on a dense verdict");
    check(indep.output.find("\"dense\"") != std::string::npos, "independent diagonal is dense");
    check(indep.output.find("\"1\"") != std::string::npos, "dense witness lists coordinate 1");

    auto rot = run("classify --input " + dir + "/rot.json");
    check(rot.output.find("\"fibration\"") != std::string::npos, "rotation torus is a fibration");

    // byte-for-byte determinism
    auto again = run("classify --input " + dir + "/dep.json");
    check(again.output == dep.output, "classify output is deterministic");

    // round trip: classify then verify, for every kind
    for (const std::string name : {"dep", "indep", "rot", "mixed", "quad"}) {
        auto v = run("classify --input " + dir + "/" + name + ".json");
        write_file(dir + "/" + name + ".verdict", v.output);
        std::string extra = name == "mixed" ? " --degree 3 --steps 30" : "";
        auto ver = run("verify --input " + dir + "/" + name + ".json --verdict " + dir + "/" +
                       name + ".verdict" + extra);
        check(ver.exit_code == 0, "verify accepts the verdict for " + name);
    }

    // exit codes
    check(run("classify --input " + dir + "/bad.json").exit_code == 2, "malformed JSON exits 2");
    check(run("classify --input " + dir + "/sing.json").exit_code == 3, "singular matrix exits 3");
    auto forged = run("verify --input " + dir + "/indep.json --verdict " + dir + "/forged.json");
    check(forged.exit_code == 4, "forged witness exits 4");

    // orbit and growth
    write_file(dir + "/uni.json", R"({"additive": [["1","1"],["0","1"]]})");
    auto orb = run("orbit --input " + dir + "/uni.json --point 0,1 --steps 5 --format text");
    check(orb.output.find("n=5: (5, 1)") != std::string::npos, "unipotent orbit listing");

    write_file(dir + "/rotm.json", "[[0,-1],[1,0]]");
    auto gr = run("growth --input " + dir + "/rotm.json --vector 1,0 --steps 50 --format text");
    check(gr.output.find("LinearlyBounded") != std::string::npos, "rotation growth is bounded");
    check(gr.output.find("order 4") != std::string::npos, "rotation cyclotomic factor reported");

    auto dn = run("density-check --input " + dir + "/dep.json --format text");
    check(dn.output.find("VanishingPolynomial") != std::string::npos,
          "density check finds the relation");
    check(dn.output.find("x1^2 - x2") != std::string::npos, "vanishing polynomial is x1^2 - x2");

    if (g_failures == 0) {
        std::cout << "test_cli: all checks passed\n";
        return 0;
    }
    std::cout << "test_cli: " << g_failures << " failures\n";
    return 1;
}
