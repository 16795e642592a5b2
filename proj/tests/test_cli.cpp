#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "ttomo/io.hpp"

using namespace ttomo;
using Catch::Approx;

namespace {

const std::filesystem::path cli = TTOMO_CLI_PATH;

struct TempDir {
    std::filesystem::path path;
    explicit TempDir(const std::string& tag)
        : path(std::filesystem::temp_directory_path() / ("ttomo_cli_" + tag)) {
        std::filesystem::remove_all(path);
        std::filesystem::create_directories(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }
};

int run(const std::string& args) {
    std::string cmd = cli.string() + " " + args + " > /dev/null 2>&1";
    int rc = std::system(cmd.c_str());
    return WEXITSTATUS(rc);
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("gen is deterministic: identical directories for identical flags") {
    TempDir td("det");
    REQUIRE(run("gen --kind hessian --seed 7 --out " + (td.path / "a").string()) == 0);
    REQUIRE(run("gen --kind hessian --seed 7 --out " + (td.path / "b").string()) == 0);
    for (const auto& entry : std::filesystem::directory_iterator(td.path / "a")) {
        auto name = entry.path().filename();
        CHECK(slurp(entry.path()) == slurp(td.path / "b" / name));
    }
}

TEST_CASE("gen rejects fields that violate the decay gate with exit 2") {
    TempDir td("gate");
    CHECK(run("gen --kind gaussian-sym2 --extent 2 --width 1 --out " +
              (td.path / "f").string()) == 2);
}

TEST_CASE("gen random-bandlimited --mean-zero produces mean-free components") {
    TempDir td("rbl");
    REQUIRE(run("gen --kind random-bandlimited --mean-zero --seed 3 --grid 64 --out " +
                (td.path / "f").string()) == 0);
    GridField f = load_grid_field(td.path / "f");
    for (double m : f.mean_integral()) CHECK(std::abs(m) < 1e-13);
}

TEST_CASE("decompose: hessian input splits into a pure potential, exit 0") {
    TempDir td("dech");
    REQUIRE(run("gen --kind hessian --seed 1 --out " + (td.path / "f").string()) == 0);
    REQUIRE(run("decompose --in " + (td.path / "f").string() + " --out " +
                (td.path / "out").string()) == 0);
    auto rep = nlohmann::json::parse(std::ifstream(td.path / "out" / "report.json"));
    CHECK(rep.at("schema") == "report/1");
    CHECK(rep.at("pass").get<bool>());
    CHECK(rep.at("residuals").at("g_fraction").get<double>() <= 1e-8);
    CHECK(std::filesystem::exists(td.path / "out" / "g" / "meta.json"));
    CHECK(std::filesystem::exists(td.path / "out" / "v" / "meta.json"));
}

TEST_CASE("decompose: mean-zero violation exits 2 and reports the means") {
    TempDir td("decm");
    REQUIRE(run("gen --kind gaussian-sym2 --weights 1,0,0 --out " + (td.path / "f").string()) ==
            0);
    CHECK(run("decompose --in " + (td.path / "f").string() + " --out " +
              (td.path / "out").string()) == 2);
    auto rep = nlohmann::json::parse(std::ifstream(td.path / "out" / "report.json"));
    CHECK(rep.at("means")[0].get<double>() == Approx(pi).margin(1e-9));
    CHECK_FALSE(rep.at("pass").get<bool>());
}

TEST_CASE("decompose: random mean-zero input passes the residual gate") {
    TempDir td("decr");
    REQUIRE(run("gen --kind random-bandlimited --mean-zero --seed 5 --grid 64 --out " +
                (td.path / "f").string()) == 0);
    REQUIRE(run("decompose --in " + (td.path / "f").string() + " --out " +
                (td.path / "out").string()) == 0);
    auto rep = nlohmann::json::parse(std::ifstream(td.path / "out" / "report.json"));
    CHECK(rep.at("residuals").at("reconstruction").get<double>() <= 1e-10);
}

TEST_CASE("decompose: elastic input writes g, v and u parts") {
    TempDir td("dece");
    REQUIRE(run("gen --kind elastic-potential --seed 2 --out " + (td.path / "f").string()) == 0);
    REQUIRE(run("decompose --in " + (td.path / "f").string() + " --out " +
                (td.path / "out").string()) == 0);
    CHECK(std::filesystem::exists(td.path / "out" / "u" / "meta.json"));
    auto rep = nlohmann::json::parse(std::ifstream(td.path / "out" / "report.json"));
    CHECK(rep.at("residuals").at("g_fraction").get<double>() <= 1e-7);
}

TEST_CASE("transform: i0 sinogram of the f11 gaussian carries sqrt(pi) at (0, 0)") {
    TempDir td("tra");
    REQUIRE(run("gen --kind gaussian-sym2 --weights 1,0,0 --out " + (td.path / "f").string()) ==
            0);
    REQUIRE(run("transform --in " + (td.path / "f").string() + " --transform i0 --angles 4 "
                "--offsets 129 --out " + (td.path / "sino.csv").string()) == 0);
    std::ifstream in(td.path / "sino.csv");
    std::string header;
    std::getline(in, header);
    CHECK(header == "phi,s,channel,value");
    bool found = false;
    std::string line;
    while (std::getline(in, line)) {
        double phi, s, value;
        char channel[32];
        if (std::sscanf(line.c_str(), "%lf,%lf,%31[^,],%lf", &phi, &s, channel, &value) == 4) {
            if (std::abs(phi) < 1e-15 && std::abs(s) < 1e-15) {
                CHECK(value == Approx(1.7724539).margin(1e-6));
                found = true;
            }
        }
    }
    CHECK(found);
}

TEST_CASE("transform: x2 on an elastic potential field is a kernel element") {
    TempDir td("trx2");
    REQUIRE(run("gen --kind elastic-potential --seed 4 --out " + (td.path / "f").string()) == 0);
    REQUIRE(run("transform --in " + (td.path / "f").string() + " --transform x2 --angles 8 "
                "--offsets 33 --out " + (td.path / "sino.csv").string()) == 0);
    std::ifstream in(td.path / "sino.csv");
    std::string line;
    std::getline(in, line);
    double worst = 0.0;
    while (std::getline(in, line)) {
        auto pos = line.find_last_of(',');
        worst = std::max(worst, std::abs(std::strtod(line.c_str() + pos + 1, nullptr)));
    }
    CHECK(worst <= 1e-4);
}

TEST_CASE("transform: zero field gives an all-zero sinogram") {
    TempDir td("trz");
    REQUIRE(run("gen --kind gaussian-sym2 --weights 0,0,0 --out " + (td.path / "f").string()) ==
            0);
    REQUIRE(run("transform --in " + (td.path / "f").string() + " --transform mixed --angles 4 "
                "--offsets 9 --out " + (td.path / "sino.csv").string()) == 0);
    std::ifstream in(td.path / "sino.csv");
    std::string line;
    std::getline(in, line);
    while (std::getline(in, line)) {
        auto pos = line.find_last_of(',');
        CHECK(std::strtod(line.c_str() + pos + 1, nullptr) == 0.0);
    }
}

TEST_CASE("verify: saint-venant suite passes and carries the annotation") {
    TempDir td("ver");
    REQUIRE(run("verify --suite saint-venant --out " + (td.path / "rep.json").string()) == 0);
    auto rep = nlohmann::json::parse(std::ifstream(td.path / "rep.json"));
    CHECK(rep.at("schema") == "report/1");
    CHECK(rep.at("pass").get<bool>());
    bool annotated = false;
    for (const auto& c : rep.at("checks"))
        if (c.contains("note") && c.at("note").get<std::string>().find("antisymmetric") !=
                                      std::string::npos)
            annotated = true;
    CHECK(annotated);
}

TEST_CASE("verify: unknown suite exits 2, bad flags exit 2") {
    CHECK(run("verify --suite no-such-suite") == 2);
    CHECK(run("gen --kind unknown-kind --out /tmp/ttomo_nope") == 2);
}
