#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "horolab/cli.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace {

struct Run {
    int code;
    std::string out, err;
};

Run run(std::vector<std::string> args) {
    args.insert(args.begin(), "horolab");
    std::vector<const char*> argv;
    for (const auto& a : args)
        argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = horolab::cli::run(int(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& s) {
    std::vector<std::string> v;
    std::istringstream in(s);
    for (std::string l; std::getline(in, l);)
        v.push_back(l);
    return v;
}

std::vector<double> fields(const std::string& line) {
    std::vector<double> v;
    std::istringstream in(line);
    for (std::string f; std::getline(in, f, ',');)
        v.push_back(std::stod(f));
    return v;
}

} // namespace

TEST_CASE("delta row brackets the resonant anchor") {
    const auto r = run({"delta", "--k", "1", "--m", "3", "--xi", "0,0", "--y", "0.25"});
    REQUIRE(r.code == 0);
    const auto ls = lines(r.out);
    REQUIRE(ls.size() == 2);
    CHECK(ls[0] == "y,value,tail,Qmax,Dmax");
    const auto f = fields(ls[1]);
    const double target = 2 * 1.2020569031595942 * 2.6123753486854883 * 2.6123753486854883;
    CHECK(f[1] <= target);
    CHECK(target <= f[1] + f[2]);
}

TEST_CASE("quadsum q = 2 gives -4") {
    const auto r = run({"quadsum", "--q", "2", "--N", "1", "--v", "0,0,0,0"});
    REQUIRE(r.code == 0);
    const auto f = lines(r.out);
    REQUIRE(f.size() == 2);
    CHECK(f[1].rfind("2,1,closed,-4,", 0) == 0);
}

TEST_CASE("verify exits 0") {
    const auto r = run({"verify"});
    CHECK(r.code == 0);
    CHECK(r.out.find("fail") == std::string::npos);
}

TEST_CASE("usage and validation exit codes") {
    CHECK(run({}).code == 2);
    CHECK(run({"delta", "--xi", "0,0", "--y", "0.5", "--bogus", "1"}).code == 2);
    CHECK(run({"nosuch"}).code == 2);
    CHECK(run({"delta", "--xi", "0,0", "--y", "2"}).code == 2);
    CHECK(run({"delta", "--xi", "0", "--y", "0.5"}).code == 2);
    CHECK(run({"quadsum", "--q", "0", "--v", "0,0,0,0"}).code == 2);
    CHECK(run({"delta", "--xi", "0,0", "--y", "0.5", "--format", "xml"}).code == 2);
    CHECK(run({"--help"}).code == 0);
    CHECK(run({"delta", "--help"}).out.find("y,value,tail,Qmax,Dmax") != std::string::npos);
}

TEST_CASE("config file values are overridden by flags") {
    const std::string path = "test_cli_config.cfg";
    {
        std::ofstream f(path);
        f << "# comment\nk = 1\nxi = 0.25, 0.5\ny = 0.5\nqmax = 5\n";
    }
    const auto a = run({"delta", "--config", path});
    const auto b = run({"delta", "--k", "1", "--xi", "0.25,0.5", "--y", "0.5", "--qmax", "5"});
    REQUIRE(a.code == 0);
    CHECK(a.out == b.out);
    const auto c = run({"delta", "--config", path, "--y", "0.125"});
    REQUIRE(c.code == 0);
    CHECK(lines(c.out)[1].rfind("0.125,", 0) == 0);
    {
        std::ofstream f(path);
        f << "no equals sign\n";
    }
    CHECK(run({"delta", "--config", path}).code == 2);
    std::remove(path.c_str());
}

TEST_CASE("sweep output is byte-identical across job counts and reruns") {
    const std::vector<std::string> base{"sweep", "--samples", "6", "--dmax", "50", "--seed", "42"};
    auto with_jobs = [&](const char* j) {
        auto v = base;
        v.push_back("--jobs");
        v.push_back(j);
        return run(v);
    };
    const auto a = with_jobs("1"), b = with_jobs("4"), c = with_jobs("4");
    REQUIRE(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(b.out == c.out);
    CHECK(lines(a.out).size() == 7);
    auto other = base;
    other[6] = "43";
    CHECK(run(other).out != a.out);
}

TEST_CASE("json output carries metadata and rows") {
    const auto r = run({"kloosterman", "--m", "1", "--n", "1", "--q", "5", "--format", "json"});
    REQUIRE(r.code == 0);
    CHECK(r.out.find("\"metadata\"") != std::string::npos);
    CHECK(r.out.find("\"version\"") != std::string::npos);
    CHECK(r.out.find("\"subcommand\": \"kloosterman\"") != std::string::npos);
    CHECK(r.out.find("\"re\": 0.3819660112501051") != std::string::npos);
}

TEST_CASE("output file matches stdout") {
    const std::string path = "test_cli_out.csv";
    const auto a = run({"theorem4", "--xi", "0.3,0.7", "--T", "10,100", "--output", path});
    REQUIRE(a.code == 0);
    CHECK(a.out.empty());
    std::ifstream f(path);
    std::stringstream buf;
    buf << f.rdbuf();
    CHECK(buf.str() == run({"theorem4", "--xi", "0.3,0.7", "--T", "10,100"}).out);
    std::remove(path.c_str());
}
