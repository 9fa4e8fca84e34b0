#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "gfbt/bounds.hpp"
#include "gfbt/linear_code.hpp"

namespace fs = std::filesystem;

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

RunResult run(const std::string& args, const std::string& env = "") {
    static int counter = 0;
    const fs::path err_file =
        fs::temp_directory_path() / ("gfbt_cli_err_" + std::to_string(counter++));
    std::string cmd = env.empty() ? "" : env + " ";
    cmd += std::string(GFBT_BIN_PATH) + " " + args + " 2>" + err_file.string();
    RunResult result;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    char buf[4096];
    std::size_t got;
    while ((got = fread(buf, 1, sizeof(buf), pipe)) > 0)
        result.out.append(buf, got);
    const int status = pclose(pipe);
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    std::ifstream err_in(err_file);
    std::stringstream ss;
    ss << err_in.rdbuf();
    result.err = ss.str();
    fs::remove(err_file);
    return result;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) out.push_back(item);
    return out;
}

fs::path write_file(const std::string& name, const std::string& content) {
    const fs::path p = fs::temp_directory_path() / name;
    std::ofstream out(p);
    out << content;
    return p;
}

}  // namespace

TEST_CASE("spectrum subcommand emits the enumerator as JSON") {
    const auto r = run("spectrum --code hamming_7_4");
    CHECK(r.exit_code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j.at("n") == 7);
    CHECK(j.at("k") == 4);
    CHECK(j.at("spectrum") ==
          nlohmann::json({{"3", 7}, {"4", 7}, {"7", 1}}));
}

TEST_CASE("spectrum of repetition_3") {
    const auto r = run("spectrum --code repetition_3");
    CHECK(r.exit_code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j.at("spectrum") == nlohmann::json({{"3", 1}}));
}

TEST_CASE("malformed generator file exits 2 with a diagnostic") {
    const auto p = write_file("bad_gen.txt", "2 3\n10\n011\n");
    const auto r = run("spectrum --gen-file " + p.string());
    CHECK(r.exit_code == 2);
    CHECK(!r.err.empty());
    fs::remove(p);
}

TEST_CASE("rank-deficient generator file exits 2") {
    const auto p = write_file("rank_gen.txt", "2 3\n101\n101\n");
    const auto r = run("spectrum --gen-file " + p.string());
    CHECK(r.exit_code == 2);
    CHECK(r.err.find("depend") != std::string::npos);
    fs::remove(p);
}

TEST_CASE("sweep produces the fixed CSV header and one row per grid point") {
    const auto r = run(
        "sweep --code hamming_7_4 --ebn0-start 0 --ebn0-stop 8 --ebn0-step 1");
    CHECK(r.exit_code == 0);
    auto lines = split(r.out, '\n');
    REQUIRE(lines.size() == 10);  // header + 9 rows
    CHECK(lines[0] ==
          "ebn0_db,sigma,union,sb,sb_r1,tb,tb_zstar,tsb,tsb_inner_r1");
    // sb_r1 (column 4) constant across rows: SNR-independent radius
    const std::string first_r1 = split(lines[1], ',')[4];
    for (std::size_t i = 2; i < lines.size(); ++i)
        CHECK(split(lines[i], ',')[4] == first_r1);
}

TEST_CASE("sweep CSV cells round-trip against direct evaluation") {
    const auto r = run(
        "sweep --code hamming_7_4 --ebn0-start 4 --ebn0-stop 4 --ebn0-step 1");
    REQUIRE(r.exit_code == 0);
    const auto lines = split(r.out, '\n');
    REQUIRE(lines.size() == 2);
    const auto cells = split(lines[1], ',');

    const auto w = gfbt::weight_enumerator(gfbt::canned_code("hamming_7_4"));
    const double sigma = std::strtod(cells[1].c_str(), nullptr);
    const auto ch = gfbt::ChannelParams::from_sigma(sigma, 7, 4.0 / 7.0);
    // 12 printed significant digits: agreement to 1e-11 relative
    CHECK(std::strtod(cells[2].c_str(), nullptr) ==
          doctest::Approx(gfbt::union_bound(w, ch)).epsilon(1e-11));
    CHECK(std::strtod(cells[3].c_str(), nullptr) ==
          doctest::Approx(gfbt::sphere_bound(w, ch).value).epsilon(1e-11));
    CHECK(std::strtod(cells[7].c_str(), nullptr) ==
          doctest::Approx(gfbt::tangential_sphere_bound(w, ch).value)
              .epsilon(1e-11));
}

TEST_CASE("sweep with trials adds the mc columns") {
    const auto r = run(
        "sweep --code hamming_7_4 --ebn0-start 2 --ebn0-stop 3 --ebn0-step 1 "
        "--trials 2000 --seed 5");
    CHECK(r.exit_code == 0);
    const auto lines = split(r.out, '\n');
    CHECK(lines[0] ==
          "ebn0_db,sigma,union,sb,sb_r1,tb,tb_zstar,tsb,tsb_inner_r1,"
          "mc_fer,mc_ci95");
    CHECK(split(lines[1], ',').size() == 11);
    const double fer = std::strtod(split(lines[1], ',')[9].c_str(), nullptr);
    CHECK(fer > 0.0);
    CHECK(fer < 1.0);
}

TEST_CASE("TB precondition failure turns into NA cells plus a warning") {
    const auto r = run(
        "sweep --code repetition_3 --ebn0-start 2 --ebn0-stop 3 --ebn0-step 1");
    CHECK(r.exit_code == 0);
    const auto lines = split(r.out, '\n');
    const auto cells = split(lines[1], ',');
    CHECK(cells[5] == "NA");  // tb
    CHECK(cells[7] == "NA");  // tsb
    CHECK(cells[3] != "NA");  // sb works through the sup case
    CHECK(r.err.find("warning") != std::string::npos);
}

TEST_CASE("unknown bound name exits 2") {
    const auto r = run(
        "sweep --code hamming_7_4 --ebn0-start 0 --ebn0-stop 1 --ebn0-step 1 "
        "--bounds sb,zzz");
    CHECK(r.exit_code == 2);
}

TEST_CASE("json sweep output parses and mirrors the columns") {
    const auto r = run(
        "sweep --code ext_hamming_8_4 --ebn0-start 0 --ebn0-stop 8 "
        "--ebn0-step 1 --format json");
    CHECK(r.exit_code == 0);
    const auto j = nlohmann::json::parse(r.out);
    REQUIRE(j.is_array());
    REQUIRE(j.size() == 9);
    for (const auto& row : j) {
        CHECK(row.contains("ebn0_db"));
        CHECK(row.contains("tsb_inner_r1"));
        CHECK(row.at("sb").is_number());
    }
}

TEST_CASE("two-term flag reproduces the min-form values at the optimum") {
    const auto a = run(
        "sweep --code golay_23_12 --ebn0-start 3 --ebn0-stop 3 --ebn0-step 1");
    const auto b = run(
        "sweep --code golay_23_12 --ebn0-start 3 --ebn0-stop 3 --ebn0-step 1 "
        "--two-term");
    REQUIRE(a.exit_code == 0);
    REQUIRE(b.exit_code == 0);
    const auto ca = split(split(a.out, '\n')[1], ',');
    const auto cb = split(split(b.out, '\n')[1], ',');
    for (int col : {3, 5}) {  // sb, tb
        const double va = std::strtod(ca[col].c_str(), nullptr);
        const double vb = std::strtod(cb[col].c_str(), nullptr);
        CHECK(va == doctest::Approx(vb).epsilon(1e-7));
    }
}

TEST_CASE("spectrum-file input: k inferred from a complete spectrum") {
    const auto p = write_file(
        "spec74.json",
        R"({"n": 7, "k": null, "spectrum": {"3": 7, "4": 7, "7": 1}})");
    const auto r = run("sweep --spectrum-file " + p.string() +
                       " --ebn0-start 4 --ebn0-stop 4 --ebn0-step 1");
    CHECK(r.exit_code == 0);
    const auto cells = split(split(r.out, '\n')[1], ',');
    // rate 4/7 was inferred: sigma matches the canned-code sweep
    CHECK(std::strtod(cells[1].c_str(), nullptr) ==
          doctest::Approx(0.59020655217839635).epsilon(1e-11));
    fs::remove(p);
}

TEST_CASE("spectrum-file without k and non-power total exits 2") {
    const auto p = write_file(
        "spec_bad.json", R"({"n": 7, "spectrum": {"3": 5, "4": 7}})");
    const auto r = run("sweep --spectrum-file " + p.string() +
                       " --ebn0-start 4 --ebn0-stop 4 --ebn0-step 1");
    CHECK(r.exit_code == 2);
    fs::remove(p);
}

TEST_CASE("simulation from a spectrum file is rejected") {
    const auto p = write_file(
        "spec74b.json",
        R"({"n": 7, "k": 4, "spectrum": {"3": 7, "4": 7, "7": 1}})");
    const auto r = run("sweep --spectrum-file " + p.string() +
                       " --ebn0-start 4 --ebn0-stop 4 --ebn0-step 1 "
                       "--trials 100");
    CHECK(r.exit_code == 2);
    fs::remove(p);
}

TEST_CASE("sweep output is identical for any worker count") {
    const std::string base =
        "sweep --code golay_23_12 --ebn0-start 1 --ebn0-stop 4 --ebn0-step 1 "
        "--trials 5000 --seed 21 --workers ";
    const auto one = run(base + "1");
    const auto four = run(base + "4");
    CHECK(one.exit_code == 0);
    CHECK(one.out == four.out);
}

TEST_CASE("simulate output is byte-identical for a fixed seed") {
    const std::string cmd =
        "simulate --code hamming_7_4 --sigma 0.7 --trials 20000 --seed 42";
    const auto a = run(cmd);
    const auto b = run(cmd);
    CHECK(a.exit_code == 0);
    CHECK(a.out == b.out);
    const auto j = nlohmann::json::parse(a.out);
    CHECK(j.at("trials") == 20000);
    CHECK(j.at("seed") == 42);
    CHECK(j.at("errors").get<std::uint64_t>() > 0);
}

TEST_CASE("simulate rejects oversized k with exit 2") {
    // spc_18 has k = 17, one past the brute-force budget
    const auto r = run("simulate --code spc_18 --sigma 1.0 --trials 10");
    CHECK(r.exit_code == 2);
    CHECK(r.err.find("k > 16") != std::string::npos);
}

TEST_CASE("simulate requires exactly one of sigma and ebn0") {
    CHECK(run("simulate --code hamming_7_4 --trials 10").exit_code == 2);
    CHECK(run("simulate --code hamming_7_4 --sigma 1 --ebn0 4 --trials 10")
              .exit_code == 2);
}

TEST_CASE("missing subcommand or input exits 2") {
    CHECK(run("").exit_code == 2);
    CHECK(run("sweep --ebn0-start 0 --ebn0-stop 1 --ebn0-step 1").exit_code ==
          2);
    CHECK(run("spectrum --code hamming_7_4 --gen-file x.txt").exit_code == 2);
}

TEST_CASE("unreachable quadrature tolerance exits 3") {
    const auto r = run(
        "sweep --code hamming_7_4 --ebn0-start 2 --ebn0-stop 2 --ebn0-step 1 "
        "--bounds sb",
        "GFBT_QUAD_TOL=1e-30");
    CHECK(r.exit_code == 3);
    CHECK(!r.err.empty());
}

TEST_CASE("quadrature tolerance override is accepted") {
    const auto r = run(
        "sweep --code hamming_7_4 --ebn0-start 2 --ebn0-stop 2 --ebn0-step 1 "
        "--bounds sb",
        "GFBT_QUAD_TOL=1e-6");
    CHECK(r.exit_code == 0);
    const double sb =
        std::strtod(split(split(r.out, '\n')[1], ',')[3].c_str(), nullptr);
    CHECK(sb == doctest::Approx(0.0926695969580106).epsilon(1e-4));
}
