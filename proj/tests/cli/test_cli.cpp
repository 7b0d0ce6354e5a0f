#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>
#include <vector>

#include "depthdegen/app.hpp"

namespace fs = std::filesystem;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::initializer_list<std::string> args) {
    std::vector<std::string> storage{"depthdegen"};
    storage.insert(storage.end(), args);
    std::vector<const char*> argv;
    for (const auto& a : storage) {
        argv.push_back(a.c_str());
    }
    std::ostringstream out;
    std::ostringstream err;
    const int code = depthdegen::cli::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
    const fs::path dir = fs::path(DEPTHDEGEN_TEST_BINARY_DIR) / "cli_scratch" / name;
    fs::remove_all(dir);
    return dir;
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::vector<std::string> lines(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        out.push_back(line);
    }
    return out;
}

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream in(line);
    std::string field;
    while (std::getline(in, field, ',')) {
        out.push_back(field);
    }
    return out;
}

}  // namespace

TEST_CASE("exit codes") {
    CHECK(run({}).code == 2);
    CHECK(run({"--help"}).code == 0);
    CHECK(run({"--version"}).code == 0);
    CHECK(run({"predict", "--widths", "50", "--theta0", "abc"}).code == 2);
    CHECK(run({"predict", "--widths", "1,50"}).code == 2);
    CHECK(run({"predict", "--catalog", "99"}).code == 2);
    CHECK(run({"predict", "--catalog", "3", "--widths", "50"}).code == 2);
    CHECK(run({"predict", "--widths", "50", "--theta0", "4"}).code == 2);
    CHECK(run({"predict", "--widths", "50", "--method", "exact"}).code == 2);
    CHECK(run({"predict", "--catalog", "all"}).code == 2);  // many architectures need --out
    CHECK(run({"simulate", "--widths", "50"}).code == 2);   // --out is required
    CHECK(run({"density", "--widths", "50x3", "--layer", "4", "--out", scratch("bad").string()}).code == 2);
    CHECK(run({"density", "--widths", "50x3", "--layer", "0", "--out", scratch("bad").string()}).code == 2);
    CHECK(run({"replay", (scratch("none") / "manifest.json").string(), "--out", scratch("bad").string()}).code == 2);

    const auto r = run({"predict", "--catalog", "1x"});
    CHECK(r.code == 2);
    CHECK(r.err.find("--catalog") != std::string::npos);
}

TEST_CASE("predict on a catalog entry") {
    const auto r = run({"predict", "--catalog", "17", "--theta0", "1.5707963", "--method", "finite-full"});
    REQUIRE(r.code == 0);
    const auto rows = lines(r.out);
    REQUIRE(rows.size() == 12);
    CHECK(rows[0] == "layer,theta,x,sigma_sq");
    CHECK(split(rows[11])[0] == "10");
}

TEST_CASE("predict with every method orders finite below infinite") {
    const auto r = run({"predict", "--widths", "256x30", "--theta0", "0.1", "--method", "all"});
    REQUIRE(r.code == 0);
    const auto rows = lines(r.out);
    REQUIRE(rows.size() == 32);
    const auto header = split(rows[0]);
    REQUIRE(header.size() == 10);
    CHECK(header[2] == "x_finite_full");
    CHECK(header[5] == "x_finite_simple");
    CHECK(header[8] == "x_infinite");
    const auto last = split(rows[31]);
    CHECK(std::stod(last[2]) < std::stod(last[8]));
    CHECK(std::stod(last[5]) < std::stod(last[8]));
}

TEST_CASE("predict from the absorbing state") {
    const auto r = run({"predict", "--widths", "50", "--theta0", "0"});
    REQUIRE(r.code == 0);
    CHECK(r.err.find("absorbing") != std::string::npos);
    const auto rows = lines(r.out);
    REQUIRE(rows.size() == 3);
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const auto f = split(rows[i]);
        CHECK(f[2] == "-inf");
        CHECK(f[5] == "-inf");
        CHECK(f[8] == "-inf");
    }
}

TEST_CASE("pi forms for theta0") {
    const auto a = run({"predict", "--widths", "64x3", "--theta0", "pi/2"});
    const auto b = run({"predict", "--widths", "64x3"});
    REQUIRE(a.code == 0);
    CHECK(a.out == b.out);
    // Only the infinite-width map is defined between pi/2 and pi.
    CHECK(run({"predict", "--widths", "64x3", "--theta0", "3pi/4", "--method", "infinite"}).code == 0);
    CHECK(run({"predict", "--widths", "64x3", "--theta0", "3*pi/4"}).code == 2);
    CHECK(run({"predict", "--widths", "64x3", "--theta0", "pi"}).code == 0);
}

TEST_CASE("spec files") {
    const fs::path dir = scratch("spec");
    fs::create_directories(dir);
    {
        std::ofstream spec(dir / "nets.txt", std::ios::binary);
        spec << "# two nets\r\nwide; 784; 500x3\r\nnarrow; 784; 20x8\r\n";
    }
    const auto out = dir / "out";
    const auto r = run({"compare", "--spec", (dir / "nets.txt").string(), "--out", out.string()});
    REQUIRE(r.code == 0);
    CHECK(r.err.find("no recorded accuracies") != std::string::npos);
    CHECK(fs::exists(out / "report.csv"));
    CHECK_FALSE(fs::exists(out / "compare_mnist.svg"));
    const auto rows = lines(slurp(out / "report.csv"));
    REQUIRE(rows.size() == 3);
    CHECK(split(rows[1])[0] == "wide");

    {
        std::ofstream spec(dir / "broken.txt", std::ios::binary);
        spec << "ok; 10; 5,5\nbroken; 10\n";
    }
    const auto bad = run({"predict", "--spec", (dir / "broken.txt").string(), "--out", out.string()});
    CHECK(bad.code == 2);
    CHECK(bad.err.find(":2:") != std::string::npos);
}

TEST_CASE("compare over the builtin catalog") {
    const auto out = scratch("compare");
    const auto r = run({"compare", "--out", out.string()});
    REQUIRE(r.code == 0);
    const auto rows = lines(slurp(out / "report.csv"));
    REQUIRE(rows.size() == 46);
    CHECK(rows[0] ==
          "id,depth,avg_width,widths,x_final_finite,x_final_infinite,acc_mnist_mean,acc_mnist_std,"
          "acc_fmnist_mean,acc_fmnist_std,acc_cifar_mean,acc_cifar_std");
    for (const char* svg : {"compare_mnist.svg", "compare_fmnist.svg", "compare_cifar10.svg",
                            "finite_vs_infinite.svg", "manifest.json"}) {
        CHECK(fs::exists(out / svg));
    }
    // RFC-4180 record separators.
    const auto text = slurp(out / "report.csv");
    CHECK(text.find("\r\n") != std::string::npos);
}

TEST_CASE("simulate reports absorbed replicas at tiny width") {
    const auto out = scratch("tiny");
    const auto r = run({"simulate", "--widths", "10x10", "--theta0", "0.1", "--replicas", "2000", "--seed",
                        "5", "--threads", "2", "--out", out.string()});
    REQUIRE(r.code == 0);
    const auto rows = lines(slurp(out / "simulate.csv"));
    REQUIRE(rows.size() == 12);
    CHECK(split(rows[0])[4] == "mc_absorbed");
    CHECK(std::stoi(split(rows[11])[4]) > 0);
}

TEST_CASE("simulate and density are byte-identical across thread counts") {
    std::string simulate_ref;
    std::string samples_ref;
    std::string density_ref;
    std::string svg_ref;
    for (const char* threads : {"1", "4", "8"}) {
        CAPTURE(threads);
        const auto sim = scratch(std::string("sim_t") + threads);
        REQUIRE(run({"simulate", "--widths", "48x6", "--theta0", "0.2", "--replicas", "400", "--seed", "11",
                     "--threads", threads, "--out", sim.string()})
                    .code == 0);
        const auto den = scratch(std::string("den_t") + threads);
        REQUIRE(run({"density", "--widths", "48x6", "--theta0", "0.2", "--layer", "1,3,6", "--replicas",
                     "400", "--seed", "11", "--threads", threads, "--out", den.string()})
                    .code == 0);
        const auto s = slurp(sim / "simulate.csv");
        const auto x = slurp(sim / "samples.csv");
        const auto d = slurp(den / "density_layer3.csv");
        const auto g = slurp(sim / "simulate.svg");
        if (simulate_ref.empty()) {
            simulate_ref = s;
            samples_ref = x;
            density_ref = d;
            svg_ref = g;
        } else {
            CHECK(s == simulate_ref);
            CHECK(x == samples_ref);
            CHECK(d == density_ref);
            CHECK(g == svg_ref);
        }
    }
}

TEST_CASE("replay reproduces outputs byte for byte") {
    const auto first = scratch("replay_a");
    const auto second = scratch("replay_b");
    REQUIRE(run({"density", "--widths", "64x4", "--layer", "2,4", "--replicas", "300", "--seed", "4",
                 "--sampler", "projected", "--out", first.string()})
                .code == 0);
    const auto r = run({"replay", (first / "manifest.json").string(), "--out", second.string(), "--check",
                        "--threads", "3"});
    CHECK(r.code == 0);
    CHECK(r.err.find("byte for byte") != std::string::npos);

    // A tampered original must be reported.
    {
        std::ofstream f(first / "density_layer2.csv", std::ios::binary | std::ios::app);
        f << "tampered\r\n";
    }
    const auto third = scratch("replay_c");
    const auto bad = run({"replay", (first / "manifest.json").string(), "--out", third.string(), "--check"});
    CHECK(bad.code == 1);
    CHECK(bad.err.find("density_layer2.csv") != std::string::npos);
}

TEST_CASE("density output layout and the exact first layer") {
    const auto out = scratch("density_layout");
    REQUIRE(run({"density", "--widths", "128x3", "--theta0", "0.1", "--layer", "1", "--replicas", "3000",
                 "--seed", "2", "--bins", "40", "--no-svg", "--out", out.string()})
                .code == 0);
    const auto rows = lines(slurp(out / "density_layer1.csv"));
    REQUIRE(rows.size() == 41);
    CHECK(rows[0] == "x,mc_density,predicted_density");
    CHECK_FALSE(fs::exists(out / "density_layer1.svg"));
    double mass = 0.0;
    const double width = std::stod(split(rows[2])[0]) - std::stod(split(rows[1])[0]);
    for (std::size_t i = 1; i < rows.size(); ++i) {
        mass += std::stod(split(rows[i])[2]) * width;
    }
    CHECK(mass == doctest::Approx(1.0).epsilon(0.02));
    const auto summary = lines(slurp(out / "density_summary.csv"));
    REQUIRE(summary.size() == 2);
    CHECK(std::stod(split(summary[1])[1]) < 0.1);
}

TEST_CASE("density at layer 5 of a width-256 network matches the prediction") {
    const auto out = scratch("density_tv");
    REQUIRE(run({"density", "--widths", "256x30", "--theta0", "0.1", "--layer", "5", "--replicas", "5000",
                 "--seed", "7", "--no-svg", "--out", out.string()})
                .code == 0);
    const auto summary = lines(slurp(out / "density_summary.csv"));
    REQUIRE(summary.size() == 2);
    const double tv = std::stod(split(summary[1])[1]);
    CAPTURE(tv);
    CHECK(tv <= 0.15);
}
