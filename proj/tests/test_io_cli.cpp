#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "qpurity/cli.hpp"
#include "qpurity/injective.hpp"
#include "qpurity/io.hpp"
#include "qpurity/rng.hpp"

using namespace qpurity;

namespace {

struct CliResult {
    int code = 0;
    std::string out;
    std::string err;
};

CliResult cli(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

std::filesystem::path temp_file(const std::string& name) {
    return std::filesystem::temp_directory_path() / ("qpurity_test_" + name);
}

std::string write_temp(const std::string& name, const std::string& text) {
    const auto p = temp_file(name);
    std::ofstream f(p, std::ios::binary);
    f << text;
    return p.string();
}

std::string slurp(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

// value of `key,value` row in a csv report
std::string report_value(const std::string& csv, const std::string& key) {
    std::istringstream in(csv);
    std::string line;
    while (std::getline(in, line))
        if (line.rfind(key + ",", 0) == 0) return line.substr(key.size() + 1);
    return {};
}

std::vector<std::vector<double>> parse_csv(const std::string& text) {
    std::vector<std::vector<double>> rows;
    std::istringstream in(text);
    std::string line;
    std::getline(in, line);  // header
    while (std::getline(in, line)) {
        std::vector<double> row;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) row.push_back(std::strtod(cell.c_str(), nullptr));
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace

TEST_CASE("json: channel round trip is exact") {
    const Channel wh3 = wh_channel(3);
    const std::string path = write_temp("wh3.json", channel_to_json(wh3));
    const Channel back = load_channel_json(path);
    REQUIRE(back.kraus.size() == wh3.kraus.size());
    for (size_t k = 0; k < back.kraus.size(); ++k)
        for (int r = 0; r < 3; ++r)
            for (int c = 0; c < 3; ++c) CHECK(back.kraus[k](r, c) == wh3.kraus[k](r, c));
}

TEST_CASE("json: tensor round trip is exact") {
    Rng rng(5);
    std::vector<cplx> amps(12);
    for (auto& a : amps) a = rng.cgaussian();
    const TensorVector v({3, 4}, amps);
    const std::string path = write_temp("tensor.json", tensor_to_json(v));
    const TensorVector back = load_tensor_json(path);
    REQUIRE(back.dims == v.dims);
    for (size_t i = 0; i < amps.size(); ++i) CHECK(back.amplitudes[i] == v.amplitudes[i]);
}

TEST_CASE("json: malformed files raise ParseError") {
    const std::string bad = write_temp("bad.json", "{ not json");
    CHECK_THROWS_AS(load_channel_json(bad), ParseError);
    const std::string wrong = write_temp("wrong.json", R"({"dims": [2,2], "amplitudes": [[1,0]]})");
    CHECK_THROWS_AS(load_tensor_json(wrong), ShapeMismatch);
    CHECK_THROWS_AS(load_channel_json("/nonexistent/nope.json"), ParseError);
}

TEST_CASE("cli: nu-p on the builtin channel") {
    const CliResult r = cli({"nu-p", "wh:3", "--p", "inf", "--restarts", "5"});
    CHECK(r.code == 0);
    CHECK(report_value(r.out, "analytic") == "0.5");
    const double numeric = std::strtod(report_value(r.out, "numeric").c_str(), nullptr);
    CHECK(std::abs(numeric - 0.5) <= 1e-6);
}

TEST_CASE("cli: nu-p --tensor-square at p = 2 stays at the product value") {
    const CliResult r = cli({"nu-p", "wh:3", "--p", "2", "--tensor-square", "--restarts", "8"});
    CHECK(r.code == 0);
    const double numeric = std::strtod(report_value(r.out, "numeric").c_str(), nullptr);
    CHECK(std::abs(numeric - 0.5) <= 1e-5);
    CHECK(report_value(r.out, "maximizer_schmidt_sq_1") != "");
}

TEST_CASE("cli: nu-p on a channel file") {
    const std::string path = write_temp("id3.json", channel_to_json(Channel::identity(3)));
    const CliResult r = cli({"nu-p", path, "--p", "3", "--restarts", "3"});
    CHECK(r.code == 0);
    const double numeric = std::strtod(report_value(r.out, "numeric").c_str(), nullptr);
    CHECK(std::abs(numeric - 1.0) <= 1e-9);
}

TEST_CASE("cli: nu-p input failures exit 2") {
    CHECK(cli({"nu-p", "/nonexistent/ch.json", "--p", "2"}).code == 2);
    CHECK(cli({"nu-p", "wh:3", "--p", "0.5"}).code == 2);
    CHECK(cli({"nu-p", "wh:3", "--p", "1"}).code == 2);
    CHECK(cli({"nu-p", "wh:two", "--p", "2"}).code == 2);
    const std::string bad = write_temp("badch.json", "{ nope");
    CHECK(cli({"nu-p", bad, "--p", "2"}).code == 2);
}

TEST_CASE("cli: nu-p --strict exits 3 when the budget is too small to converge") {
    const CliResult r = cli({"nu-p", "wh:3", "--p", "2", "--restarts", "2", "--iters", "1", "--strict"});
    CHECK(r.code == 3);
}

TEST_CASE("cli: delta-sweep has exactly one sign change, between 4.7 and 4.8") {
    const CliResult r = cli({"delta-sweep", "--p-min", "2", "--p-max", "10", "--steps", "81"});
    CHECK(r.code == 0);
    const auto rows = parse_csv(r.out);
    REQUIRE(rows.size() == 81);
    int changes = 0;
    double where = 0.0;
    for (size_t i = 1; i < rows.size(); ++i)
        if (rows[i - 1][1] < 0.0 && rows[i][1] >= 0.0) {
            ++changes;
            where = rows[i][0];
        }
    CHECK(changes == 1);
    CHECK(where >= 4.7);
    CHECK(where <= 4.8 + 1e-12);
    CHECK(r.err.find("sign change in (") != std::string::npos);
}

TEST_CASE("cli: delta-sweep appends the inf sentinel row") {
    const CliResult r = cli({"delta-sweep", "--p-min", "2", "--p-max", "3", "--steps", "3", "--p", "inf"});
    CHECK(r.code == 0);
    const auto rows = parse_csv(r.out);
    REQUIRE(rows.size() == 4);
    CHECK(std::isinf(rows.back()[0]));
    CHECK(std::abs(rows.back()[1] - 0.28768207245178085) <= 1e-15);
}

TEST_CASE("cli: delta-sweep below the crossing is all negative") {
    const CliResult r = cli({"delta-sweep", "--p-min", "1.1", "--p-max", "2", "--steps", "10"});
    CHECK(r.code == 0);
    for (const auto& row : parse_csv(r.out)) CHECK(row[1] < 0.0);
    CHECK(r.err.find("no sign change") != std::string::npos);
}

TEST_CASE("cli: delta-sweep rejects bad ranges") {
    CHECK(cli({"delta-sweep", "--p-min", "0.5", "--p-max", "2", "--steps", "10"}).code == 2);
    CHECK(cli({"delta-sweep", "--p-min", "3", "--p-max", "2", "--steps", "10"}).code == 2);
    CHECK(cli({"delta-sweep", "--p-min", "2", "--p-max", "3", "--steps", "1"}).code == 2);
}

TEST_CASE("cli: find-p0 matches the known crossing") {
    const CliResult r = cli({"find-p0", "--tol", "1e-6"});
    CHECK(r.code == 0);
    const double p0 = std::strtod(r.out.c_str(), nullptr);
    CHECK(p0 >= 4.7813);
    CHECK(p0 <= 4.7833);
}

TEST_CASE("cli: schmidt-scan argmax moves from corner to center") {
    const CliResult at4 = cli({"schmidt-scan", "--p", "4", "--grid", "30"});
    CHECK(at4.code == 0);
    CHECK(at4.err.find("argmax") != std::string::npos);
    // parse the argmax line: argmax c1sq=X c2sq=Y delta=Z
    auto field = [](const std::string& s, const std::string& key) {
        const size_t pos = s.find(key + "=");
        return std::strtod(s.c_str() + pos + key.size() + 1, nullptr);
    };
    const double c1 = field(at4.err, "c1sq"), c2 = field(at4.err, "c2sq");
    const bool corner = (c1 == 0.0 && c2 == 0.0) || (c1 == 0.0 && c2 == 1.0) || (c1 == 1.0 && c2 == 0.0);
    CHECK(corner);

    const CliResult at5 = cli({"schmidt-scan", "--p", "5", "--grid", "30"});
    CHECK(field(at5.err, "c1sq") == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    CHECK(field(at5.err, "c2sq") == doctest::Approx(1.0 / 3.0).epsilon(1e-12));

    const size_t n_rows = parse_csv(at4.out).size();
    CHECK(n_rows == 496);  // (31*32)/2 feasible points on the 30-grid
}

TEST_CASE("cli: schmidt-scan near p0 has corner and center nearly degenerate") {
    const CliResult r = cli({"schmidt-scan", "--p", "4.7823", "--grid", "60"});
    CHECK(r.code == 0);
    const auto rows = parse_csv(r.out);
    double corner = 0.0, center = 0.0;
    for (const auto& row : rows) {
        if (row[0] == 0.0 && row[1] == 0.0) corner = row[2];
        if (std::abs(row[0] - 1.0 / 3.0) < 1e-9 && std::abs(row[1] - 1.0 / 3.0) < 1e-9) center = row[2];
    }
    CHECK(std::abs(corner - center) <= 2e-4);
}

TEST_CASE("cli: mu on builtin vectors") {
    const CliResult r1 = cli({"mu", "antisym3", "--restarts", "40"});
    CHECK(r1.code == 0);
    CHECK(std::abs(std::strtod(report_value(r1.out, "value").c_str(), nullptr) - 0.408248) <= 1e-5);

    const CliResult r2 = cli({"mu", "antisym3-squared", "--restarts", "60"});
    CHECK(r2.code == 0);
    CHECK(std::abs(std::strtod(report_value(r2.out, "value").c_str(), nullptr) - 0.192450) <= 1e-5);

    // product vector from a file
    std::vector<cplx> amps(8, 0.0);
    amps[3] = 1.0;  // |0,1,1>
    const std::string path = write_temp("prod.json", tensor_to_json(TensorVector({2, 2, 2}, amps)));
    const CliResult r3 = cli({"mu", path, "--restarts", "5"});
    CHECK(r3.code == 0);
    CHECK(std::abs(std::strtod(report_value(r3.out, "value").c_str(), nullptr) - 1.0) <= 1e-9);
}

TEST_CASE("cli: verify passes on Werner-Holevo channels") {
    for (const std::string src : {"wh:3", "wh:4"}) {
        const CliResult r = cli({"verify", src, "--trials", "20"});
        CHECK(r.code == 0);
        CHECK(report_value(r.out, "result") == "pass");
        CHECK(report_value(r.out, "kraus_vs_linear") == "pass");
        CHECK(report_value(r.out, "covariance") == "pass");
        CHECK(report_value(r.out, "hs_hermitian") == "pass");
        CHECK(report_value(r.out, "choi_psd") == "pass");
        CHECK(report_value(r.out, "trace_preserving") == "pass");
    }
}

TEST_CASE("cli: verify fails a non-trace-preserving channel with the residual reported") {
    // half-strength identity Kraus: sum A^dag A = 1/4
    const std::string text = R"({"dim_in": 2, "dim_out": 2,
        "kraus": [[[[0.5,0],[0,0]],[[0,0],[0.5,0]]]]})";
    const std::string path = write_temp("nontp.json", text);
    const CliResult r = cli({"verify", path, "--trials", "5"});
    CHECK(r.code == 4);
    CHECK(report_value(r.out, "result") == "fail");
    CHECK(report_value(r.out, "trace_preserving") == "fail");
    const double res = std::strtod(report_value(r.out, "trace_preserving_residual").c_str(), nullptr);
    CHECK(res > 0.1);
}

TEST_CASE("cli: identical command and seed give byte-identical output") {
    const std::vector<std::string> cmd{"nu-p", "wh:3", "--p", "2", "--restarts", "6", "--seed", "42"};
    const CliResult a = cli(cmd);
    const CliResult b = cli(cmd);
    CHECK(a.out == b.out);
    CHECK(a.code == b.code);

    // and through files
    const auto p1 = temp_file("det1.csv"), p2 = temp_file("det2.csv");
    cli({"schmidt-scan", "--p", "5", "--grid", "12", "-o", p1.string()});
    cli({"schmidt-scan", "--p", "5", "--grid", "12", "-o", p2.string()});
    const std::string s1 = slurp(p1.string());
    CHECK(!s1.empty());
    CHECK(s1 == slurp(p2.string()));
}

TEST_CASE("cli: PURITY_SEED provides the default seed") {
    ::setenv("PURITY_SEED", "42", 1);
    const CliResult via_env = cli({"nu-p", "wh:3", "--p", "2", "--restarts", "6"});
    ::unsetenv("PURITY_SEED");
    const CliResult via_flag = cli({"nu-p", "wh:3", "--p", "2", "--restarts", "6", "--seed", "42"});
    CHECK(via_env.out == via_flag.out);
}

TEST_CASE("cli: emitted doubles round-trip through their decimal form") {
    const CliResult r = cli({"delta-sweep", "--p-min", "2", "--p-max", "10", "--steps", "41"});
    std::istringstream in(r.out);
    std::string line;
    std::getline(in, line);  // header
    int checked = 0;
    while (std::getline(in, line)) {
        const size_t comma = line.find(',');
        const std::string cell = line.substr(comma + 1);
        const double parsed = std::strtod(cell.c_str(), nullptr);
        CHECK(fmt17(parsed) == cell);  // printing again reproduces the text
        ++checked;
    }
    CHECK(checked == 41);
}

TEST_CASE("cli: json format emits a parseable object") {
    const CliResult r = cli({"mu", "antisym3", "--restarts", "10", "--format", "json"});
    CHECK(r.code == 0);
    CHECK(r.out.find("\"value\"") != std::string::npos);
    CHECK(r.out.front() == '{');
}

TEST_CASE("cli: usage errors exit 2") {
    CHECK(cli({"no-such-command"}).code == 2);
    CHECK(cli({}).code == 2);
    CHECK(cli({"nu-p"}).code == 2);               // missing source and --p
    CHECK(cli({"find-p0", "--tol", "-1"}).code == 2);
}
