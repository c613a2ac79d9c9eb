#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <sstream>

#include "polyrep/reports.hpp"

using namespace polyrep;

namespace {

RunConfig cfg(const std::string& cmd, std::map<std::string, std::string> kv) { return RunConfig{cmd, std::move(kv)}; }

// minimal RFC 4180 reader
std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    bool q = false;
    for (size_t i = 0; i < line.size(); ++i) {
        char c = line[i];
        if (q) {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                cur += '"';
                ++i;
            } else if (c == '"') {
                q = false;
            } else {
                cur += c;
            }
        } else if (c == '"') {
            q = true;
        } else if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

std::string cell_of(const Json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

}  // namespace

TEST_CASE("poly eval record") {
    auto env = run_command(cfg("poly eval", {{"m", "5"}, {"x", "3"}}));
    REQUIRE(env.records.size() == 1);
    CHECK(env.records[0]["value"] == 12);
    CHECK(env.exit_code == kExitOk);
}

TEST_CASE("CSV and JSON carry the same payload") {
    for (auto c : {cfg("residuals", {{"m", "5"}, {"n-range", "1:12"}, {"digits", "20"}}),
                   cfg("repr count", {{"m", "5"}, {"alpha", "1,1,1,3"}, {"n", "30"}, {"list", "true"}}),
                   cfg("sieve weights", {{"pool", "3,5,7"}, {"D", "30"}, {"beta", "3/2"}})}) {
        auto env = run_command(c);
        std::ostringstream csv;
        write_csv(csv, env);
        std::istringstream in(csv.str());
        std::string line;
        std::vector<std::vector<std::string>> rows;
        while (std::getline(in, line))
            if (!line.empty() && line[0] != '#') rows.push_back(split_csv(line));
        REQUIRE(rows.size() == env.records.size() + 1);
        auto& head = rows[0];
        for (size_t i = 0; i < env.records.size(); ++i) {
            auto& rec = env.records[i];
            for (size_t k = 0; k < head.size(); ++k) {
                if (rec.contains(head[k])) CHECK(rows[i + 1][k] == cell_of(rec[head[k]]));
                else CHECK(rows[i + 1][k].empty());
            }
        }
    }
}

TEST_CASE("JSON-lines round trip") {
    auto env = run_command(cfg("eisenstein", {{"m", "5"}, {"alpha", "1,1,1,1"}, {"n", "1000"}, {"digits", "30"}}));
    std::stringstream ss;
    write_jsonl(ss, env);
    auto back = read_jsonl(ss);
    CHECK(back.command == env.command);
    CHECK(back.records == env.records);
    CHECK(back.summary == env.summary);
    CHECK(back.exit_code == env.exit_code);
    CHECK(back.digits == 30);
    auto rp = replay(back);
    CHECK(rp.exit_code == kExitOk);
    // a tampered record fails the replay
    back.records[0]["value"] = "4249";
    CHECK(replay(back).exit_code == kExitFailed);
}

TEST_CASE("header and summary lines") {
    auto env = run_command(cfg("poly eval", {{"m", "7"}, {"x", "-4"}}));
    std::stringstream ss;
    write_jsonl(ss, env);
    std::string first, last, line;
    std::getline(ss, first);
    while (std::getline(ss, line))
        if (!line.empty()) last = line;
    auto h = Json::parse(first);
    CHECK(h["type"] == "header");
    CHECK(h["tool"] == kToolName);
    CHECK(h["command"] == "poly eval");
    auto s = Json::parse(last);
    CHECK(s["type"] == "summary");
    CHECK(s["exit_code"] == 0);
}

TEST_CASE("config validation") {
    CHECK_THROWS_AS(cfg("poly eval", {{"m", "5"}, {"x", "1"}, {"bogus", "1"}}).validate(), UsageError);
    CHECK_THROWS_AS(cfg("witness", {{"n", "1"}, {"n-range", "1:5"}}).validate(), UsageError);
    CHECK_THROWS_AS(cfg("poly eval", {{"m", "five"}, {"x", "1"}}).validate(), UsageError);
    CHECK_THROWS_AS(cfg("density", {{"p", "5"}, {"alpha", "1,1,1"}}).validate(), UsageError);
    CHECK_THROWS_AS(cfg("poly eval", {{"m", "5"}, {"x", "1"}, {"format", "xml"}}).validate(), UsageError);
    CHECK_THROWS_AS(cfg("poly eval", {{"m", "5"}, {"x", "1"}, {"digits", "0"}}).validate(), UsageError);
    CHECK_THROWS_AS(cfg("witness", {{"n-range", "10"}}).validate(), UsageError);
    CHECK_THROWS_AS(cfg("sieve w", {{"caps", "2-3"}}).validate(), UsageError);
    CHECK_NOTHROW(cfg("sieve w", {{"caps", "2:3"}, {"z0", "10"}, {"n", "4"}}).validate());
    CHECK_THROWS_AS(run_command(cfg("nonsense", {})), UsageError);
}

TEST_CASE("typed getters") {
    auto c = cfg("sieve m", {{"D", "2.5"}, {"pool", "3,5,7"}, {"caps", "2:3,3:1"}, {"n-range", "4:9"}});
    CHECK(c.rational("D", 0) == Rational(5, 2));
    CHECK(c.primes("pool") == std::vector<unsigned long>{3, 5, 7});
    CHECK(c.caps("caps") == std::map<unsigned long, int>{{2, 3}, {3, 1}});
    CHECK(c.range("n-range") == std::pair<long, long>{4, 9});
    CHECK(c.integer("missing", 17) == 17);
}

TEST_CASE("config file") {
    std::string path = "test_reports_config.txt";
    {
        std::ofstream o(path);
        o << "# comment\nm = 5\n  x=3  \n\n";
    }
    auto kv = read_config_file(path);
    CHECK(kv.at("m") == "5");
    CHECK(kv.at("x") == "3");
    std::remove(path.c_str());
    CHECK_THROWS_AS(read_config_file("no/such/file"), UsageError);
}

TEST_CASE("exit codes") {
    CHECK(run_command(cfg("density", {{"p", "2"}, {"m", "5"}, {"n", "1"}, {"d", "4,4,4,4"}})).exit_code ==
          kExitObstruction);
    CHECK(run_command(cfg("suite theorem-gate", {{"theta", "1/1977"}})).exit_code == kExitFailed);
    CHECK(run_command(cfg("suite theorem-gate", {})).exit_code == kExitOk);
    CHECK_THROWS_AS(run_command(cfg("repr count", {{"m", "5"}, {"n", "1000000000000000000"}})), BudgetExceeded);
}
