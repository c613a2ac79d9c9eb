#include "polyrep/reports.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

namespace polyrep {

namespace {

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream is(s);
    while (std::getline(is, cur, sep)) out.push_back(trim(cur));
    return out;
}

[[noreturn]] void bad(const std::string& k, const std::string& want, const std::string& got) {
    throw UsageError("--" + k + ": expected " + want + ", got '" + got + "'");
}

long to_long(const std::string& k, const std::string& v, const std::string& want = "an integer") {
    try {
        size_t pos = 0;
        long x = std::stol(v, &pos);
        if (pos != v.size()) bad(k, want, v);
        return x;
    } catch (const std::logic_error&) {
        bad(k, want, v);
    }
}

}  // namespace

std::string RunConfig::str(const std::string& k, const std::string& def) const {
    auto it = kv.find(k);
    return it == kv.end() ? def : it->second;
}

long RunConfig::integer(const std::string& k, long def) const { return has(k) ? to_long(k, kv.at(k)) : def; }

Integer RunConfig::big(const std::string& k, const Integer& def) const {
    if (!has(k)) return def;
    Integer z;
    if (z.set_str(kv.at(k), 10) != 0) bad(k, "an integer", kv.at(k));
    return z;
}

Rational RunConfig::rational(const std::string& k, const Rational& def) const {
    if (!has(k)) return def;
    const std::string& v = kv.at(k);
    // accept decimals like 0.05 as exact rationals
    auto dot = v.find('.');
    if (dot != std::string::npos && v.find('/') == std::string::npos) {
        std::string digits = v.substr(0, dot) + v.substr(dot + 1);
        if (digits.empty() || digits == "-") bad(k, "a rational", v);
        Integer num;
        if (num.set_str(digits, 10) != 0) bad(k, "a rational", v);
        Rational q(num, ipow(Integer(10), static_cast<unsigned>(v.size() - dot - 1)));
        q.canonicalize();
        return q;
    }
    try {
        return parse_rational(v);
    } catch (const UsageError&) {
        bad(k, "a rational such as 3/2", v);
    }
}

Real RunConfig::real(const std::string& k, const Real& def) const {
    if (!has(k)) return def;
    try {
        return Real(kv.at(k));
    } catch (const std::exception&) {
        bad(k, "a decimal number", kv.at(k));
    }
}

bool RunConfig::flag(const std::string& k, bool def) const {
    if (!has(k)) return def;
    const std::string& v = kv.at(k);
    if (v == "1" || v == "true" || v == "yes" || v == "on") return true;
    if (v == "0" || v == "false" || v == "no" || v == "off") return false;
    bad(k, "true or false", v);
}

Quad RunConfig::quad(const std::string& k, const Quad& def) const {
    if (!has(k)) return def;
    try {
        return parse_quad(kv.at(k));
    } catch (const UsageError&) {
        bad(k, "four comma-separated integers", kv.at(k));
    }
}

std::vector<unsigned long> RunConfig::primes(const std::string& k) const {
    std::vector<unsigned long> out;
    if (!has(k) || kv.at(k).empty()) return out;
    for (auto& t : split(kv.at(k), ',')) {
        long p = to_long(k, t, "a comma-separated list of primes");
        if (p < 2 || !is_prime(Integer(p))) bad(k, "a comma-separated list of primes", kv.at(k));
        out.push_back(static_cast<unsigned long>(p));
    }
    return out;
}

std::pair<long, long> RunConfig::range(const std::string& k) const {
    const std::string& v = kv.at(k);
    auto parts = split(v, ':');
    if (parts.size() != 2) bad(k, "lo:hi", v);
    long lo = to_long(k, parts[0], "lo:hi"), hi = to_long(k, parts[1], "lo:hi");
    if (lo < 0 || hi < lo) bad(k, "0 <= lo <= hi", v);
    return {lo, hi};
}

std::map<unsigned long, int> RunConfig::caps(const std::string& k) const {
    std::map<unsigned long, int> out;
    if (!has(k) || kv.at(k).empty()) return out;
    for (auto& t : split(kv.at(k), ',')) {
        auto pc = split(t, ':');
        if (pc.size() != 2) bad(k, "p:c pairs such as 2:3,3:1", kv.at(k));
        long p = to_long(k, pc[0], "p:c pairs"), c = to_long(k, pc[1], "p:c pairs");
        if (p < 2 || !is_prime(Integer(p)) || c < 1) bad(k, "prime p and cap c >= 1", t);
        out[static_cast<unsigned long>(p)] = static_cast<int>(c);
    }
    return out;
}

void RunConfig::validate() const {
    auto& names = command_names();
    if (std::find(names.begin(), names.end(), command) == names.end())
        throw UsageError("unknown command '" + command + "'");
    auto& keys = command_keys(command);
    for (auto& [k, v] : kv) {
        if (std::find(keys.begin(), keys.end(), k) == keys.end()) {
            std::string allowed;
            for (auto& a : keys) allowed += (allowed.empty() ? "" : ", ") + a;
            throw UsageError("option '" + k + "' does not apply to '" + command + "' (allowed: " + allowed + ")");
        }
    }
    if (has("n") && has("n-range")) throw UsageError("give either --n or --n-range, not both");
    if (has("digits") && (digits() < 1 || digits() > 55)) bad("digits", "1..55", str("digits", ""));
    if (has("threads") && threads() < 0) bad("threads", "a count >= 0", str("threads", ""));
    auto fmt = str("format", "json");
    if (fmt != "json" && fmt != "csv") bad("format", "json or csv", fmt);
    // typed parse of everything present, so errors surface before any computation
    for (auto& [k, v] : kv) {
        if (k == "alpha" || k == "d" || k == "ell") quad(k, {});
        else if (k == "n-range") range(k);
        else if (k == "caps") caps(k);
        else if (k == "pool" || k == "inner-p" || k == "exclude" || k == "extra-primes") primes(k);
        else if (k == "m" || k == "p" || k == "depth" || k == "cases" || k == "seed" || k == "omega-bound" ||
                 k == "factor-bound" || k == "desk-cases" || k == "exclude-upto" || k == "oracle-max-depth" ||
                 k == "oracle-max-modulus")
            integer(k, 0);
        else if (k == "n" || k == "x") big(k, 0);
        else if (k == "D" || k == "beta" || k == "theta" || k == "z0" || k == "C" || k == "eps" || k == "slack" ||
                 k == "exponent")
            rational(k, 0);
        else if (k == "s" || k == "z" || k == "c-err" || k == "B" || k == "oracle-budget" || k == "budget")
            real(k, 0);
        else if (k == "list" || k == "allow-zero" || k == "zero-divisible" || k == "grid")
            flag(k, false);
    }
    if (has("alpha")) CoefficientVector(quad("alpha", {}));
    if (has("m")) PolygonalFamily(integer("m", 0));
}

std::map<std::string, std::string> read_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open config file " + path);
    std::map<std::string, std::string> kv;
    std::string line;
    int ln = 0;
    while (std::getline(in, line)) {
        ++ln;
        auto t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        auto eq = t.find('=');
        if (eq == std::string::npos)
            throw UsageError(path + ":" + std::to_string(ln) + ": expected key = value");
        kv[trim(t.substr(0, eq))] = trim(t.substr(eq + 1));
    }
    return kv;
}

Json jint(const Integer& z) {
    if (mpz_fits_slong_p(z.get_mpz_t())) return Json(z.get_si());
    return Json(z.get_str());
}

Json jquad(const Quad& q) { return Json::array({q[0], q[1], q[2], q[3]}); }

std::string rstr(const Rational& q) { return to_string(q); }

void write_jsonl(std::ostream& os, const ReportEnvelope& env) {
    Json head{{"type", "header"}, {"tool", kToolName}, {"version", kToolVersion}, {"command", env.command},
              {"config", env.config}, {"digits", env.digits}};
    os << head.dump() << "\n";
    for (auto& r : env.records) {
        Json line{{"type", "record"}};
        for (auto& [k, v] : r.items()) line[k] = v;
        os << line.dump() << "\n";
    }
    Json tail{{"type", "summary"}, {"summary", env.summary}, {"exit_code", env.exit_code},
              {"elapsed_ms", env.elapsed_ms}};
    os << tail.dump() << "\n";
}

namespace {

std::string csv_cell(const Json& v) {
    std::string s;
    if (v.is_string()) s = v.get<std::string>();
    else if (v.is_null()) s = "";
    else s = v.dump();
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
    return q + "\"";
}

}  // namespace

void write_csv(std::ostream& os, const ReportEnvelope& env) {
    os << "# " << kToolName << " " << kToolVersion << " command=" << env.command << " digits=" << env.digits
       << "\n";
    os << "# config " << env.config.dump() << "\n";
    std::vector<std::string> cols;
    for (auto& r : env.records)
        for (auto& [k, v] : r.items())
            if (std::find(cols.begin(), cols.end(), k) == cols.end()) cols.push_back(k);
    for (size_t i = 0; i < cols.size(); ++i) os << (i ? "," : "") << cols[i];
    os << "\n";
    for (auto& r : env.records) {
        for (size_t i = 0; i < cols.size(); ++i) {
            if (i) os << ",";
            if (r.contains(cols[i])) os << csv_cell(r[cols[i]]);
        }
        os << "\n";
    }
    os << "# summary " << env.summary.dump() << " exit_code=" << env.exit_code << "\n";
}

void write_report(const ReportEnvelope& env, const std::string& format, const std::string& path) {
    auto emit = [&](std::ostream& os) {
        if (format == "csv") write_csv(os, env);
        else write_jsonl(os, env);
    };
    if (path.empty() || path == "-") {
        emit(std::cout);
        std::cout.flush();
        return;
    }
    std::ofstream out(path);
    if (!out) throw UsageError("cannot write " + path);
    emit(out);
}

ReportEnvelope read_jsonl(std::istream& is) {
    ReportEnvelope env;
    std::string line;
    bool head = false;
    while (std::getline(is, line)) {
        if (trim(line).empty()) continue;
        Json j;
        try {
            j = Json::parse(line);
        } catch (const Json::parse_error& e) {
            throw UsageError(std::string("not a JSON-lines report: ") + e.what());
        }
        auto type = j.value("type", "");
        if (type == "header") {
            env.command = j.at("command").get<std::string>();
            env.config = j.at("config");
            env.digits = j.value("digits", 50);
            head = true;
        } else if (type == "record") {
            j.erase("type");
            env.records.push_back(j);
        } else if (type == "summary") {
            env.summary = j.at("summary");
            env.exit_code = j.value("exit_code", 0);
            env.elapsed_ms = j.value("elapsed_ms", 0.0);
        }
    }
    if (!head) throw UsageError("report has no header line");
    return env;
}

ReportEnvelope replay(const ReportEnvelope& recorded) {
    RunConfig cfg;
    cfg.command = recorded.command;
    for (auto& [k, v] : recorded.config.items()) cfg.kv[k] = v.get<std::string>();
    cfg.kv.erase("output");
    cfg.kv.erase("format");
    auto t0 = std::chrono::steady_clock::now();
    auto fresh = run_command(cfg);
    ReportEnvelope env;
    env.command = "replay";
    env.config = Json{{"command", recorded.command}};
    env.digits = recorded.digits;
    bool same_records = fresh.records == recorded.records;
    bool same_summary = fresh.summary == recorded.summary;
    bool same_exit = fresh.exit_code == recorded.exit_code;
    size_t first_diff = 0;
    while (first_diff < std::min(fresh.records.size(), recorded.records.size()) &&
           fresh.records[first_diff] == recorded.records[first_diff])
        ++first_diff;
    env.records.push_back({{"part", "records"}, {"recorded", recorded.records.size()},
                           {"replayed", fresh.records.size()}, {"identical", same_records},
                           {"first_difference", same_records ? Json(nullptr) : Json(first_diff)}});
    env.records.push_back({{"part", "summary"}, {"identical", same_summary}});
    env.records.push_back({{"part", "exit_code"}, {"identical", same_exit}});
    bool ok = same_records && same_summary && same_exit;
    env.summary = {{"identical", ok}};
    env.exit_code = ok ? kExitOk : kExitFailed;
    env.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return env;
}

}  // namespace polyrep
