#include "cache.hpp"
#include "experiment.hpp"
#include "selmer/verify/verify.hpp"

#include "CLI11.hpp"

#include <chrono>
#include <fstream>
#include <future>
#include <iostream>
#include <optional>

namespace {

using namespace selmer;
using namespace selmer::cli;

enum Exit { kOk = 0, kCheckFailed = 1, kUsage = 2, kBudget = 3 };

struct Flags {
    std::optional<uint64_t> seed, samples;
    std::optional<std::string> mode;
    int jobs = 1;
    std::string cache_dir, output;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SpecError("spec", "cannot open '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void emit(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-")
        std::cout << text;
    else
        write_atomic(path, text);
}

// Runs tasks with at most `jobs` in flight, results in submission order.
template <class T>
std::vector<T> fan_out(std::vector<std::function<T()>> tasks, int jobs) {
    std::vector<T> out;
    out.reserve(tasks.size());
    if (jobs <= 1) {
        for (auto& t : tasks) out.push_back(t());
        return out;
    }
    std::vector<std::future<T>> running;
    size_t next = 0;
    while (next < tasks.size() || !running.empty()) {
        while (next < tasks.size() && static_cast<int>(running.size()) < jobs) running.push_back(std::async(std::launch::async, tasks[next++]));
        running.front().wait();
        // futures complete in any order; collect the finished prefix in order
        out.push_back(running.front().get());
        running.erase(running.begin());
    }
    return out;
}

json envelope_point(const ExperimentSpec& point, ResultCache* cache) {
    auto t0 = std::chrono::steady_clock::now();
    const std::string key = sha256_hex(point.canonical());
    json stored;
    bool hit = false;
    if (cache) {
        if (auto c = cache->lookup(key)) {
            stored = *c;
            hit = true;
        }
    }
    if (!hit) {
        Outcome o = run_point(point);
        stored = json{{"result", o.result}, {"exact", o.exact}, {"check_failed", o.check_failed}, {"rejections", o.rejections}};
        if (cache) cache->store(key, stored, point.kind);
    }
    double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    json prov{{"library_version", SELMER_VERSION}, {"wall_time_s", wall}, {"cache", hit ? "hit" : "miss"}, {"key", key},
              {"rejections", stored["rejections"]}};
    if (point.params.count("seed")) prov["seed"] = point.params.at("seed");
    return json{{"spec", point.to_json()},
                {"result", stored["result"]},
                {"exact", stored["exact"]},
                {"check_failed", stored["check_failed"]},
                {"provenance", prov}};
}

int cmd_run(const std::string& spec_path, const Flags& f) {
    ExperimentSpec spec = ExperimentSpec::parse(read_file(spec_path));
    if (f.seed) spec.params["seed"] = std::to_string(*f.seed);
    if (f.samples) spec.params["samples"] = std::to_string(*f.samples);
    if (f.mode) spec.params["mode"] = *f.mode;
    std::string output = f.output.empty() ? spec.output : f.output;

    std::vector<ExperimentSpec> points;
    if (spec.params.count("sweep")) {
        std::string sw = spec.params["sweep"];
        auto colon = sw.find(':');
        if (colon == std::string::npos) throw SpecError("sweep", "expected key:v1,v2,...");
        std::string key = sw.substr(0, colon);
        std::stringstream vals(sw.substr(colon + 1));
        std::string v;
        spec.params.erase("sweep");
        while (std::getline(vals, v, ',')) {
            ExperimentSpec p = spec;
            p.params[key] = v;
            points.push_back(p);
        }
        if (points.empty()) throw SpecError("sweep", "no values");
    } else {
        points.push_back(spec);
    }
    for (auto& p : points) normalize(p);

    std::optional<ResultCache> cache;
    if (!f.cache_dir.empty()) cache.emplace(f.cache_dir);
    std::vector<std::function<json()>> tasks;
    for (auto& p : points) tasks.push_back([&, p] { return envelope_point(p, cache ? &*cache : nullptr); });
    std::vector<json> results = fan_out(std::move(tasks), f.jobs);

    bool failed = false;
    for (auto& r : results) failed = failed || r["check_failed"].get<bool>();
    json doc = results.size() == 1 ? results[0] : json{{"sweep", results}};
    emit(output, doc.dump(2) + "\n");
    if (results.size() == 1 && results[0]["result"].contains("status"))
        std::cerr << results[0]["result"]["status"].get<std::string>() << "\n";
    return failed ? kCheckFailed : kOk;
}

int cmd_verify(const std::string& which, const Flags& f) {
    verify::Options opt;
    if (f.seed) opt.seed = *f.seed;
    if (f.samples) opt.samples = *f.samples;
    std::vector<std::string> names;
    if (which == "all") {
        for (auto& s : verify::suites()) names.push_back(s.name);
    } else if (auto* s = verify::find_suite(which)) {
        names.push_back(s->name);
    } else {
        std::cerr << "unknown suite '" << which << "'; available:\n";
        for (auto& s : verify::suites()) std::cerr << "  " << s.name << "\n";
        return kUsage;
    }
    std::vector<std::function<verify::SuiteReport()>> tasks;
    for (auto& n : names) tasks.push_back([n, opt] { return verify::run_suite(n, opt); });
    auto reports = fan_out(std::move(tasks), f.jobs);
    bool ok = true;
    json doc = json::array();
    for (auto& r : reports) {
        std::cout << "== " << r.suite << " (criterion " << r.criterion << ") ==\n";
        for (auto& c : r.checks)
            std::cout << "  [" << (c.gating ? (c.pass ? "PASS" : "FAIL") : (c.pass ? "info" : "INFO")) << "] " << c.name
                      << (c.detail.empty() ? "" : ": " + c.detail) << "\n";
        std::cout << r.suite << ": " << (r.pass() ? "PASS" : "FAIL") << " (" << r.summary() << ", " << r.seconds << " s)\n";
        ok = ok && r.pass();
        json checks = json::array();
        for (auto& c : r.checks) checks.push_back(json{{"name", c.name}, {"pass", c.pass}, {"gating", c.gating}, {"detail", c.detail}});
        doc.push_back(json{{"suite", r.suite}, {"pass", r.pass()}, {"seconds", r.seconds}, {"seed", opt.seed}, {"checks", checks}});
    }
    if (!f.output.empty()) write_atomic(f.output, doc.dump(2) + "\n");
    return ok ? kOk : kCheckFailed;
}

std::string csv_field(const json& v) {
    std::string s = v.is_string() ? v.get<std::string>() : v.dump();
    if (s.find_first_of(",\"\n") != std::string::npos) {
        std::string q = "\"";
        for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
        return q + "\"";
    }
    return s;
}

void scalar_rows(const json& obj, const std::string& prefix, std::vector<std::pair<std::string, json>>& rows) {
    for (auto& [k, v] : obj.items()) {
        if (v.is_object())
            scalar_rows(v, prefix + k + ".", rows);
        else if (!v.is_array())
            rows.emplace_back(prefix + k, v);
    }
}

int cmd_export_csv(const std::string& input, const Flags& f) {
    json doc = json::parse(read_file(input));
    std::vector<json> points = doc.contains("sweep") ? doc["sweep"].get<std::vector<json>>() : std::vector<json>{doc};
    std::ostringstream out;
    // distributions become one row per support point; anything else a key,value table
    auto dist_of = [](const json& res) -> const json* {
        if (res.contains("distribution")) return &res["distribution"];
        return nullptr;
    };
    if (dist_of(points[0]["result"])) {
        out << "point,module,probability,count\n";
        for (size_t i = 0; i < points.size(); ++i)
            for (auto& e : (*dist_of(points[i]["result"]))["support"])
                out << i << "," << csv_field(e["module"]) << "," << csv_field(e["probability"]) << ","
                    << (e.contains("count") ? e["count"].dump() : "") << "\n";
    } else {
        out << "point,key,value\n";
        for (size_t i = 0; i < points.size(); ++i) {
            std::vector<std::pair<std::string, json>> rows;
            scalar_rows(points[i]["spec"], "spec.", rows);
            scalar_rows(points[i]["result"], "", rows);
            for (auto& [k, v] : rows) out << i << "," << csv_field(k) << "," << csv_field(v) << "\n";
        }
    }
    emit(f.output, out.str());
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"selmer: exact and sampled checks for Selmer-group heuristics"};
    app.set_version_flag("--version", std::string(SELMER_VERSION));
    app.require_subcommand(1);
    Flags f;
    uint64_t seed = 0, samples = 0;
    std::string mode;
    auto add_common = [&](CLI::App* sub, bool sampling) {
        if (sampling) {
            sub->add_option("--seed", seed, "RNG seed");
            sub->add_option("--samples", samples, "Monte-Carlo sample count");
        }
        sub->add_option("--jobs", f.jobs, "parallel workers")->check(CLI::Range(1, 256));
        sub->add_option("--output", f.output, "output path (default stdout)");
    };

    std::string spec_path;
    auto* run = app.add_subcommand("run", "run an experiment spec (key=value file)");
    run->add_option("spec", spec_path, "spec file")->required();
    run->add_option("--mode", mode, "exhaustive|mc")->check(CLI::IsMember({"exhaustive", "mc"}));
    run->add_option("--cache-dir", f.cache_dir, "content-addressed result cache");
    add_common(run, true);

    std::string suite;
    auto* ver = app.add_subcommand("verify", "run an acceptance suite (or 'all')");
    ver->add_option("suite", suite, "suite name or criterion number")->required();
    add_common(ver, true);

    auto* list = app.add_subcommand("list-suites", "list verification suites");

    std::string input;
    auto* csv = app.add_subcommand("export-csv", "convert a result file to CSV");
    csv->add_option("input", input, "result JSON")->required();
    csv->add_option("--output", f.output, "output path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kOk : kUsage;
    }
    if (run->count("--seed") || ver->count("--seed")) f.seed = seed;
    if (run->count("--samples") || ver->count("--samples")) f.samples = samples;
    if (run->count("--mode")) f.mode = mode;

    try {
        if (*run) return cmd_run(spec_path, f);
        if (*ver) return cmd_verify(suite, f);
        if (*list) {
            for (auto& s : verify::suites()) std::cout << s.name << "\t" << s.criterion << "\t" << s.description << "\n";
            return kOk;
        }
        if (*csv) return cmd_export_csv(input, f);
    } catch (const SpecError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const BudgetExceeded& e) {
        std::cerr << "refused: " << e.what() << "\n";
        return kBudget;
    } catch (const json::exception& e) {
        std::cerr << "error: malformed JSON: " << e.what() << "\n";
        return kUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kCheckFailed;
    }
    return kUsage;
}
