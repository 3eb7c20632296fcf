#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "splitred/errors.hpp"
#include "splitred/golden.hpp"
#include "splitred/scenario.hpp"

namespace {

using nlohmann::json;

constexpr int exit_ok = 0;
constexpr int exit_analysis = 1;
constexpr int exit_schema = 2;
constexpr int exit_inconclusive = 3;

json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw splitred::schema_error("cannot open file: " + path);
    return json::parse(in);
}

int run_one(const std::string& path, unsigned precision, bool strict) {
    auto sc = splitred::parse_scenario(load_json(path));
    auto res = splitred::run_scenario(sc, precision);
    std::cout << res.report.dump(2) << "\n";
    if (strict && res.inconclusive) return exit_inconclusive;
    return exit_ok;
}

int reproduce_paper(const std::string& filter, bool list) {
    const auto& cases = splitred::golden_cases();
    if (list) {
        for (const auto& c : cases) std::cout << c.id << "\n";
        return exit_ok;
    }
    bool matched = false;
    int failures = 0;
    for (const auto& c : cases) {
        if (!filter.empty() && c.id != filter) continue;
        matched = true;
        try {
            c.run();
            std::cout << "PASS  " << c.id << "  " << c.description << "\n";
        } catch (const std::exception& e) {
            ++failures;
            std::cout << "FAIL  " << c.id << "  " << e.what() << "\n";
        }
    }
    if (!filter.empty() && !matched) {
        std::cerr << "unknown case id: " << filter << "\n";
        return exit_schema;
    }
    return failures == 0 ? exit_ok : exit_analysis;
}

struct vary_spec {
    std::string key;
    std::vector<long> values;
};

vary_spec parse_vary(const std::string& arg) {
    auto eq = arg.find('=');
    if (eq == std::string::npos)
        throw splitred::schema_error("--vary needs key=range, got: " + arg);
    vary_spec out;
    out.key = arg.substr(0, eq);
    std::string range = arg.substr(eq + 1);
    auto dots = range.find("..");
    if (dots != std::string::npos) {
        long lo = std::stol(range.substr(0, dots));
        long hi = std::stol(range.substr(dots + 2));
        for (long v = lo; v <= hi; ++v) out.values.push_back(v);
    } else if (!range.empty()) {
        std::stringstream ss(range);
        std::string tok;
        while (std::getline(ss, tok, ',')) out.values.push_back(std::stol(tok));
    }
    return out;
}

json::json_pointer pointer_of(const std::string& dotted) {
    std::string p;
    for (char c : dotted) p += (c == '.') ? '/' : c;
    return json::json_pointer("/" + p);
}

int scan(const std::string& path, const std::vector<std::string>& vary_args,
         const std::string& out_path, unsigned jobs, bool keep_going, unsigned precision,
         bool strict) {
    json tmpl = load_json(path);

    std::vector<vary_spec> vary;
    for (const auto& a : vary_args) vary.push_back(parse_vary(a));
    // deterministic row order: lexicographic in the varied keys
    std::sort(vary.begin(), vary.end(),
              [](const vary_spec& a, const vary_spec& b) { return a.key < b.key; });

    // cartesian product of the ranges
    std::vector<std::vector<long>> combos;
    std::vector<long> cur(vary.size());
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
        if (i == vary.size()) {
            if (!vary.empty()) combos.push_back(cur);
            return;
        }
        for (long v : vary[i].values) {
            cur[i] = v;
            rec(i + 1);
        }
    };
    if (vary.empty())
        combos.push_back({});
    else
        rec(0);

    struct row_out {
        std::string text;
        bool inconclusive = false;
        std::string error; // nonempty on hard failure
    };
    std::vector<row_out> rows(combos.size());

    auto work = [&](std::size_t i) {
        json doc = tmpl;
        std::string suffix;
        for (std::size_t k = 0; k < vary.size(); ++k) {
            doc[pointer_of(vary[k].key)] = combos[i][k];
            suffix += (k == 0 ? "[" : ",") + vary[k].key + "=" +
                      std::to_string(combos[i][k]);
        }
        if (!suffix.empty()) suffix += "]";
        try {
            auto sc = splitred::parse_scenario(doc);
            sc.id += suffix;
            auto res = splitred::run_scenario(sc, precision);
            rows[i].text = splitred::csv_row(res);
            rows[i].inconclusive = res.inconclusive;
        } catch (const std::exception& e) {
            rows[i].error = e.what();
            splitred::scenario_result err;
            err.id = doc.value("id", std::string("scenario")) + suffix;
            err.status = "Error";
            err.certificate = e.what();
            rows[i].text = splitred::csv_row(err);
        }
    };

    unsigned nthreads = std::max(1u, jobs);
    if (nthreads == 1 || combos.size() <= 1) {
        for (std::size_t i = 0; i < combos.size(); ++i) work(i);
    } else {
        std::vector<std::thread> pool;
        std::atomic<std::size_t> next{0};
        for (unsigned t = 0; t < nthreads; ++t)
            pool.emplace_back([&] {
                for (std::size_t i = next.fetch_add(1); i < combos.size();
                     i = next.fetch_add(1))
                    work(i);
            });
        for (auto& th : pool) th.join();
    }

    std::ostringstream out;
    out << splitred::csv_header() << "\n";
    bool any_error = false, any_inconclusive = false;
    for (const auto& r : rows) {
        out << r.text << "\n";
        if (!r.error.empty()) any_error = true;
        if (r.inconclusive) any_inconclusive = true;
    }

    if (out_path.empty() || out_path == "-") {
        std::cout << out.str();
    } else {
        std::ofstream f(out_path, std::ios::binary);
        if (!f) throw splitred::schema_error("cannot open output file: " + out_path);
        f << out.str();
    }

    if (any_error && !keep_going) return exit_analysis;
    if (strict && any_inconclusive) return exit_inconclusive;
    return exit_ok;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact reduction analysis for Weil restrictions of Tate curves"};
    app.require_subcommand(1);

    unsigned precision = 0;
    bool strict = false;
    app.add_option("--precision", precision, "override the tower precision");
    app.add_flag("--strict", strict, "exit 3 when any verdict is Inconclusive");

    std::string run_file;
    auto* run_cmd = app.add_subcommand("run", "run one scenario file, report JSON to stdout");
    run_cmd->add_option("file", run_file, "scenario JSON file")->required();

    std::string filter;
    bool list = false;
    auto* paper_cmd =
        app.add_subcommand("reproduce-paper", "re-derive the published numeric examples");
    paper_cmd->add_option("--case", filter, "run a single case by id");
    paper_cmd->add_flag("--list", list, "print case ids and exit");

    std::string scan_file, scan_out;
    std::vector<std::string> vary_args;
    unsigned jobs = 1;
    bool keep_going = false;
    auto* scan_cmd = app.add_subcommand("scan", "parameter sweep with CSV output");
    scan_cmd->add_option("template", scan_file, "scenario template JSON file")->required();
    scan_cmd->add_option("--vary", vary_args, "key=range (e.g. tower.levels.0.degree=2..6)");
    scan_cmd->add_option("--out", scan_out, "CSV output file (default stdout)");
    scan_cmd->add_option("--jobs", jobs, "worker threads");
    scan_cmd->add_flag("--keep-going", keep_going, "record errors as rows and continue");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*run_cmd) return run_one(run_file, precision, strict);
        if (*paper_cmd) return reproduce_paper(filter, list);
        return scan(scan_file, vary_args, scan_out, jobs, keep_going, precision, strict);
    } catch (const nlohmann::json::parse_error& e) {
        std::cerr << "schema error: " << e.what() << "\n";
        return exit_schema;
    } catch (const splitred::parse_failure& e) {
        std::cerr << "parse error at position " << e.position << ": " << e.what() << "\n";
        return exit_schema;
    } catch (const splitred::schema_error& e) {
        std::cerr << "schema error: " << e.what() << "\n";
        return exit_schema;
    } catch (const splitred::error& e) {
        std::cerr << "analysis error: " << e.what() << "\n";
        return exit_analysis;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_analysis;
    }
}
