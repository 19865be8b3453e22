// tdu: command-line front end over the shared-library C API.
//
// Offline verbs keep their state in the config's data-dir (policies/ and
// readings.csv) plus the ledger file, so separate invocations compose.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "tdu.h"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct CliError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in.is_open()) throw CliError("cannot read file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out.is_open()) throw CliError("cannot write file: " + path);
    out << content;
    if (!out) throw CliError("write failed: " + path);
}

struct OwnedString {
    char* ptr = nullptr;
    ~OwnedString() { tdu_string_free(ptr); }
    std::string str() const { return ptr ? ptr : ""; }
};

struct Handle {
    tdu_platform* p = nullptr;
    ~Handle() { tdu_platform_destroy(p); }
};

void check(tdu_status status, const Handle& h, const std::string& what) {
    if (status == TDU_OK) return;
    throw CliError(what + ": " + (h.p ? tdu_last_error(h.p) : "initialization failed"));
}

std::string expand_actor(const std::string& actor) {
    if (actor == "DO") return "DataOwner";
    if (actor == "MA") return "MunicipalAuthority";
    if (actor == "CO") return "CommercialOperator";
    return actor;
}

struct Workspace {
    Handle handle;
    std::string data_dir = ".";
    std::string config_path;

    void open() {
        tdu_status status;
        if (!config_path.empty()) {
            status = tdu_platform_create_from_file(config_path.c_str(), &handle.p);
            if (status == TDU_OK) {
                json cfg = json::parse(read_file(config_path));
                if (cfg.contains("data-dir")) data_dir = cfg.at("data-dir");
            }
        } else {
            status = tdu_platform_create(nullptr, &handle.p);
        }
        if (status != TDU_OK || !handle.p)
            throw CliError("cannot create platform (check the config file)");
        load_state();
    }

    fs::path policy_dir() const { return fs::path(data_dir) / "policies"; }
    fs::path readings_path() const { return fs::path(data_dir) / "readings.csv"; }

    void load_state() {
        if (fs::is_directory(policy_dir())) {
            std::vector<fs::path> files;
            for (const auto& entry : fs::directory_iterator(policy_dir()))
                if (entry.is_regular_file()) files.push_back(entry.path());
            std::sort(files.begin(), files.end());
            for (const auto& f : files) {
                tdu_format format =
                    f.extension() == ".json" ? TDU_FORMAT_JSON : TDU_FORMAT_XML;
                check(tdu_policy_add(handle.p, read_file(f.string()).c_str(), format),
                      handle, "loading policy " + f.string());
            }
        }
        if (fs::is_regular_file(readings_path()))
            check(tdu_data_ingest_csv(handle.p, read_file(readings_path().string()).c_str()),
                  handle, "loading readings");
    }

    void store_policy(const std::string& document, tdu_format format) {
        json parsed;  // derive a stable filename from the policy URI
        std::string name = "policy";
        OwnedString list;
        check(tdu_policy_list(handle.p, &list.ptr), handle, "policy list");
        json policies = json::parse(list.str());
        if (!policies.empty())
            name = policies.back().at("UsagePolicy").at("Name").get<std::string>();
        std::string safe;
        for (char c : name) safe += std::isalnum(static_cast<unsigned char>(c)) ? c : '_';
        fs::create_directories(policy_dir());
        write_file((policy_dir() / (safe + (format == TDU_FORMAT_JSON ? ".json" : ".xml")))
                       .string(),
                   document);
    }

    void append_readings(const std::string& csv) {
        fs::create_directories(data_dir);
        if (fs::is_regular_file(readings_path())) {
            // Drop the header when appending to an existing file.
            auto nl = csv.find('\n');
            std::string body = nl == std::string::npos ? "" : csv.substr(nl + 1);
            std::ofstream out(readings_path(), std::ios::app);
            out << body;
        } else {
            write_file(readings_path().string(), csv);
        }
    }
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Trust-based data usage platform"};
    app.require_subcommand(1);

    Workspace ws;
    app.add_option("--config", ws.config_path, "platform config file (JSON)");

    // policy add/list/check
    auto* policy = app.add_subcommand("policy", "manage usage policies");
    policy->require_subcommand(1);
    std::string policy_file, policy_format = "xml";
    auto* policy_add = policy->add_subcommand("add", "register a usage policy document");
    policy_add->add_option("--file", policy_file, "UsagePolicy document")->required();
    policy_add->add_option("--format", policy_format, "xml or json")
        ->check(CLI::IsMember({"xml", "json"}));
    auto* policy_list = policy->add_subcommand("list", "list registered policies");
    auto* policy_check =
        policy->add_subcommand("check", "compile policies and report conflicts");

    // data ingest/gen/transform
    auto* data = app.add_subcommand("data", "manage sensor readings");
    data->require_subcommand(1);
    std::string data_file, data_out;
    auto* data_ingest = data->add_subcommand("ingest", "import a readings CSV file");
    data_ingest->add_option("--file", data_file, "CSV file")->required();
    std::uint64_t gen_seed = 1;
    std::size_t gen_count = 1000;
    int gen_zones = 2, gen_streets = 3;
    std::int64_t gen_from = 1700000000, gen_to = 1700604800;
    auto* data_gen = data->add_subcommand("gen", "generate synthetic readings");
    data_gen->add_option("--seed", gen_seed);
    data_gen->add_option("--count", gen_count);
    data_gen->add_option("--zones", gen_zones);
    data_gen->add_option("--streets-per-zone", gen_streets);
    data_gen->add_option("--from", gen_from, "window start (epoch seconds)");
    data_gen->add_option("--to", gen_to, "window end (epoch seconds)");
    data_gen->add_option("--out", data_out, "output CSV path (default: stdout)");
    std::string tr_spatial = "any", tr_temporal = "any", tr_abstraction = "detail";
    std::int64_t tr_from = 0, tr_to = INT64_MAX;
    std::string tr_format = "json";
    auto* data_transform = data->add_subcommand("transform", "roll up stored readings");
    data_transform->add_option("--spatial", tr_spatial, "street|zone|any");
    data_transform->add_option("--temporal", tr_temporal, "secondly..yearly|any");
    data_transform->add_option("--abstraction", tr_abstraction,
                               "detail|aggregation|statistic|any");
    data_transform->add_option("--from", tr_from);
    data_transform->add_option("--to", tr_to);
    data_transform->add_option("--format", tr_format)->check(CLI::IsMember({"xml", "json"}));

    // request eval
    auto* request = app.add_subcommand("request", "consumer requests");
    request->require_subcommand(1);
    std::string rq_actor, rq_spatial, rq_temporal, rq_abstraction, rq_purpose,
        rq_subject = "consumer";
    auto* request_eval = request->add_subcommand("eval", "evaluate a consumer request");
    request_eval->add_option("--actor", rq_actor, "DO|MA|CO or full class name")->required();
    request_eval->add_option("--spatial", rq_spatial)->required();
    request_eval->add_option("--temporal", rq_temporal)->required();
    request_eval->add_option("--abstraction", rq_abstraction)->required();
    request_eval->add_option("--purpose", rq_purpose);
    request_eval->add_option("--subject", rq_subject, "subject constant (default: consumer)");

    // ledger history
    auto* ledger = app.add_subcommand("ledger", "usage accountability");
    ledger->require_subcommand(1);
    std::string lh_policy, lh_subject, lh_outcome;
    auto* ledger_history = ledger->add_subcommand("history", "query the usage ledger");
    ledger_history->add_option("--policy", lh_policy);
    ledger_history->add_option("--subject", lh_subject);
    ledger_history->add_option("--outcome", lh_outcome)
        ->check(CLI::IsMember({"Granted", "Refused"}));

    // bench
    int bench_iters = 50;
    std::string bench_mode = "both", bench_stats_out, bench_table_out;
    auto* bench = app.add_subcommand("bench", "trust enforcement time benchmark");
    bench->add_option("--iterations", bench_iters)->check(CLI::Range(2, 100000));
    bench->add_option("--mode", bench_mode)->check(CLI::IsMember({"cold", "warm", "both"}));
    bench->add_option("--stats-out", bench_stats_out, "stats JSON output path");
    bench->add_option("--table-out", bench_table_out, "plot-ready table output path");

    // serve
    std::string serve_host = "0.0.0.0";
    int serve_port = 0;
    auto* serve = app.add_subcommand("serve", "run the HTTP service");
    serve->add_option("--host", serve_host);
    serve->add_option("--port", serve_port, "overrides the config port");

    CLI11_PARSE(app, argc, argv);

    try {
        ws.open();

        if (policy_add->parsed()) {
            std::string doc = read_file(policy_file);
            tdu_format format = policy_format == "json" ? TDU_FORMAT_JSON : TDU_FORMAT_XML;
            check(tdu_policy_add(ws.handle.p, doc.c_str(), format), ws.handle, "policy add");
            ws.store_policy(doc, format);
            std::cout << "policy registered\n";
        } else if (policy_list->parsed()) {
            OwnedString out;
            check(tdu_policy_list(ws.handle.p, &out.ptr), ws.handle, "policy list");
            std::cout << out.str() << "\n";
        } else if (policy_check->parsed()) {
            OwnedString out;
            check(tdu_policy_check(ws.handle.p, &out.ptr), ws.handle, "policy check");
            json conflicts = json::parse(out.str());
            if (conflicts.empty()) std::cout << "no conflicts\n";
            else std::cout << conflicts.dump(2) << "\n";
            return conflicts.empty() ? 0 : 1;
        } else if (data_ingest->parsed()) {
            std::string csv = read_file(data_file);
            check(tdu_data_ingest_csv(ws.handle.p, csv.c_str()), ws.handle, "data ingest");
            ws.append_readings(csv);
            std::cout << "readings ingested\n";
        } else if (data_gen->parsed()) {
            OwnedString out;
            check(tdu_data_generate(gen_seed, gen_count, gen_streets, gen_zones, gen_from,
                                    gen_to, &out.ptr),
                  ws.handle, "data gen");
            if (data_out.empty()) std::cout << out.str();
            else write_file(data_out, out.str());
        } else if (data_transform->parsed()) {
            OwnedString out;
            tdu_format format = tr_format == "xml" ? TDU_FORMAT_XML : TDU_FORMAT_JSON;
            check(tdu_data_transform(ws.handle.p, tr_spatial.c_str(), tr_temporal.c_str(),
                                     tr_abstraction.c_str(), tr_from, tr_to, format,
                                     &out.ptr),
                  ws.handle, "data transform");
            std::cout << out.str() << "\n";
        } else if (request_eval->parsed()) {
            std::string actor = expand_actor(rq_actor);
            check(tdu_subject_register(ws.handle.p, rq_subject.c_str(), actor.c_str()),
                  ws.handle, "subject register");
            json rq{{"subject", rq_subject},
                    {"actorClass", actor},
                    {"spatial", rq_spatial},
                    {"temporal", rq_temporal},
                    {"abstraction", rq_abstraction}};
            if (!rq_purpose.empty()) rq["purpose"] = rq_purpose;
            OwnedString out;
            check(tdu_query(ws.handle.p, rq.dump().c_str(), &out.ptr), ws.handle,
                  "request eval");
            json result = json::parse(out.str());
            std::cout << result.at("explanation").get<std::string>();
            return result.at("decision").at("outcome") == "Granted" ? 0 : 1;
        } else if (ledger_history->parsed()) {
            json filter = json::object();
            if (!lh_policy.empty()) filter["policy"] = lh_policy;
            if (!lh_subject.empty()) filter["subject"] = lh_subject;
            if (!lh_outcome.empty()) filter["outcome"] = lh_outcome;
            OwnedString out;
            check(tdu_ledger_history(ws.handle.p, filter.dump().c_str(), &out.ptr),
                  ws.handle, "ledger history");
            std::cout << out.str() << "\n";
        } else if (bench->parsed()) {
            OwnedString out;
            check(tdu_bench(bench_iters, bench_mode.c_str(), &out.ptr), ws.handle, "bench");
            json stats = json::parse(out.str());
            if (!bench_stats_out.empty()) write_file(bench_stats_out, stats.dump(2) + "\n");
            if (!bench_table_out.empty() && stats.contains("table"))
                write_file(bench_table_out, stats.at("table").get<std::string>());
            std::cout << stats.dump(2) << "\n";
        } else if (serve->parsed()) {
            int port = serve_port;
            if (port == 0 && !ws.config_path.empty()) {
                json cfg = json::parse(read_file(ws.config_path));
                if (cfg.contains("port")) port = cfg.at("port").get<int>();
            }
            if (port == 0) port = 8080;
            std::cerr << "serving on " << serve_host << ":" << port << "\n";
            check(tdu_serve(ws.handle.p, serve_host.c_str(), port), ws.handle, "serve");
        }
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
