/*
 * Copyright 2026 The dqa Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"

#include "dqa/evalproto.hpp"
#include "dqa/histogram.hpp"
#include "dqa/indicators.hpp"
#include "dqa/manifest.hpp"
#include "dqa/predictor.hpp"
#include "dqa/report.hpp"
#include "dqa/synth.hpp"
#include "dqa/transforms.hpp"
#include "dqa/version.hpp"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;

unsigned default_threads() {
    if (const char* env = std::getenv("DQA_THREADS")) {
        long v = std::strtol(env, nullptr, 10);
        if (v >= 1 && v <= 256) return static_cast<unsigned>(v);
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

dqa::ManifestFormat parse_format(const std::string& name) {
    auto f = dqa::format_from_name(name);
    if (!f) throw CLI::ValidationError("--format", "unknown format \"" + name + "\"");
    return *f;
}

std::string slurp(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw dqa::DataError("cannot open file: " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw dqa::DataError("cannot open output file: " + path.string());
    out << content;
    if (!out) throw dqa::DataError("write failed: " + path.string());
}

// Optional key=value config file; recognized keys: skew_k, tail_k.
void apply_config_file(const std::filesystem::path& path, dqa::IndicatorConfig& cfg,
                       bool skew_from_flag, bool tail_from_flag) {
    std::ifstream in(path);
    if (!in) throw dqa::DataError("cannot open config file: " + path.string());
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw dqa::DataError("config line is not key=value: \"" + line + "\"");
        std::string key = line.substr(0, eq);
        std::string value = line.substr(eq + 1);
        if (key == "skew_k") {
            if (!skew_from_flag) cfg.skew_k_percent = std::stod(value);
        } else if (key == "tail_k") {
            if (!tail_from_flag) {
                cfg.tail_thresholds.clear();
                std::stringstream ss(value);
                std::string item;
                while (std::getline(ss, item, ','))
                    cfg.tail_thresholds.push_back(std::stoull(item));
            }
        } else {
            throw dqa::DataError("unknown config key \"" + key + "\"");
        }
    }
}

// ---------------------------------------------------------------- audit ----

struct AuditArgs {
    std::string input;
    std::string format = "jsonl";
    std::string labels_file;
    std::string config_file;
    std::string output;
    double skew_k = 5.0;
    std::vector<std::uint64_t> tail_k = {500, 100};
    bool all_labels = false;
    bool text = false;
    bool with_stats = false;
    unsigned threads = 0;
};

int run_audit(const AuditArgs& args, bool skew_flag, bool tail_flag) {
    auto t0 = std::chrono::steady_clock::now();

    dqa::IndicatorConfig cfg;
    cfg.skew_k_percent = args.skew_k;
    cfg.tail_thresholds = args.tail_k;
    if (!args.config_file.empty())
        apply_config_file(args.config_file, cfg, skew_flag, tail_flag);
    cfg.validate();

    std::vector<std::string> declared;
    if (!args.labels_file.empty()) declared = dqa::read_label_file(args.labels_file);

    unsigned threads = args.threads ? args.threads : default_threads();
    auto format = parse_format(args.format);

    std::vector<dqa::HistogramBuilder> builders;
    for (unsigned i = 0; i < std::max(1u, threads); ++i)
        builders.emplace_back(args.all_labels);

    auto stats = dqa::scan_manifest_parallel(
        args.input, format, threads, [&](unsigned worker, dqa::SampleRecord&& r) {
            if (!declared.empty())
                for (const auto& l : r.labels)
                    if (!std::binary_search(declared.begin(), declared.end(), l))
                        throw dqa::DataError("label \"" + l + "\" of record \"" + r.id +
                                             "\" is not in the declared label set");
            builders[worker].add(r);
        });

    dqa::ClassHistogram hist;
    for (auto& b : builders) hist = dqa::merge(hist, b.take());
    {
        dqa::HistogramBuilder decl;
        for (const auto& cls : declared) decl.declare_class(cls);
        hist = dqa::merge(hist, decl.take());
    }

    dqa::AuditReportDocument doc;
    doc.tool_version = dqa::kVersion;
    doc.inputs = {args.input};
    doc.format = args.format;
    doc.all_labels = args.all_labels;
    doc.duplicates_dropped = stats.duplicates_dropped;
    doc.report = dqa::audit(hist, cfg);
    if (stats.duplicates_dropped > 0)
        doc.warnings.push_back("dropped " + std::to_string(stats.duplicates_dropped) +
                               " exact duplicate record(s)");
    if (args.with_stats) {
        auto t1 = std::chrono::steady_clock::now();
        doc.stats = dqa::RunStats{std::chrono::duration<double>(t1 - t0).count(),
                                  dqa::current_peak_rss_kb()};
    }

    if (!args.output.empty()) {
        write_file(args.output, doc.to_json());
        std::cout << doc.to_text();
    } else if (args.text) {
        std::cout << doc.to_text();
    } else {
        std::cout << doc.to_json();
    }
    return kExitOk;
}

// ------------------------------------------------------------ transform ----

struct TransformArgs {
    std::string input;
    std::string output;
    std::string format = "jsonl";
    std::string plan_file;
    std::vector<std::string> donors;
    std::string kind;
    std::uint64_t target = 0, cap = 0, classes = 0, k = 0, seed = 0;
};

int run_transform(const TransformArgs& args, CLI::App* cmd) {
    dqa::TransformSpec spec;
    if (!args.plan_file.empty()) {
        spec = dqa::TransformSpec::from_json(slurp(args.plan_file));
    } else if (!args.kind.empty()) {
        json plan;
        plan["kind"] = args.kind;
        plan["seed"] = args.seed;
        json params = json::object();
        if (cmd->count("--target")) params["per_class_target"] = args.target;
        if (cmd->count("--cap")) {
            if (args.kind == "h_scale")
                params["per_class_cap"] = args.cap;
            else
                params["cap"] = args.cap;
        }
        if (cmd->count("--classes")) params["num_extra_classes"] = args.classes;
        if (cmd->count("--k")) params["k"] = args.k;
        plan["params"] = params;
        spec = dqa::TransformSpec::from_json(plan.dump());
    } else {
        throw CLI::ValidationError("transform", "either --plan or --kind is required");
    }

    auto format = parse_format(args.format);
    dqa::Manifest input = dqa::parse_manifest(args.input, format);
    std::vector<dqa::Manifest> donors;
    for (const auto& d : args.donors) donors.push_back(dqa::parse_manifest(d, format));

    dqa::TransformSummary summary;
    dqa::Manifest out = spec.apply(input, donors, &summary);
    dqa::emit_manifest(out, args.output);
    write_file(args.output + ".summary.json", summary.to_json() + "\n");
    return kExitOk;
}

// ---------------------------------------------------------------- synth ----

int run_synth_emit(const dqa::ClassHistogram& h, std::uint64_t seed,
                   const std::string& output) {
    if (output.empty()) {
        dqa::emit_synthetic_jsonl(h, seed, std::cout);
    } else {
        std::ofstream out(output, std::ios::binary);
        if (!out) throw dqa::DataError("cannot open output manifest: " + output);
        dqa::emit_synthetic_jsonl(h, seed, out);
        if (!out) throw dqa::DataError("write failed: " + output);
    }
    return kExitOk;
}

// -------------------------------------------------------------- predict ----

int run_predict(const std::vector<std::string>& report_files) {
    std::vector<dqa::CandidateEntry> candidates;
    for (const auto& file : report_files) {
        std::string text = slurp(file);
        // accept either a bare indicator report or a full audit document
        json j = json::parse(text, nullptr, false);
        if (j.is_object() && j.contains("report")) text = j["report"].dump();
        dqa::CandidateEntry c;
        c.name = std::filesystem::path(file).stem().string();
        c.report = dqa::report_from_json(text);
        candidates.push_back(std::move(c));
    }
    auto groups = dqa::predict_order(candidates);

    json out;
    out["groups"] = json::array();
    for (std::size_t g = 0; g < groups.size(); ++g) {
        json group;
        group["rank"] = g + 1;
        group["candidates"] = json::array();
        for (std::size_t i : groups[g]) {
            json c;
            c["name"] = candidates[i].name;
            c["total_samples"] = candidates[i].report.total_samples;
            for (const auto& [k, v] : candidates[i].report.long_tail)
                c["long_tail"][std::to_string(k)] = v;
            group["candidates"].push_back(c);
        }
        out["groups"].push_back(group);
    }
    std::cout << out.dump(2) << "\n";
    return kExitOk;
}

// ------------------------------------------------------------- validate ----

int run_validate(const std::string& table_file) {
    json j;
    try {
        j = json::parse(slurp(table_file));
    } catch (const json::parse_error& e) {
        throw dqa::DataError(std::string("malformed table fixture: ") + e.what());
    }
    if (!j.contains("rows") || !j["rows"].is_array() || j["rows"].size() < 2)
        throw dqa::DataError("table fixture needs a \"rows\" array with >= 2 rows");

    std::vector<double> size, skew, lt500, lt100, acc;
    for (const auto& row : j["rows"]) {
        size.push_back(row.at("size").get<double>());
        skew.push_back(row.at("left_skew").get<double>());
        lt500.push_back(row.at("long_tail_500").get<double>());
        lt100.push_back(row.at("long_tail_100").get<double>());
        acc.push_back(row.at("val_acc").get<double>());
    }

    auto emit = [](const char* name, const dqa::ConcordanceStats& s, json& out) {
        out[name]["concordant_pairs"] = s.concordant_pairs;
        out[name]["discordant_pairs"] = s.discordant_pairs;
        out[name]["kendall_tau_b"] = s.kendall_tau_b;
    };
    json out;
    emit("long_tail_500", dqa::concordance(lt500, acc), out);
    emit("long_tail_100", dqa::concordance(lt100, acc), out);
    emit("left_skew", dqa::concordance(skew, acc), out);
    // dataset size is hypothesized better when larger; flip so the shared
    // higher-is-worse convention applies
    std::vector<double> neg_size;
    for (double s : size) neg_size.push_back(-s);
    emit("dataset_size", dqa::concordance(neg_size, acc), out);
    std::cout << out.dump(2) << "\n";
    return kExitOk;
}

// ----------------------------------------------------------------- eval ----

int run_eval(const std::string& scores_file, const std::string& truth_file,
             const std::string& allow_file) {
    auto scores = dqa::read_scores_csv(scores_file);
    auto truth = dqa::read_truth_file(truth_file);
    std::set<std::string> allowed;
    if (!allow_file.empty()) {
        auto classes = dqa::read_label_file(allow_file);
        allowed.insert(classes.begin(), classes.end());
    } else {
        allowed.insert(scores.classes.begin(), scores.classes.end());
    }
    auto predicted = dqa::mask_and_argmax(scores, allowed);
    json out;
    out["samples"] = predicted.size();
    out["allowed_classes"] = allowed.size();
    out["top1_accuracy"] = dqa::top1_accuracy(predicted, truth);
    std::cout << out.dump(2) << "\n";
    return kExitOk;
}

int run_eval_robustness(const std::string& accuracies_file) {
    json j;
    try {
        j = json::parse(slurp(accuracies_file));
    } catch (const json::parse_error& e) {
        throw dqa::DataError(std::string("malformed accuracies file: ") + e.what());
    }
    std::vector<double> accs;
    const json& shifts = j.is_object() && j.contains("shifts") ? j["shifts"] : j;
    if (shifts.is_array()) {
        for (const auto& v : shifts) accs.push_back(v.get<double>());
    } else if (shifts.is_object()) {
        for (const auto& [name, v] : shifts.items()) accs.push_back(v.get<double>());
    } else {
        throw dqa::DataError("accuracies file must hold an array or object of numbers");
    }
    json out;
    out["shifts"] = accs.size();
    out["average_robustness"] = dqa::average_robustness(accs);
    std::cout << out.dump(2) << "\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"dataset-quality audit and transform toolkit"};
    app.set_version_flag("--version", dqa::kVersion);
    app.require_subcommand(1);

    // audit
    AuditArgs audit_args;
    auto* audit = app.add_subcommand("audit", "compute quality indicators for a manifest");
    audit->add_option("input", audit_args.input, "manifest file")->required();
    audit->add_option("--format", audit_args.format, "jsonl|csv|dirlist");
    audit->add_option("--skew-k", audit_args.skew_k, "head percentage for left-skewedness");
    audit->add_option("--tail-k", audit_args.tail_k,
                      "long-tail thresholds, strictly decreasing")
        ->delimiter(',');
    audit->add_option("--labels", audit_args.labels_file, "declared label set file");
    audit->add_option("--config", audit_args.config_file, "key=value defaults file");
    audit->add_option("-o,--output", audit_args.output, "write the JSON report here");
    audit->add_flag("--all-labels", audit_args.all_labels,
                    "count every label, not just the first");
    audit->add_flag("--text", audit_args.text, "print the fixed-width table, not JSON");
    audit->add_flag("--stats", audit_args.with_stats, "include wall-clock/memory stats");
    audit->add_option("--threads", audit_args.threads, "worker count (default: cores)");

    // transform
    TransformArgs tr_args;
    auto* transform = app.add_subcommand("transform", "build a dataset variant");
    transform->add_option("input", tr_args.input, "input manifest")->required();
    transform->add_option("-o,--output", tr_args.output, "output manifest")->required();
    transform->add_option("--format", tr_args.format, "jsonl|csv|dirlist");
    transform->add_option("--plan", tr_args.plan_file, "transform plan JSON file");
    transform->add_option("--donor", tr_args.donors, "donor manifest(s)");
    transform->add_option("--kind", tr_args.kind,
                          "v_scale|h_scale|truncate_head|rebalance_tail|blend");
    transform->add_option("--target", tr_args.target, "v_scale per-class target");
    transform->add_option("--cap", tr_args.cap, "truncate_head / h_scale cap");
    transform->add_option("--classes", tr_args.classes, "h_scale extra class count");
    transform->add_option("--k", tr_args.k, "rebalance_tail threshold");
    transform->add_option("--seed", tr_args.seed, "sampling seed");

    // synth
    auto* synth = app.add_subcommand("synth", "generate synthetic manifests");
    synth->require_subcommand(1);
    struct {
        std::uint64_t classes = 100, size = 0, per_class = 0, seed = 0;
        double exponent = 1.0;
        std::string output;
    } sy;
    auto* zipf = synth->add_subcommand("zipf", "rank-frequency distributed classes");
    zipf->add_option("--classes", sy.classes, "number of classes")->required();
    zipf->add_option("--size", sy.size, "total samples")->required();
    zipf->add_option("--exponent", sy.exponent, "rank-frequency exponent");
    zipf->add_option("--seed", sy.seed, "id-generation seed");
    zipf->add_option("-o,--output", sy.output, "output manifest (default: stdout)");
    auto* balanced = synth->add_subcommand("balanced", "equal-sized classes");
    balanced->add_option("--classes", sy.classes, "number of classes")->required();
    balanced->add_option("--per-class", sy.per_class, "samples per class")->required();
    balanced->add_option("--seed", sy.seed, "id-generation seed");
    balanced->add_option("-o,--output", sy.output, "output manifest (default: stdout)");

    // predict
    std::vector<std::string> report_files;
    auto* predict = app.add_subcommand("predict", "rank candidate datasets by indicators");
    predict->add_option("--reports", report_files, "indicator report files")->required();

    // validate
    std::string table_file;
    auto* validate = app.add_subcommand("validate",
                                        "concordance of indicators vs observed accuracy");
    validate->add_option("--table", table_file, "table fixture JSON")->required();

    // eval
    struct {
        std::string scores, truth, allow, accuracies;
    } ev;
    auto* eval = app.add_subcommand("eval", "label-space-masked top-1 evaluation");
    eval->add_option("--scores", ev.scores, "scores csv");
    eval->add_option("--truth", ev.truth, "truth file, one class per line");
    eval->add_option("--allow", ev.allow, "allowed-class file (default: all columns)");
    auto* robustness = eval->add_subcommand("robustness", "mean accuracy across shifts");
    robustness->add_option("--accuracies", ev.accuracies, "per-shift accuracy JSON")
        ->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*audit)
            return run_audit(audit_args, audit->count("--skew-k") > 0,
                             audit->count("--tail-k") > 0);
        if (*transform) return run_transform(tr_args, transform);
        if (*zipf) {
            dqa::ZipfSpec spec{sy.classes, sy.size, sy.exponent, sy.seed};
            return run_synth_emit(dqa::zipf_histogram(spec), sy.seed, sy.output);
        }
        if (*balanced) {
            if (sy.per_class == 0) throw dqa::DataError("--per-class must be positive");
            // exponent 0 makes every class exactly per_class samples
            dqa::ZipfSpec spec{sy.classes, sy.classes * sy.per_class, 0.0, sy.seed};
            return run_synth_emit(dqa::zipf_histogram(spec), sy.seed, sy.output);
        }
        if (*predict) return run_predict(report_files);
        if (*validate) return run_validate(table_file);
        if (*eval) {
            if (*robustness) return run_eval_robustness(ev.accuracies);
            if (ev.scores.empty() || ev.truth.empty()) {
                std::cerr << "eval needs --scores and --truth (or the robustness "
                             "subcommand)\n";
                return kExitUsage;
            }
            return run_eval(ev.scores, ev.truth, ev.allow);
        }
    } catch (const dqa::DataError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitData;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitData;
    }
    return kExitUsage;
}
