#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <memory>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "dpbkit/dpbkit.h"

namespace {

using Json = nlohmann::json;

enum Exit { kOk = 0, kNegative = 1, kParse = 2, kNumerical = 3 };

struct Options {
    std::string file;
    std::string norm = "inf";
    std::string norm_json;
    std::string demo;
    int nodes = 0;
    double cluster_tol = -1.0;
    double circ_tol = 0.0;
    double alg_tol = 0.0;
    std::uint64_t seed = 1;
    bool json_only = false;
};

struct Failure {
    dpbk_status status;
    std::string message;
};

int exit_code(dpbk_status s) {
    switch (s) {
    case DPBK_OK: return kOk;
    case DPBK_ERR_NOT_DPB: return kNegative;
    case DPBK_ERR_PARSE:
    case DPBK_ERR_INVALID_ARGUMENT:
    case DPBK_ERR_DIMENSION_MISMATCH: return kParse;
    default: return kNumerical;
    }
}

void check(dpbk_status s) {
    if (s != DPBK_OK) throw Failure{s, dpbk_last_error()};
}

// Takes ownership of a string allocated by the library.
std::string take(char* s) {
    std::unique_ptr<char, decltype(&dpbk_string_free)> guard(s, dpbk_string_free);
    return s ? std::string(s) : std::string();
}

std::string read_input(const std::string& path) {
    if (path == "-") return {std::istreambuf_iterator<char>(std::cin), {}};
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Failure{DPBK_ERR_PARSE, "cannot read " + path};
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string digest(const std::string& bytes) {
    char* out = nullptr;
    check(dpbk_digest(bytes.data(), bytes.size(), &out));
    return take(out);
}

using MatrixPtr = std::unique_ptr<dpbk_matrix, decltype(&dpbk_matrix_destroy)>;
using NormPtr = std::unique_ptr<dpbk_norm, decltype(&dpbk_norm_destroy)>;
using VerdictPtr = std::unique_ptr<dpbk_verdict, decltype(&dpbk_verdict_destroy)>;

MatrixPtr load_matrix(const std::string& text) {
    dpbk_matrix* m = nullptr;
    check(dpbk_matrix_from_json(text.c_str(), &m));
    return {m, dpbk_matrix_destroy};
}

NormPtr load_norm(const Options& o) {
    dpbk_norm* k = nullptr;
    if (!o.norm_json.empty()) check(dpbk_norm_from_json(read_input(o.norm_json).c_str(), &k));
    else check(dpbk_norm_create(o.norm.c_str(), &k));
    return {k, dpbk_norm_destroy};
}

dpbk_tolerances tolerances(const Options& o) {
    dpbk_tolerances t = dpbk_tolerances_default();
    if (o.circ_tol > 0) t.circ_tol = o.circ_tol;
    if (o.alg_tol > 0) t.alg_tol = o.alg_tol;
    if (o.cluster_tol >= 0) t.cluster_tol = o.cluster_tol;
    if (o.nodes > 0) t.riesz_nodes = o.nodes;
    return t;
}

Json settings(const Options& o, const dpbk_tolerances& t) {
    return {{"norm", o.norm_json.empty() ? o.norm : "json:" + o.norm_json},
            {"circ_tol", t.circ_tol},
            {"alg_tol", t.alg_tol},
            {"cluster_tol", t.cluster_tol},
            {"nodes", t.riesz_nodes},
            {"seed", o.seed}};
}

struct Outcome {
    Json result;
    Json residuals = Json::object();
    std::string summary;
    int code = kOk;
    std::string input;
};

std::string fmt(const Json& j) {
    if (j.is_number_float()) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.6g", j.get<double>());
        return buf;
    }
    return j.dump();
}

std::string point_list(const Json& spectrum) {
    std::string s = "{";
    for (std::size_t i = 0; i < spectrum["points"].size(); ++i) {
        const Json& p = spectrum["points"][i];
        if (i) s += ", ";
        s += fmt(p["re"]);
        const double im = p["im"].get<double>();
        if (im != 0.0) s += (im < 0 ? " - " : " + ") + fmt(std::abs(im)) + "i";
        if (p["mult"].get<int>() > 1) s += " (mult " + std::to_string(p["mult"].get<int>()) + ")";
    }
    return s + "}";
}

Outcome cmd_spectrum(const Options& o) {
    Outcome out;
    out.input = read_input(o.file);
    const auto m = load_matrix(out.input);
    const dpbk_tolerances t = tolerances(o);
    char* s = nullptr;
    check(dpbk_spectrum_json(m.get(), &t, &s));
    out.result = Json::parse(take(s));
    out.summary = "spectrum " + point_list(out.result);
    return out;
}

Outcome cmd_dpb(const Options& o) {
    Outcome out;
    out.input = read_input(o.file);
    const auto m = load_matrix(out.input);
    const auto k = load_norm(o);
    const dpbk_tolerances t = tolerances(o);
    dpbk_verdict* raw = nullptr;
    check(dpbk_dpb_decide(m.get(), k.get(), &t, &raw));
    const VerdictPtr v(raw, dpbk_verdict_destroy);
    char* s = nullptr;
    check(dpbk_verdict_to_json(v.get(), &s));
    out.result = Json::parse(take(s));
    for (const char* key : {"circle_deviation", "minpoly_residual", "product_residual"})
        out.residuals[key] = out.result[key];
    if (dpbk_verdict_is_dpb(v.get())) {
        out.summary = "DPB, power bound " + fmt(out.result["power_bound"]);
    } else {
        out.code = kNegative;
        out.summary = "not DPB, circle deviation " + fmt(out.result["circle_deviation"]) +
                      ", minpoly residual " + fmt(out.result["minpoly_residual"]);
        const Json& w = out.result["growth_witness"];
        if (!w.is_null()) out.summary += ", witness ||b^" + fmt(w["n"]) + "|| = " + fmt(w["norm"]);
    }
    return out;
}

Outcome cmd_decompose(const Options& o) {
    Outcome out;
    out.input = read_input(o.file);
    const auto m = load_matrix(out.input);
    const auto k = load_norm(o);
    const dpbk_tolerances t = tolerances(o);
    char* s = nullptr;
    const dpbk_status st = dpbk_decompose_json(m.get(), k.get(), &t, &s);
    if (st != DPBK_OK && st != DPBK_ERR_NOT_DPB) throw Failure{st, dpbk_last_error()};
    out.result = Json::parse(take(s));
    if (st == DPBK_ERR_NOT_DPB) {
        out.code = kNegative;
        out.summary = "not DPB, no idempotent system";
        out.residuals["minpoly_residual"] = out.result["verdict"]["minpoly_residual"];
        return out;
    }
    out.residuals = out.result["system"]["residuals"];
    out.residuals["riesz_lagrange_agreement"] = out.result["riesz_lagrange_agreement"];
    const bool verified = out.result["verification"]["all_pass"].get<bool>();
    out.summary = std::to_string(out.result["system"]["lambdas"].size()) + " idempotents, reconstruction " +
                  fmt(out.residuals["reconstruction"]) + ", riesz agreement " +
                  fmt(out.residuals["riesz_lagrange_agreement"]) +
                  (verified ? ", verified" : ", verification FAILED");
    if (!verified) out.code = kNumerical;
    return out;
}

Outcome cmd_demo(const Options& o) {
    Outcome out;
    out.input = o.demo;
    char* s = nullptr;
    int passed = 0;
    check(dpbk_demo_json(o.demo.c_str(), o.seed, &s, &passed));
    out.result = Json::parse(take(s));
    std::string lines;
    for (const auto& c : out.result["checks"]) {
        if (c["actual"].is_number()) out.residuals[c["name"].get<std::string>()] = c["actual"];
        if (!c["pass"].get<bool>())
            lines += "\n  - " + c["name"].get<std::string>() + ": expected " + c["expected"].dump() +
                     ", got " + c["actual"].dump();
    }
    out.code = passed ? kOk : kNegative;
    out.summary = "demo " + o.demo + (passed ? ": PASS" : ": FAIL") + lines;
    if (o.demo == "commutator")
        out.summary += "\n  eigenvalue " + out.result["data"]["eigenvalue"][0].dump() + " (expected 5/6)";
    if (o.demo == "wiener")
        for (const auto& row : out.result["data"]["table"])
            if (row["N"].get<int>() % 10 == 0 || row["N"].get<int>() == 1)
                out.summary += "\n  N=" + row["N"].dump() + "  norm " + row["norm"].dump();
    return out;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Spectral decompositions of doubly power-bounded matrices"};
    app.require_subcommand(1);
    Options o;

    auto add_common = [&](CLI::App* c, bool with_norm) {
        c->add_option("--cluster-tol", o.cluster_tol, "spectral clustering tolerance");
        c->add_flag("--json", o.json_only, "suppress the summary on stderr");
        c->add_option("--seed", o.seed, "random seed");
        if (!with_norm) return;
        c->add_option("--norm", o.norm, "algebra norm")->check(CLI::IsMember({"one", "inf", "two"}));
        c->add_option("--norm-json", o.norm_json, "file holding a norm in JSON");
        c->add_option("--circ-tol", o.circ_tol, "unit circle tolerance")->check(CLI::PositiveNumber);
        c->add_option("--alg-tol", o.alg_tol, "annihilation tolerance")->check(CLI::PositiveNumber);
        c->add_option("--nodes", o.nodes, "initial contour nodes")->check(CLI::Range(8, 1 << 20));
    };

    auto* spec = app.add_subcommand("spectrum", "print the clustered spectrum");
    spec->add_option("file", o.file, "matrix JSON, - for stdin")->required();
    add_common(spec, false);
    auto* dpb = app.add_subcommand("dpb", "decide double power-boundedness");
    dpb->add_option("file", o.file, "matrix JSON, - for stdin")->required();
    add_common(dpb, true);
    auto* dec = app.add_subcommand("decompose", "idempotent system with Riesz cross-check");
    dec->add_option("file", o.file, "matrix JSON, - for stdin")->required();
    add_common(dec, true);
    auto* demo = app.add_subcommand("demo", "run a named demonstration");
    demo->add_option("name", o.demo)
        ->required()
        ->check(CLI::IsMember({"gelfand", "periodic", "triangular", "commutator", "wiener", "cyclic", "inclusion"}));
    add_common(demo, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kOk : kParse;
    }

    const std::string command = app.get_subcommands().front()->get_name();
    const auto start = std::chrono::steady_clock::now();
    Json report{{"command", command}};
    try {
        Outcome out = command == "spectrum"    ? cmd_spectrum(o)
                      : command == "dpb"       ? cmd_dpb(o)
                      : command == "decompose" ? cmd_decompose(o)
                                               : cmd_demo(o);
        const Json opts = settings(o, tolerances(o));
        report["inputs_digest"] = digest(command + '\n' + out.input + '\n' + opts.dump());
        report["settings"] = opts;
        report["result"] = std::move(out.result);
        report["residuals"] = std::move(out.residuals);
        report["exit_code"] = out.code;
        report["wall_time_s"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::cout << report.dump() << '\n';
        if (!o.json_only) std::cerr << out.summary << '\n';
        return out.code;
    } catch (const Failure& f) {
        const int code = exit_code(f.status);
        report["error"] = {{"status", dpbk_status_name(f.status)}, {"message", f.message}};
        report["exit_code"] = code;
        std::cout << report.dump() << '\n';
        std::cerr << "error: " << dpbk_status_name(f.status) << ": " << f.message << '\n';
        return code;
    } catch (const Json::exception& e) {
        std::cerr << "error: malformed library output: " << e.what() << '\n';
        return kNumerical;
    }
}
