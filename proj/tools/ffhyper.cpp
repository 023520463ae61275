// ffhyper command-line front end: field inspection, single-point
// evaluation, identity sweeps, cache management.
//
// Exit codes: 0 success / all identities passed, 1 at least one
// counterexample found, 2 usage or domain error.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ffhyper/appell.hpp"
#include "ffhyper/field_cache.hpp"
#include "ffhyper/verify.hpp"

namespace {

using namespace ffhyper;

std::optional<std::filesystem::path> resolve_cache_dir(const std::string& flag_value) {
    if (!flag_value.empty()) return std::filesystem::path(flag_value);
    if (const char* env = std::getenv("FFHYPER_CACHE_DIR"); env && *env) return std::filesystem::path(env);
    return std::nullopt;
}

FieldCtx field_for(int q, const std::optional<std::filesystem::path>& cache_dir) {
    std::string warning;
    FieldCtx F = obtain_field(q, cache_dir, &warning);
    if (!warning.empty()) std::cerr << "warning: " << warning << "\n";
    return F;
}

std::vector<int> parse_q_list(const std::string& spec) {
    std::vector<int> qs;
    std::stringstream ss(spec);
    std::string part;
    while (std::getline(ss, part, ',')) {
        if (part.empty()) continue;
        qs.push_back(std::stoi(part));
    }
    if (qs.empty()) throw Error("no field sizes given");
    return qs;
}

std::string poly_string(const std::vector<int>& low_coeffs, int degree) {
    std::string s = degree == 1 ? "x" : "x^" + std::to_string(degree);
    for (int i = degree - 1; i >= 0; --i) {
        int c = i < static_cast<int>(low_coeffs.size()) ? low_coeffs[static_cast<size_t>(i)] : 0;
        if (c == 0) continue;
        s += " + ";
        if (i == 0) {
            s += std::to_string(c);
        } else {
            if (c != 1) s += std::to_string(c) + "*";
            s += i == 1 ? "x" : "x^" + std::to_string(i);
        }
    }
    return s;
}

std::string element_string(const FieldCtx& F, FElem a) {
    if (F.n() == 1) return std::to_string(a.idx);
    std::string s = std::to_string(a.idx) + " (";
    bool first = true;
    int idx = a.idx;
    for (int i = 0; i < F.n(); ++i, idx /= F.p()) {
        int c = idx % F.p();
        if (c == 0) continue;
        std::string term;
        if (i == 0) term = std::to_string(c);
        else {
            if (c != 1) term = std::to_string(c) + "*";
            term += i == 1 ? "x" : "x^" + std::to_string(i);
        }
        if (!first) s += " + ";
        s = first ? s + term : s + term;
        first = false;
    }
    if (first) s += "0";
    s += ")";
    return s;
}

void print_cyc(const CycVal& v) {
    std::string coeffs = "[";
    for (size_t i = 0; i < v.coeffs().size(); ++i) {
        if (i) coeffs += ", ";
        coeffs += std::to_string(v.coeffs()[i]);
    }
    coeffs += "]";
    std::cout << "coeffs = " << coeffs << "\n";
    std::cout << "den = " << v.den() << "\n";
    if (auto k = v.as_integer()) std::cout << "integer = " << *k << "\n";
    auto z = v.to_complex();
    char buf[80];
    std::snprintf(buf, sizeof buf, "%.12f %+.12fi", z.real(), z.imag());
    std::cout << "approx = " << buf << "\n";
}

int cmd_field_info(int q, const std::string& format, const std::optional<std::filesystem::path>& cache_dir) {
    FieldCtx F = field_for(q, cache_dir);
    if (format == "json") {
        nlohmann::ordered_json j;
        j["q"] = F.q();
        j["p"] = F.p();
        j["n"] = F.n();
        j["modulus"] = F.modulus();
        j["generator"] = F.generator().idx;
        j["exp_table_len"] = F.exp_table().size();
        j["log_table_len"] = F.log_table().size();
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "q = " << F.q() << " = " << F.p() << "^" << F.n() << "\n";
        if (F.n() == 1)
            std::cout << "modulus = (prime field)\n";
        else
            std::cout << "modulus = " << poly_string(F.modulus(), F.n()) << "\n";
        std::cout << "generator = " << element_string(F, F.generator()) << "\n";
        std::cout << "tables: exp[" << F.exp_table().size() << "], log[" << F.log_table().size() << "]\n";
    }
    return 0;
}

std::map<std::string, long long> parse_kv(const std::vector<std::string>& args) {
    std::map<std::string, long long> kv;
    for (const auto& a : args) {
        auto pos = a.find('=');
        if (pos == std::string::npos) throw Error("expected key=value, got '" + a + "'");
        kv[a.substr(0, pos)] = std::stoll(a.substr(pos + 1));
    }
    return kv;
}

long long need(const std::map<std::string, long long>& kv, const std::string& key) {
    auto it = kv.find(key);
    if (it == kv.end()) throw Error("missing argument " + key + "=...");
    return it->second;
}

FElem point_arg(const FieldCtx& F, const std::map<std::string, long long>& kv, const std::string& key) {
    long long v = need(kv, key);
    if (v < 0 || v >= F.q()) throw Error("point " + key + " must lie in [0, q)");
    return F.element(static_cast<int>(v));
}

int cmd_eval(const std::string& kind, const std::vector<std::string>& kvargs,
             const std::optional<std::filesystem::path>& cache_dir) {
    auto kv = parse_kv(kvargs);
    int q = static_cast<int>(need(kv, "q"));
    FieldCtx F = field_for(q, cache_dir);
    CycVal result;
    if (kind == "jacobi") {
        result = jacobi(F, make_char(F, need(kv, "A")), make_char(F, need(kv, "B")));
    } else if (kind == "binom") {
        result = binom(F, make_char(F, need(kv, "A")), make_char(F, need(kv, "B")));
    } else if (kind == "f21") {
        result = f21_charsum(F, make_char(F, need(kv, "A")), make_char(F, need(kv, "B")),
                             make_char(F, need(kv, "C")), point_arg(F, kv, "x"));
    } else if (kind == "f1double" || kind == "f1single") {
        F1Params P{make_char(F, need(kv, "A")), make_char(F, need(kv, "B")), make_char(F, need(kv, "Bp")),
                   make_char(F, need(kv, "C")), point_arg(F, kv, "x"), point_arg(F, kv, "y")};
        result = kind == "f1double" ? f1_double(F, P) : f1_single(F, P);
    } else {
        throw Error("unknown eval kind '" + kind + "' (expected f21|f1double|f1single|jacobi|binom)");
    }
    std::cout << "kind = " << kind << "  q = " << q << "\n";
    print_cyc(result);
    return 0;
}

std::string csv_quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += "\"\"";
        out += c;
    }
    out += "\"";
    return out;
}

int cmd_verify(const std::string& id, const std::string& q_spec, const std::string& mode_str, uint64_t count,
               uint64_t seed, int jobs, const std::string& format, const std::string& out_path,
               const std::optional<std::filesystem::path>& cache_dir) {
    std::vector<int> qs = parse_q_list(q_spec);
    std::vector<std::string> ids;
    bool run_all = id == "all";
    if (run_all)
        ids = identity_ids();
    else
        ids.push_back(find_identity(id).id); // validates the name

    SweepOptions opts;
    if (mode_str == "exhaustive") {
        opts.mode = SweepMode::Exhaustive;
    } else if (mode_str == "sample") {
        opts.mode = SweepMode::Sample;
        opts.sample_count = count;
    } else {
        throw Error("unknown mode '" + mode_str + "'");
    }
    opts.seed = seed;
    opts.jobs = jobs;

    std::vector<VerifyReport> reports;
    bool any_failures = false;
    for (int q : qs) {
        FieldCtx F = field_for(q, cache_dir);
        for (const auto& one_id : ids) {
            VerifyReport rep;
            try {
                rep = sweep(one_id, q, opts, &F);
            } catch (const EmptyDomain& e) {
                if (run_all) {
                    std::cout << "SKIP  " << one_id << " q=" << q << " (empty domain)\n";
                    continue;
                }
                throw;
            }
            if (rep.probe) {
                std::cout << "PROBE " << rep.identity << " q=" << q << " cases=" << rep.cases
                          << " equal=" << rep.equal_cases << "\n";
            } else {
                bool pass = rep.mismatches == 0;
                any_failures = any_failures || !pass;
                std::cout << (pass ? "PASS  " : "FAIL  ") << rep.identity << " q=" << q << " "
                          << (rep.mode == SweepMode::Exhaustive ? "exhaustive" : "sample") << " cases=" << rep.cases
                          << " failures=" << rep.mismatches << "\n";
            }
            reports.push_back(std::move(rep));
        }
    }

    std::string body;
    if (format == "json") {
        auto arr = nlohmann::ordered_json::array();
        for (const auto& r : reports) arr.push_back(report_to_json(r));
        body = arr.dump(2) + "\n";
    } else if (format == "csv") {
        body = "identity,q,param_json,lhs,rhs\n";
        for (const auto& r : reports) {
            for (const auto& f : r.failures) {
                nlohmann::ordered_json params;
                for (const auto& [k, v] : f.params) params[k] = v;
                body += r.identity + "," + std::to_string(r.q) + "," + csv_quote(params.dump()) + "," +
                        csv_quote(detail::json_cyc(f.lhs).dump()) + "," + csv_quote(detail::json_cyc(f.rhs).dump()) +
                        "\n";
            }
        }
    } else if (format == "human") {
        std::ostringstream os;
        for (const auto& r : reports) {
            if (r.probe)
                os << "PROBE " << r.identity << " q=" << r.q << " cases=" << r.cases << " equal=" << r.equal_cases
                   << "\n";
            else
                os << (r.mismatches == 0 ? "PASS  " : "FAIL  ") << r.identity << " q=" << r.q << " cases=" << r.cases
                   << " failures=" << r.mismatches << "\n";
        }
        body = os.str();
    } else {
        throw Error("unknown format '" + format + "'");
    }

    if (!out_path.empty()) {
        std::ofstream out(out_path);
        if (!out) throw Error("cannot write " + out_path);
        out << body;
    } else if (format != "human") {
        std::cout << body;
    }
    return any_failures ? 1 : 0;
}

int cmd_cache(const std::string& action, const std::string& q_spec,
              const std::optional<std::filesystem::path>& cache_dir) {
    if (!cache_dir) throw Error("no cache directory (use --cache-dir or FFHYPER_CACHE_DIR)");
    if (action == "build") {
        for (int q : parse_q_list(q_spec)) {
            std::string warning;
            FieldCtx F = obtain_field(q, cache_dir, &warning);
            if (!warning.empty()) std::cerr << "warning: " << warning << "\n";
            save_field_cache(F, *cache_dir);
            std::cout << "wrote " << field_cache_path(*cache_dir, q).string() << "\n";
        }
        return 0;
    }
    if (action == "clear") {
        std::vector<std::filesystem::path> victims;
        if (!q_spec.empty()) {
            for (int q : parse_q_list(q_spec)) victims.push_back(field_cache_path(*cache_dir, q));
        } else if (std::filesystem::exists(*cache_dir)) {
            for (const auto& entry : std::filesystem::directory_iterator(*cache_dir)) {
                auto name = entry.path().filename().string();
                if (name.rfind("field-q", 0) == 0 && entry.path().extension() == ".json")
                    victims.push_back(entry.path());
            }
        }
        for (const auto& path : victims) {
            std::error_code ec;
            if (std::filesystem::remove(path, ec)) std::cout << "removed " << path.string() << "\n";
        }
        return 0;
    }
    throw Error("unknown cache action '" + action + "' (expected build|clear)");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"ffhyper: exact character-sum calculator and identity verifier for small finite fields"};
    app.require_subcommand(1);
    app.fallthrough(); // subcommands pass --cache-dir up to the main app

    std::string cache_dir_flag;
    app.add_option("--cache-dir", cache_dir_flag, "table cache directory (overrides FFHYPER_CACHE_DIR)");

    auto* info = app.add_subcommand("field-info", "print the deterministic construction of F_q");
    int info_q = 0;
    std::string info_format = "human";
    info->add_option("q", info_q, "field order (prime power)")->required();
    info->add_option("--format", info_format, "human|json");

    auto* ev = app.add_subcommand("eval", "evaluate one sum exactly (kind: f21|f1double|f1single|jacobi|binom)");
    std::string ev_kind;
    std::vector<std::string> ev_args;
    ev->add_option("kind", ev_kind, "f21|f1double|f1single|jacobi|binom")->required();
    ev->add_option("args", ev_args, "key=value pairs: q=, A=, B=, Bp=, C=, x=, y= (characters by index, points by element index)");

    auto* ver = app.add_subcommand("verify", "sweep one identity (or 'all') over parameter domains");
    std::string ver_id, ver_q, ver_mode = "exhaustive", ver_format = "human", ver_out;
    uint64_t ver_count = 1000, ver_seed = 0;
    int ver_jobs = 1;
    ver->add_option("identity", ver_id, "identity id or 'all'")->required();
    ver->add_option("--q", ver_q, "comma-separated field orders")->required();
    ver->add_option("--mode", ver_mode, "exhaustive|sample");
    ver->add_option("--count", ver_count, "sample count (sample mode)");
    ver->add_option("--seed", ver_seed, "sample seed");
    ver->add_option("--jobs", ver_jobs, "worker threads");
    ver->add_option("--format", ver_format, "json|csv|human");
    ver->add_option("--out", ver_out, "write report to this path");

    auto* ca = app.add_subcommand("cache", "build or clear field table caches");
    std::string ca_action, ca_q;
    ca->add_option("action", ca_action, "build|clear")->required();
    ca->add_option("--q", ca_q, "comma-separated field orders");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    auto cache_dir = resolve_cache_dir(cache_dir_flag);
    try {
        if (info->parsed()) return cmd_field_info(info_q, info_format, cache_dir);
        if (ev->parsed()) return cmd_eval(ev_kind, ev_args, cache_dir);
        if (ver->parsed())
            return cmd_verify(ver_id, ver_q, ver_mode, ver_count, ver_seed, ver_jobs, ver_format, ver_out, cache_dir);
        if (ca->parsed()) return cmd_cache(ca_action, ca_q, cache_dir);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
