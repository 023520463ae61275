#pragma once

// Identity registry and sweep engine.  Every identity the library can
// check is registered under a frozen string id together with the exact
// parameter domain of the corresponding statement; sweeps enumerate the
// domain exhaustively or sample it with a counter-based seeded generator,
// compare LHS and RHS exactly, and assemble a deterministic report.
// Verdicts never touch floating point.

#include <chrono>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "ffhyper/appell.hpp"

namespace ffhyper {

enum class DimKind {
    Character,         // [0, q-1)
    ElemAll,           // all of F_q
    ElemNonzero,       // F_q^*
    ElemNonzeroNotOne, // F_q^* \ {1}
    FixedZero,         // the single element 0
    Binary,            // {0, 1} selector
};

struct Dim {
    const char* name;
    DimKind kind;
};

struct IdentityDef {
    const char* id;
    std::vector<Dim> dims;
    CycVal (*lhs)(const FieldCtx&, std::span<const int>);
    CycVal (*rhs)(const FieldCtx&, std::span<const int>);
    std::vector<CycVal> (*terms)(const FieldCtx&, std::span<const int>); // null if no breakdown
    bool probe = false;
};

namespace detail {

inline int dim_range(DimKind kind, const FieldCtx& F) {
    switch (kind) {
        case DimKind::Character: return F.q() - 1;
        case DimKind::ElemAll: return F.q();
        case DimKind::ElemNonzero: return F.q() - 1;
        case DimKind::ElemNonzeroNotOne: return F.q() - 2;
        case DimKind::FixedZero: return 1;
        case DimKind::Binary: return 2;
    }
    return 0;
}

inline int dim_value(DimKind kind, int coord) {
    switch (kind) {
        case DimKind::ElemNonzero: return coord + 1;
        case DimKind::ElemNonzeroNotOne: return coord + 2;
        default: return coord;
    }
}

inline uint64_t splitmix64(uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// stateless draw for sample i, dimension d: shards can be assigned to
// workers without coordination
inline uint64_t counter_rng(uint64_t seed, uint64_t i, uint64_t d) {
    return splitmix64(splitmix64(seed ^ (i * 0xd1342543de82ef95ULL)) ^ (d + 1));
}

} // namespace detail

inline const std::vector<IdentityDef>& identity_registry() {
    using Vals = std::span<const int>;
    static const std::vector<IdentityDef> defs = [] {
        std::vector<IdentityDef> v;

        v.push_back({"eq1.1",
                     {{"A", DimKind::Character}, {"B", DimKind::Character}, {"C", DimKind::Character}},
                     [](const FieldCtx& F, Vals p) {
                         return f21_point(F, {p[0], F.q() - 1}, {p[1], F.q() - 1}, {p[2], F.q() - 1}, F.one());
                     },
                     [](const FieldCtx& F, Vals p) {
                         int m = F.q() - 1;
                         CharIdx A{p[0], m}, B{p[1], m}, C{p[2], m};
                         return binom(F, B, conj(A) * C).scaled(char_sign_at_minus_one(F, A));
                     },
                     nullptr});

        v.push_back({"eq1.2",
                     {{"A", DimKind::Character},
                      {"B", DimKind::Character},
                      {"Bp", DimKind::Character},
                      {"C", DimKind::Character},
                      {"x", DimKind::ElemAll},
                      {"y", DimKind::ElemAll}},
                     [](const FieldCtx& F, Vals p) {
                         int m = F.q() - 1;
                         return f1_double(F, {{p[0], m}, {p[1], m}, {p[2], m}, {p[3], m}, {p[4]}, {p[5]}});
                     },
                     [](const FieldCtx& F, Vals p) {
                         int m = F.q() - 1;
                         return f1_double(F, {{p[0], m}, {p[2], m}, {p[1], m}, {p[3], m}, {p[5]}, {p[4]}});
                     },
                     nullptr});

        v.push_back({"prop2.1.i",
                     {{"A", DimKind::Character}, {"B", DimKind::Character}},
                     [](const FieldCtx& F, Vals p) { return binom(F, {p[0], F.q() - 1}, {p[1], F.q() - 1}); },
                     [](const FieldCtx& F, Vals p) {
                         int m = F.q() - 1;
                         CharIdx A{p[0], m}, B{p[1], m};
                         return binom(F, A, A * conj(B));
                     },
                     nullptr});

        v.push_back({"prop2.1.ii",
                     {{"A", DimKind::Character}, {"B", DimKind::Character}},
                     [](const FieldCtx& F, Vals p) { return binom(F, {p[0], F.q() - 1}, {p[1], F.q() - 1}); },
                     [](const FieldCtx& F, Vals p) {
                         int m = F.q() - 1;
                         CharIdx A{p[0], m}, B{p[1], m};
                         return binom(F, B * conj(A), B).scaled(char_sign_at_minus_one(F, B));
                     },
                     nullptr});

        v.push_back({"prop2.1.iii",
                     {{"A", DimKind::Character}, {"B", DimKind::Character}},
                     [](const FieldCtx& F, Vals p) { return binom(F, {p[0], F.q() - 1}, {p[1], F.q() - 1}); },
                     [](const FieldCtx& F, Vals p) {
                         int m = F.q() - 1;
                         CharIdx A{p[0], m}, B{p[1], m};
                         return binom(F, conj(B), conj(A)).scaled(char_sign_at_minus_one(F, A * B));
                     },
                     nullptr});

        // both stated equalities, selected by the "form" coordinate
        v.push_back({"prop2.1.iv",
                     {{"A", DimKind::Character}, {"form", DimKind::Binary}},
                     [](const FieldCtx& F, Vals p) {
                         int m = F.q() - 1;
                         CharIdx A{p[0], m};
                         return p[1] == 0 ? binom(F, A, trivial_char(F)) : binom(F, A, A);
                     },
                     [](const FieldCtx& F, Vals p) {
                         int m = F.q() - 1;
                         return CycVal::from_int(m, -1 + static_cast<long long>(m) * delta_char({p[0], m}));
                     },
                     nullptr});

        v.push_back({"prop2.2",
                     {{"A", DimKind::Character}, {"x", DimKind::ElemAll}},
                     [](const FieldCtx& F, Vals p) {
                         return char_cyc(F, {p[0], F.q() - 1}, F.add(F.one(), {p[1]}));
                     },
                     [](const FieldCtx& F, Vals p) { return binomial_theorem_rhs(F, {p[0], F.q() - 1}, {p[1]}); },
                     nullptr});

        v.push_back({"greene3.6",
                     {{"A", DimKind::Character},
                      {"B", DimKind::Character},
                      {"C", DimKind::Character},
                      {"x", DimKind::ElemAll}},
                     [](const FieldCtx& F, Vals p) {
                         int m = F.q() - 1;
                         return f21_point(F, {p[0], m}, {p[1], m}, {p[2], m}, {p[3]});
                     },
                     [](const FieldCtx& F, Vals p) {
                         int m = F.q() - 1;
                         return f21_charsum(F, {p[0], m}, {p[1], m}, {p[2], m}, {p[3]});
                     },
                     nullptr});

        v.push_back({"prop3.1.a",
                     {{"A", DimKind::Character}, {"C", DimKind::Character}, {"x", DimKind::ElemAll}},
                     [](const FieldCtx& F, Vals p) {
                         int m = F.q() - 1;
                         return f21_charsum(F, {p[0], m}, trivial_char(F), {p[1], m}, {p[2]});
                     },
                     [](const FieldCtx& F, Vals p) {
                         int m = F.q() - 1;
                         return rhs_2f1_eps(F, {p[0], m}, {p[1], m}, {p[2]});
                     },
                     nullptr});

        v.push_back({"prop3.1.b",
                     {{"A", DimKind::Character}, {"B", DimKind::Character}, {"x", DimKind::ElemAll}},
                     [](const FieldCtx& F, Vals p) {
                         int m = F.q() - 1;
                         return f21_charsum(F, {p[0], m}, {p[1], m}, {p[0], m}, {p[2]});
                     },
                     [](const FieldCtx& F, Vals p) {
                         int m = F.q() - 1;
                         return rhs_2f1_same(F, {p[0], m}, {p[1], m}, {p[2]});
                     },
                     nullptr});

        v.push_back({"prop3.1.c",
                     {{"A", DimKind::Character},
                      {"B", DimKind::Character},
                      {"C", DimKind::Character},
                      {"D", DimKind::Character},
                      {"x", DimKind::ElemAll}},
                     [](const FieldCtx& F, Vals p) {
                         int m = F.q() - 1;
                         HyperParams hp{{{p[0], m}, {p[1], m}, {p[2], m}}, {{p[0], m}, {p[3], m}}, {p[4]}};
                         return hyper_charsum(F, hp);
                     },
                     [](const FieldCtx& F, Vals p) {
                         int m = F.q() - 1;
                         return rhs_3f2_reduction(F, {p[0], m}, {p[1], m}, {p[2], m}, {p[3], m}, {p[4]});
                     },
                     nullptr});

        v.push_back({"thm2.1",
                     {{"A", DimKind::Character},
                      {"B", DimKind::Character},
                      {"Bp", DimKind::Character},
                      {"C", DimKind::Character},
                      {"x", DimKind::ElemAll},
                      {"y", DimKind::ElemNonzero}},
                     [](const FieldCtx& F, Vals p) {
                         int m = F.q() - 1;
                         return f1_double(F, {{p[0], m}, {p[1], m}, {p[2], m}, {p[3], m}, {p[4]}, {p[5]}});
                     },
                     [](const FieldCtx& F, Vals p) {
                         int m = F.q() - 1;
                         return thm21_rhs(F, {{p[0], m}, {p[1], m}, {p[2], m}, {p[3], m}, {p[4]}, {p[5]}});
                     },
                     [](const FieldCtx& F, Vals p) {
                         int m = F.q() - 1;
                         auto t = thm21_rhs_terms(F, {{p[0], m}, {p[1], m}, {p[2], m}, {p[3], m}, {p[4]}, {p[5]}});
                         return std::vector<CycVal>(t.begin(), t.end());
                     }});

        v.push_back({"thm2.1.y1",
                     {{"A", DimKind::Character},
                      {"B", DimKind::Character},
                      {"Bp", DimKind::Character},
                      {"C", DimKind::Character},
                      {"x", DimKind::ElemAll}},
                     [](const FieldCtx& F, Vals p) {
                         int m = F.q() - 1;
                         return f1_double(F, {{p[0], m}, {p[1], m}, {p[2], m}, {p[3], m}, {p[4]}, F.one()});
                     },
                     [](const FieldCtx& F, Vals p) {
                         int m = F.q() - 1;
                         return f1_at_y1_rhs(F, {p[0], m}, {p[1], m}, {p[2], m}, {p[3], m}, {p[4]});
                     },
                     nullptr});

        v.push_back({"thm3.red.b",
                     {{"A", DimKind::Character},
                      {"B", DimKind::Character},
                      {"C", DimKind::Character},
                      {"x", DimKind::ElemAll},
                      {"y", DimKind::ElemNonzeroNotOne}},
                     [](const FieldCtx& F, Vals p) {
                         int m = F.q() - 1;
                         return f1_double(F, {{p[0], m}, {p[1], m}, trivial_char(F), {p[2], m}, {p[3]}, {p[4]}});
                     },
                     [](const FieldCtx& F, Vals p) {
                         int m = F.q() - 1;
                         return thm31_rhs(F, {p[0], m}, {p[1], m}, {p[2], m}, {p[3]}, {p[4]});
                     },
                     [](const FieldCtx& F, Vals p) {
                         int m = F.q() - 1;
                         auto t = thm31_rhs_terms(F, {p[0], m}, {p[1], m}, {p[2], m}, {p[3]}, {p[4]});
                         return std::vector<CycVal>(t.begin(), t.end());
                     }});

        v.push_back({"thm3.red.bp",
                     {{"A", DimKind::Character},
                      {"Bp", DimKind::Character},
                      {"C", DimKind::Character},
                      {"x", DimKind::ElemNonzeroNotOne},
                      {"y", DimKind::ElemAll}},
                     [](const FieldCtx& F, Vals p) {
                         int m = F.q() - 1;
                         return f1_double(F, {{p[0], m}, trivial_char(F), {p[1], m}, {p[2], m}, {p[3]}, {p[4]}});
                     },
                     [](const FieldCtx& F, Vals p) {
                         int m = F.q() - 1;
                         return thm32_rhs(F, {p[0], m}, {p[1], m}, {p[2], m}, {p[3]}, {p[4]});
                     },
                     [](const FieldCtx& F, Vals p) {
                         int m = F.q() - 1;
                         auto t = thm32_rhs_terms(F, {p[0], m}, {p[1], m}, {p[2], m}, {p[3]}, {p[4]});
                         return std::vector<CycVal>(t.begin(), t.end());
                     }});

        v.push_back({"thm4.1",
                     {{"A", DimKind::Character},
                      {"B", DimKind::Character},
                      {"Bp", DimKind::Character},
                      {"C", DimKind::Character},
                      {"x", DimKind::ElemNonzero},
                      {"y", DimKind::ElemNonzeroNotOne},
                      {"t", DimKind::ElemNonzeroNotOne}},
                     [](const FieldCtx& F, Vals p) {
                         int m = F.q() - 1;
                         return genfun_lhs(F, {{{p[0], m}, {p[1], m}, {p[2], m}, {p[3], m}, {p[4]}, {p[5]}}, {p[6]}});
                     },
                     [](const FieldCtx& F, Vals p) {
                         int m = F.q() - 1;
                         return genfun_rhs(F, {{{p[0], m}, {p[1], m}, {p[2], m}, {p[3], m}, {p[4]}, {p[5]}}, {p[6]}});
                     },
                     [](const FieldCtx& F, Vals p) {
                         int m = F.q() - 1;
                         auto t =
                             genfun_rhs_terms(F, {{{p[0], m}, {p[1], m}, {p[2], m}, {p[3], m}, {p[4]}, {p[5]}}, {p[6]}});
                         return std::vector<CycVal>(t.begin(), t.end());
                     }});

        // empirical probe: no verdict, counts where the y = 0 evaluation of
        // the thm2.1 RHS agrees with the (vanishing) LHS
        v.push_back({"probe.thm2.1.y0",
                     {{"A", DimKind::Character},
                      {"B", DimKind::Character},
                      {"Bp", DimKind::Character},
                      {"C", DimKind::Character},
                      {"x", DimKind::ElemAll},
                      {"y", DimKind::FixedZero}},
                     [](const FieldCtx& F, Vals p) {
                         int m = F.q() - 1;
                         return f1_double(F, {{p[0], m}, {p[1], m}, {p[2], m}, {p[3], m}, {p[4]}, {p[5]}});
                     },
                     [](const FieldCtx& F, Vals p) {
                         int m = F.q() - 1;
                         auto t = thm21_rhs_terms(F, {{p[0], m}, {p[1], m}, {p[2], m}, {p[3], m}, {p[4]}, {p[5]}});
                         return t[0] + t[1] + t[2] + t[3];
                     },
                     [](const FieldCtx& F, Vals p) {
                         int m = F.q() - 1;
                         auto t = thm21_rhs_terms(F, {{p[0], m}, {p[1], m}, {p[2], m}, {p[3], m}, {p[4]}, {p[5]}});
                         return std::vector<CycVal>(t.begin(), t.end());
                     },
                     true});

        return v;
    }();
    return defs;
}

inline const IdentityDef& find_identity(const std::string& id) {
    for (const auto& def : identity_registry())
        if (id == def.id) return def;
    throw UnknownIdentity("unknown identity: " + id);
}

inline std::vector<std::string> identity_ids() {
    std::vector<std::string> ids;
    for (const auto& def : identity_registry()) ids.emplace_back(def.id);
    return ids;
}

enum class SweepMode { Exhaustive, Sample };

struct SweepOptions {
    SweepMode mode = SweepMode::Exhaustive;
    uint64_t sample_count = 0; // required for Sample
    uint64_t seed = 0;
    int jobs = 1;
};

struct FailureRecord {
    uint64_t tuple_index;
    std::vector<std::pair<std::string, long long>> params;
    CycVal lhs;
    CycVal rhs;
    std::vector<CycVal> terms; // RHS term breakdown when the identity provides one
};

struct VerifyReport {
    std::string identity;
    int q = 0;
    SweepMode mode = SweepMode::Exhaustive;
    uint64_t seed = 0;
    uint64_t cases = 0;
    bool probe = false;
    uint64_t equal_cases = 0; // probe reports only
    uint64_t mismatches = 0;  // total; failures keeps the first kMaxStoredFailures
    std::vector<FailureRecord> failures;
    double duration_ms = 0.0;
};

inline constexpr size_t kMaxStoredFailures = 1000;

inline uint64_t domain_cardinality(const IdentityDef& def, const FieldCtx& F) {
    uint64_t card = 1;
    for (const auto& dim : def.dims) {
        int r = detail::dim_range(dim.kind, F);
        if (r <= 0) return 0;
        if (card > (uint64_t(1) << 62) / static_cast<uint64_t>(r))
            throw LimitExceeded("domain too large to enumerate");
        card *= static_cast<uint64_t>(r);
    }
    return card;
}

inline VerifyReport sweep(const std::string& id, int q, const SweepOptions& opts = {},
                          const FieldCtx* prebuilt = nullptr) {
    const IdentityDef& def = find_identity(id);
    FieldCtx local = prebuilt ? *prebuilt : FieldCtx::build(q);
    const FieldCtx& F = local;
    if (F.q() != q) throw Error("field does not match requested q");

    size_t ndims = def.dims.size();
    std::vector<int> ranges(ndims);
    for (size_t i = 0; i < ndims; ++i) ranges[i] = detail::dim_range(def.dims[i].kind, F);

    uint64_t card = domain_cardinality(def, F);
    if (card == 0) throw EmptyDomain("identity " + id + " has an empty domain at q=" + std::to_string(q));

    uint64_t total;
    if (opts.mode == SweepMode::Exhaustive) {
        total = card;
    } else {
        if (opts.sample_count < 1) throw Error("sample count must be >= 1");
        total = opts.sample_count;
    }

    // warm the shared binomial memo before workers start
    BinomCache::get(F);

    struct ShardResult {
        std::vector<FailureRecord> failures;
        uint64_t equal_count = 0;
        uint64_t mismatches = 0;
        std::exception_ptr error;
    };

    int jobs = std::max(1, opts.jobs);
    if (static_cast<uint64_t>(jobs) > total) jobs = static_cast<int>(total);
    std::vector<ShardResult> shards(static_cast<size_t>(jobs));

    auto run_shard = [&](uint64_t begin, uint64_t end, ShardResult& out) {
        try {
            std::vector<int> coords(ndims), vals(ndims);
            for (uint64_t idx = begin; idx < end; ++idx) {
                if (opts.mode == SweepMode::Exhaustive) {
                    uint64_t rest = idx;
                    for (size_t i = ndims; i-- > 0;) {
                        coords[i] = static_cast<int>(rest % static_cast<uint64_t>(ranges[i]));
                        rest /= static_cast<uint64_t>(ranges[i]);
                    }
                } else {
                    for (size_t i = 0; i < ndims; ++i)
                        coords[i] = static_cast<int>(detail::counter_rng(opts.seed, idx, i) %
                                                     static_cast<uint64_t>(ranges[i]));
                }
                for (size_t i = 0; i < ndims; ++i) vals[i] = detail::dim_value(def.dims[i].kind, coords[i]);

                CycVal lv = def.lhs(F, vals);
                CycVal rv = def.rhs(F, vals);
                bool equal = cyc_eq(lv, rv);
                if (def.probe) {
                    if (equal) ++out.equal_count;
                    continue;
                }
                if (!equal) {
                    ++out.mismatches;
                    if (out.failures.size() < kMaxStoredFailures) {
                        FailureRecord rec;
                        rec.tuple_index = idx;
                        for (size_t i = 0; i < ndims; ++i) rec.params.emplace_back(def.dims[i].name, vals[i]);
                        rec.lhs = lv;
                        rec.rhs = rv;
                        if (def.terms) rec.terms = def.terms(F, vals);
                        out.failures.push_back(std::move(rec));
                    }
                }
            }
        } catch (...) {
            out.error = std::current_exception();
        }
    };

    auto t0 = std::chrono::steady_clock::now();
    if (jobs == 1) {
        run_shard(0, total, shards[0]);
    } else {
        std::vector<std::thread> workers;
        uint64_t chunk = total / static_cast<uint64_t>(jobs);
        uint64_t extra = total % static_cast<uint64_t>(jobs);
        uint64_t begin = 0;
        for (int w = 0; w < jobs; ++w) {
            uint64_t len = chunk + (static_cast<uint64_t>(w) < extra ? 1 : 0);
            workers.emplace_back(run_shard, begin, begin + len, std::ref(shards[static_cast<size_t>(w)]));
            begin += len;
        }
        for (auto& th : workers) th.join();
    }
    auto t1 = std::chrono::steady_clock::now();

    VerifyReport report;
    report.identity = def.id;
    report.q = q;
    report.mode = opts.mode;
    report.seed = opts.seed;
    report.cases = total;
    report.probe = def.probe;
    report.duration_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    for (auto& shard : shards) {
        if (shard.error) std::rethrow_exception(shard.error);
        report.equal_cases += shard.equal_count;
        report.mismatches += shard.mismatches;
        for (auto& f : shard.failures) {
            if (report.failures.size() >= kMaxStoredFailures) break;
            report.failures.push_back(std::move(f));
        }
    }
    return report;
}

// ---- JSON serialization -------------------------------------------------

namespace detail {

// integers above 2^53-1 in magnitude are rendered as decimal strings so
// the JSON survives double-precision consumers
inline nlohmann::ordered_json json_int(long long v) {
    constexpr long long kSafe = (1LL << 53) - 1;
    if (v > kSafe || v < -kSafe) return std::to_string(v);
    return v;
}

inline nlohmann::ordered_json json_cyc(const CycVal& v) {
    nlohmann::ordered_json j;
    auto arr = nlohmann::ordered_json::array();
    for (long long c : v.coeffs()) arr.push_back(json_int(c));
    j["coeffs"] = std::move(arr);
    j["den"] = json_int(v.den());
    return j;
}

} // namespace detail

inline nlohmann::ordered_json report_to_json(const VerifyReport& r) {
    nlohmann::ordered_json j;
    j["identity"] = r.identity;
    j["q"] = r.q;
    j["mode"] = r.mode == SweepMode::Exhaustive ? "exhaustive" : "sample";
    j["seed"] = r.seed;
    j["cases"] = r.cases;
    if (r.probe) j["equal_cases"] = r.equal_cases;
    auto failures = nlohmann::ordered_json::array();
    for (const auto& f : r.failures) {
        nlohmann::ordered_json jf;
        nlohmann::ordered_json params;
        for (const auto& [name, value] : f.params) params[name] = value;
        jf["params"] = std::move(params);
        jf["lhs"] = detail::json_cyc(f.lhs);
        jf["rhs"] = detail::json_cyc(f.rhs);
        auto terms = nlohmann::ordered_json::array();
        for (const auto& t : f.terms) terms.push_back(detail::json_cyc(t));
        jf["terms"] = std::move(terms);
        failures.push_back(std::move(jf));
    }
    j["failures"] = std::move(failures);
    j["duration_ms"] = r.duration_ms;
    return j;
}

struct FailureExplanation {
    std::vector<CycVal> terms;
    CycVal residual; // lhs minus the sum of the recorded terms
};

inline FailureExplanation explain_failure(const VerifyReport& report, size_t index) {
    if (index >= report.failures.size()) throw IndexOutOfRange("failure index out of range");
    const FailureRecord& f = report.failures[index];
    FailureExplanation ex;
    ex.terms = f.terms.empty() ? std::vector<CycVal>{f.rhs} : f.terms;
    CycVal sum = CycVal::zero(f.lhs.order());
    for (const auto& t : ex.terms) sum = sum + t;
    ex.residual = f.lhs - sum;
    return ex;
}

} // namespace ffhyper
