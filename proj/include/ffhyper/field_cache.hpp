#pragma once

// Versioned JSON cache for field tables.  Files live under a cache
// directory (flag or FFHYPER_CACHE_DIR) as field-q<q>.json.  A loaded
// cache is never trusted blindly: every field invariant is re-validated
// and a file that fails validation is rejected.

#include <filesystem>
#include <fstream>
#include <optional>
#include <string>

#include <json.hpp>

#include "ffhyper/field.hpp"

namespace ffhyper {

inline std::filesystem::path field_cache_path(const std::filesystem::path& dir, int q) {
    return dir / ("field-q" + std::to_string(q) + ".json");
}

inline void save_field_cache(const FieldCtx& F, const std::filesystem::path& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    nlohmann::ordered_json j;
    j["version"] = 1;
    j["q"] = F.q();
    j["p"] = F.p();
    j["n"] = F.n();
    j["modulus"] = F.modulus();
    j["generator"] = F.generator().idx;
    j["log_table"] = F.log_table();
    std::ofstream out(field_cache_path(dir, F.q()));
    if (!out) throw CacheError("cannot write cache file in " + dir.string());
    out << j.dump(2) << '\n';
    if (!out) throw CacheError("failed writing cache file in " + dir.string());
}

// returns the validated field, or nullopt with a reason when the file is
// missing or fails validation
inline std::optional<FieldCtx> load_field_cache(int q, const std::filesystem::path& dir,
                                                std::string* reason = nullptr) {
    auto path = field_cache_path(dir, q);
    std::ifstream in(path);
    if (!in) {
        if (reason) *reason = "no cache file";
        return std::nullopt;
    }
    try {
        nlohmann::json j = nlohmann::json::parse(in);
        if (j.at("version").get<int>() != 1) throw Error("unsupported cache version");
        if (j.at("q").get<int>() != q) throw Error("cache q mismatch");
        FieldCtx F = FieldCtx::from_parts(j.at("p").get<int>(), j.at("n").get<int>(),
                                          j.at("modulus").get<std::vector<int>>(), j.at("generator").get<int>(),
                                          j.at("log_table").get<std::vector<int>>());
        if (F.q() != q) throw Error("cache tables do not match q");
        F.check_invariants();
        return F;
    } catch (const std::exception& e) {
        if (reason) *reason = e.what();
        return std::nullopt;
    }
}

// cache-transparent field access: falls back to a fresh build when the
// directory is unset or the file is missing/invalid
inline FieldCtx obtain_field(int q, const std::optional<std::filesystem::path>& cache_dir,
                             std::string* warning = nullptr) {
    if (cache_dir) {
        std::string reason;
        if (auto F = load_field_cache(q, *cache_dir, &reason)) return *F;
        if (warning && reason != "no cache file")
            *warning = "cache file for q=" + std::to_string(q) + " rejected (" + reason + "); rebuilding";
    }
    return FieldCtx::build(q);
}

} // namespace ffhyper
