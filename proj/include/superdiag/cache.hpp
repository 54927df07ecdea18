#pragma once

#include <atomic>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>

#include <nlohmann/json.hpp>

#include "coinvariants.hpp"

namespace superdiag {

inline constexpr int kCacheSchemaVersion = 1;
inline constexpr const char* kEngineVersion = "superdiag-1.0";

/* One persisted component: cache-dir/n=N/a_b_c.json */
struct CacheEntry {
    int schema_version = kCacheSchemaVersion;
    std::string engine_version = kEngineVersion;
    int n = 0;
    TriDegree degree;
    std::int64_t dim = 0;
    PartitionMap<std::int64_t> characters;

    static CacheEntry from_character(const QuotientCharacter& qc) {
        CacheEntry e;
        e.n = qc.n;
        e.degree = qc.degree;
        e.dim = qc.dim();
        e.characters = qc.values;
        return e;
    }

    QuotientCharacter to_character() const {
        QuotientCharacter qc;
        qc.n = n;
        qc.degree = degree;
        qc.full_dim = component_dimension(n, degree);
        qc.ideal_rank = qc.full_dim - dim;
        qc.values = characters;
        return qc;
    }

    nlohmann::ordered_json to_json() const {
        nlohmann::ordered_json j;
        j["schema_version"] = schema_version;
        j["engine_version"] = engine_version;
        j["n"] = n;
        j["degree"] = {degree.a, degree.b, degree.c};
        j["dim"] = dim;
        nlohmann::ordered_json chars = nlohmann::ordered_json::object();
        for (auto& [mu, v] : characters) chars[mu.to_string()] = v;
        j["characters"] = chars;
        return j;
    }

    // Throws on malformed input.
    static CacheEntry from_json(const nlohmann::json& j) {
        CacheEntry e;
        e.schema_version = j.at("schema_version").get<int>();
        e.engine_version = j.at("engine_version").get<std::string>();
        e.n = j.at("n").get<int>();
        auto deg = j.at("degree");
        if (!deg.is_array() || deg.size() != 3) throw std::invalid_argument("bad degree");
        e.degree = {deg[0].get<int>(), deg[1].get<int>(), deg[2].get<int>()};
        e.dim = j.at("dim").get<std::int64_t>();
        for (auto& [k, v] : j.at("characters").items()) e.characters[Partition::parse(k)] = v.get<std::int64_t>();
        return e;
    }

    friend bool operator==(const CacheEntry&, const CacheEntry&) = default;
};

/* Directory-backed ComponentStore.  Unreadable or corrupt files count as
 * misses; entries from another schema or engine version are ignored.
 * Writes go to a temporary file that is renamed into place.
 */
class DiskCache : public ComponentStore {
public:
    explicit DiskCache(std::filesystem::path root) : root_(std::move(root)) {}

    const std::filesystem::path& root() const noexcept { return root_; }

    std::filesystem::path path_for(int n, const TriDegree& d) const {
        return root_ / ("n=" + std::to_string(n)) /
               (std::to_string(d.a) + "_" + std::to_string(d.b) + "_" + std::to_string(d.c) + ".json");
    }

    std::optional<CacheEntry> read(int n, const TriDegree& d) const {
        auto p = path_for(n, d);
        std::ifstream in(p);
        if (!in) return std::nullopt;
        try {
            auto j = nlohmann::json::parse(in);
            auto e = CacheEntry::from_json(j);
            if (e.schema_version != kCacheSchemaVersion || e.engine_version != kEngineVersion) return std::nullopt;
            if (e.n != n || e.degree != d) return std::nullopt;
            if (!consistent(e)) return std::nullopt;
            return e;
        } catch (const std::exception&) {
            return std::nullopt;
        }
    }

    void write(const CacheEntry& e) const {
        auto p = path_for(e.n, e.degree);
        std::filesystem::create_directories(p.parent_path());
        std::ostringstream tag;
        tag << ".tmp." << std::this_thread::get_id() << "." << counter_++;
        auto tmp = p;
        tmp += tag.str();
        {
            std::ofstream out(tmp, std::ios::trunc);
            if (!out) throw std::runtime_error("cannot write cache file " + tmp.string());
            out << e.to_json().dump(2) << "\n";
            if (!out.flush()) throw std::runtime_error("cannot write cache file " + tmp.string());
        }
        std::filesystem::rename(tmp, p);
    }

    std::optional<QuotientCharacter> load(int n, const TriDegree& d) override {
        auto e = read(n, d);
        if (!e) return std::nullopt;
        return e->to_character();
    }

    void save(const QuotientCharacter& qc) override { write(CacheEntry::from_character(qc)); }

private:
    static bool consistent(const CacheEntry& e) {
        auto parts = partitions_of(e.n);
        if (e.characters.size() != parts.size()) return false;
        for (auto& mu : parts)
            if (!e.characters.count(mu)) return false;
        const Partition ones(std::vector<int>(e.n, 1));
        return e.characters.at(ones) == e.dim && e.dim >= 0 && e.dim <= component_dimension(e.n, e.degree);
    }

    std::filesystem::path root_;
    mutable std::atomic<unsigned long> counter_{0};
};

/// Write then read back one entry through the cache directory.
inline std::optional<CacheEntry> cache_roundtrip(const CacheEntry& entry, const std::filesystem::path& dir) {
    DiskCache cache(dir);
    cache.write(entry);
    return cache.read(entry.n, entry.degree);
}

}  // namespace superdiag
