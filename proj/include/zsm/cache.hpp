#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "zsm/zerosum.hpp"

namespace zsm {

/// Content-addressed atom-set cache. Keys are the SHA-256 of the canonical
/// ground-set serialization salted with the tool version, so algorithm
/// changes never serve stale sets. Writes go through a temp file and an
/// atomic rename; reads revalidate every stored atom as zero-sum and drop
/// entries written by other versions.
class AtomCache {
public:
    explicit AtomCache(std::filesystem::path dir);

    const std::filesystem::path& directory() const { return dir_; }

    std::optional<AtomSet> load(const GroundSet& ground) const;
    void store(const AtomSet& atoms) const;

    static std::string key_of(const GroundSet& ground);

private:
    std::filesystem::path dir_;
};

} // namespace zsm
