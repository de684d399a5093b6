#include "zsm/cache.hpp"

#include <chrono>
#include <fstream>
#include <random>
#include <sstream>

#include <openssl/evp.h>

#include "zsm/json_io.hpp"
#include "zsm/version.hpp"

namespace zsm {

namespace {

std::string sha256_hex(const std::string& data) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (!EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr))
        throw std::runtime_error("SHA-256 digest failed");
    static const char* hex = "0123456789abcdef";
    std::string out;
    out.reserve(2 * len);
    for (unsigned int i = 0; i < len; ++i) {
        out.push_back(hex[digest[i] >> 4]);
        out.push_back(hex[digest[i] & 0xf]);
    }
    return out;
}

} // namespace

AtomCache::AtomCache(std::filesystem::path dir) : dir_(std::move(dir)) {
    std::filesystem::create_directories(dir_);
}

std::string AtomCache::key_of(const GroundSet& ground) {
    return sha256_hex(std::string(kToolVersion) + "\n" + ground.canonical_key());
}

std::optional<AtomSet> AtomCache::load(const GroundSet& ground) const {
    const auto path = dir_ / (key_of(ground) + ".json");
    std::ifstream in(path);
    if (!in)
        return std::nullopt;
    Json j;
    try {
        in >> j;
        if (!j.is_object() || j.value("version", std::string()) != kToolVersion)
            return std::nullopt;
        AtomSet as = atoms_from_json(j.at("payload")); // revalidates zero-sums
        if (as.ground != ground)
            return std::nullopt;
        return as;
    } catch (...) {
        return std::nullopt; // a corrupt entry is a miss, never an error
    }
}

void AtomCache::store(const AtomSet& atoms) const {
    const auto key = key_of(atoms.ground);
    Json j{{"version", kToolVersion},
           {"key", key},
           {"timestamp",
            std::chrono::duration_cast<std::chrono::seconds>(
                std::chrono::system_clock::now().time_since_epoch())
                .count()},
           {"payload", atoms_to_json(atoms)}};

    std::random_device rd;
    std::ostringstream tmpname;
    tmpname << "tmp-" << rd() << "-" << key << ".json";
    const auto tmp = dir_ / tmpname.str();
    {
        std::ofstream out(tmp);
        out << j.dump(2) << "\n";
        if (!out)
            throw std::runtime_error("cache write failed: " + tmp.string());
    }
    std::filesystem::rename(tmp, dir_ / (key + ".json"));
}

} // namespace zsm
