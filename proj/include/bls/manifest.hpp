#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace bls {

/// SHA-1 hex digest of a byte string (content hashing of configs).
std::string sha1_hex(const std::string& data);

/// Provenance record attached to every emitted artifact.  The timestamp is
/// kept out of the artifacts themselves so output files stay byte-stable;
/// it is reported on the log stream only.
struct RunManifest {
    std::string command;
    std::string parameters;   // canonical, sorted key=value lines
    std::string config_hash;  // sha1 of parameters
    std::string timestamp;    // wall clock at creation

    static RunManifest make(const std::string& command,
                            const std::vector<std::pair<std::string, std::string>>& params);
};

}  // namespace bls
