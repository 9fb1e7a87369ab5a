#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "qbc/protocol.hpp"

namespace qbc {

// One line of the transcript file. Kinds are exactly HEADER, ANNOUNCE,
// OPEN, VERDICT; the pulse metadata (count + session timing, public) rides
// in the HEADER payload.
struct TranscriptMessage {
    std::string session_id;
    std::uint64_t seq = 0;
    std::string kind;
    nlohmann::json payload;
};

struct Transcript {
    std::string session_id;
    std::vector<TranscriptMessage> messages;

    void append(std::string kind, nlohmann::json payload);
    // Line-delimited JSON, one message per line. Object keys are emitted in
    // sorted order and numbers with shortest round-trip representation, so
    // replay under the same seed and config is byte-identical.
    std::string to_ldjson() const;
};

std::uint64_t fnv1a64(std::string_view s);

nlohmann::json to_json(const Announcement& ann);
nlohmann::json to_json(const OpeningRecord& open);
nlohmann::json to_json(const VerificationReport& rep);

}  // namespace qbc
