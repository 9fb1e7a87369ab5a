#include "qbc/transcript.hpp"

namespace qbc {

void Transcript::append(std::string kind, nlohmann::json payload) {
    messages.push_back(TranscriptMessage{
        .session_id = session_id,
        .seq = messages.size(),
        .kind = std::move(kind),
        .payload = std::move(payload),
    });
}

std::string Transcript::to_ldjson() const {
    std::string out;
    for (const TranscriptMessage& msg : messages) {
        nlohmann::json line = {
            {"session_id", msg.session_id},
            {"seq", msg.seq},
            {"kind", msg.kind},
            {"payload", msg.payload},
        };
        out += line.dump();
        out += '\n';
    }
    return out;
}

std::uint64_t fnv1a64(std::string_view s) {
    std::uint64_t hash = 0xCBF29CE484222325ULL;
    for (unsigned char c : s) {
        hash ^= c;
        hash *= 0x100000001B3ULL;
    }
    return hash;
}

nlohmann::json to_json(const Announcement& ann) {
    return {{"detected_pulse_ids", ann.detected_pulse_ids}};
}

nlohmann::json to_json(const OpeningRecord& open) {
    nlohmann::json outcomes = nlohmann::json::array();
    for (const auto& [id, label] : open.outcomes) {
        outcomes.push_back({{"pulse_id", id}, {"label", to_string(label)}});
    }
    return {
        {"commitment_bit", open.commitment_bit},
        {"basis", to_string(open.basis)},
        {"outcomes", std::move(outcomes)},
    };
}

nlohmann::json to_json(const VerificationReport& rep) {
    nlohmann::json j = {
        {"n_sent", rep.n_sent},
        {"n_announced", rep.n_announced},
        {"n_matching_basis", rep.n_matching_basis},
        {"n_matching_errors", rep.n_matching_errors},
        {"n_out_of_basis", rep.n_out_of_basis},
        {"n_out_of_basis_agree", rep.n_out_of_basis_agree},
        {"matching_qber", rep.matching_qber},
        {"detection_rate", rep.detection_rate},
        {"expected_rate", rep.expected_rate},
        {"out_of_basis_agreement", rep.out_of_basis_agreement},
        {"verdict", rep.accepted ? "accept" : "reject"},
        {"reject_reason", to_string(rep.reason)},
    };
    if (!rep.note.empty()) j["note"] = rep.note;
    return j;
}

}  // namespace qbc
