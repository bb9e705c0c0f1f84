#include "champrec/schema.hpp"

#include <algorithm>
#include <cmath>

#include "champrec/error.hpp"

namespace champrec {

std::string_view to_string(ErrorCode code) {
    switch (code) {
    case ErrorCode::EmptyTable: return "EmptyTable";
    case ErrorCode::MissingColumn: return "MissingColumn";
    case ErrorCode::SourceUnavailable: return "SourceUnavailable";
    case ErrorCode::NegativeCount: return "NegativeCount";
    case ErrorCode::DuplicateChampion: return "DuplicateChampion";
    case ErrorCode::NegativeInput: return "NegativeInput";
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::MissingBaseline: return "MissingBaseline";
    case ErrorCode::InvalidCounts: return "InvalidCounts";
    case ErrorCode::EmptyHistory: return "EmptyHistory";
    case ErrorCode::TooFewPoints: return "TooFewPoints";
    case ErrorCode::InvalidWeights: return "InvalidWeights";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::HistoryTooShort: return "HistoryTooShort";
    case ErrorCode::DegenerateLabels: return "DegenerateLabels";
    case ErrorCode::InsufficientData: return "InsufficientData";
    case ErrorCode::PlayerNotFound: return "PlayerNotFound";
    case ErrorCode::Internal: return "Internal";
    }
    return "Internal";
}

FeatureSchema::FeatureSchema(std::vector<FeatureSpec> entries) : entries_(std::move(entries)) {}

FeatureSchema FeatureSchema::recommendation_default() {
    using D = Direction;
    return FeatureSchema({
        {"damagePerMinute", 0.20, D::Positive, false},
        {"goldPerMinute", 0.16, D::Positive, false},
        {"cs_per_min", 0.14, D::Positive, false},
        {"laneMinionsFirst10Minutes", 0.10, D::Positive, false},
        {"deaths_per_min", 0.18, D::Negative, false},
        {"killParticipation", 0.10, D::Positive, false},
        {"damageDealtToBuildings", 0.06, D::Positive, false},
        {"damageDealtToObjectives", 0.03, D::Positive, false},
        {"visionScorePerMinute", 0.02, D::Positive, false},
        {"totalTimeCCDealt", 0.01, D::Positive, false},
    });
}

FeatureSchema FeatureSchema::archetype_default() {
    auto entries = recommendation_default().entries();
    entries.push_back({"totalDamageTaken", 0.0, Direction::Positive, false});
    entries.push_back({"damageSelfMitigated", 0.0, Direction::Positive, false});
    return FeatureSchema(std::move(entries));
}

std::optional<std::size_t> FeatureSchema::index_of(const std::string& name) const {
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        if (entries_[i].name == name) return i;
    }
    return std::nullopt;
}

std::vector<std::string> FeatureSchema::names() const {
    std::vector<std::string> out;
    out.reserve(entries_.size());
    for (const auto& e : entries_) out.push_back(e.name);
    return out;
}

std::vector<std::size_t> FeatureSchema::subset_indices(const FeatureSchema& sub) const {
    std::vector<std::size_t> out;
    out.reserve(sub.size());
    for (const auto& e : sub.entries()) {
        auto idx = index_of(e.name);
        if (!idx) throw Error(ErrorCode::InvalidArgument, "schema has no feature '" + e.name + "'");
        out.push_back(*idx);
    }
    return out;
}

void FeatureSchema::validate() const {
    if (entries_.empty()) throw Error(ErrorCode::InvalidArgument, "feature schema is empty");
    double total = 0.0;
    for (const auto& e : entries_) {
        if (!(e.strength_weight >= 0.0 && e.strength_weight <= 1.0)) {
            throw Error(ErrorCode::InvalidWeights, "strength weight of '" + e.name + "' outside [0,1]");
        }
        total += e.strength_weight;
    }
    if (std::abs(total - 1.0) > 1e-9) {
        throw Error(ErrorCode::InvalidWeights, "strength weights must sum to 1");
    }
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        for (std::size_t j = i + 1; j < entries_.size(); ++j) {
            if (entries_[i].name == entries_[j].name) {
                throw Error(ErrorCode::InvalidArgument, "duplicate feature '" + entries_[i].name + "'");
            }
        }
    }
}

const std::vector<std::string>& skewed_feature_names() {
    static const std::vector<std::string> names{
        "objectivesStolen", "baronTakedowns", "dragonTakedowns",
        "riftHeraldTakedowns", "turretPlatesTaken", "turretTakedowns",
    };
    return names;
}

bool is_skewed_feature(const std::string& name) {
    const auto& names = skewed_feature_names();
    return std::find(names.begin(), names.end(), name) != names.end();
}

} // namespace champrec
