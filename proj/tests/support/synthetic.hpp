#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "champrec/data_model.hpp"

namespace synth {

/// Plausible per-minute base values for the twelve archetype features.
const std::vector<double>& base_values();

std::string champion_name(std::size_t i);

/// Champions drawn around a few play styles with lognormal noise.
std::vector<champrec::ChampionVector> population(std::size_t n, std::uint64_t seed);

/// One match row near the champion's population profile; noise 0 copies it exactly.
champrec::PlayerMatchRow match_row(const champrec::ChampionVector& champ, std::size_t index, bool win,
                                   std::uint64_t seed, double noise = 0.2);

/// T matches drawn from a small personal pool with a preference skew.
std::vector<champrec::PlayerMatchRow> history(const std::vector<champrec::ChampionVector>& pop,
                                              std::size_t games, std::size_t pool, std::uint64_t seed);

/// Every match on the same champion.
std::vector<champrec::PlayerMatchRow> constant_history(const champrec::ChampionVector& champ,
                                                       std::size_t games, std::uint64_t seed,
                                                       double noise = 0.2);

std::vector<champrec::MasteryRecord> mastery_for(const std::vector<champrec::PlayerMatchRow>& rows,
                                                 std::uint64_t seed);

champrec::DataBundle bundle(std::size_t champions, std::size_t games, std::size_t pool, std::uint64_t seed);

} // namespace synth
