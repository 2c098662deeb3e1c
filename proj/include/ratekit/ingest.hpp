#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "ratekit/schedule.hpp"

// Season-result ingestion. Canonical CSV schema (UTF-8, header required):
//   date,home,away,home_score,away_score[,reg_home_score,reg_away_score]
// Dates are ISO-8601 calendar dates; tau is whole days since the season's
// first game.

namespace ratekit {

// Malformed input data (as opposed to bad configuration).
struct DataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class OutcomeMode { BinaryFinal, TernaryRegulation, TernaryFinal };

const char* outcome_mode_name(OutcomeMode mode);
std::optional<OutcomeMode> parse_outcome_mode(std::string_view name);
int outcome_mode_alphabet(OutcomeMode mode);

struct RawGameRow {
    std::string date_iso;
    std::string home_name;
    std::string away_name;
    int home_score = 0;
    int away_score = 0;
    std::optional<int> regulation_home_score;
    std::optional<int> regulation_away_score;
};

struct SeasonData {
    std::vector<std::string> team_names;  // index -> name, by first appearance
    std::unordered_map<std::string, std::uint32_t> team_index;
    std::vector<GameRecord> games;        // ordered by date, then file order
    std::vector<RawGameRow> rows;         // same order as games

    std::size_t team_count() const { return team_names.size(); }
    std::size_t game_count() const { return games.size(); }
};

// 0 away win, 1 draw (ternary) or home win (binary), 2 home win (ternary).
// A tie under binary mode is a DataError.
int derive_outcome(int home_score, int away_score, OutcomeMode mode);

// Days since civil epoch 1970-01-01 for an ISO date; throws DataError.
std::int64_t parse_iso_date(std::string_view text);

SeasonData parse_season(const std::filesystem::path& path, OutcomeMode mode);
SeasonData parse_season_text(std::string_view text, OutcomeMode mode,
                             std::string_view source_name = "<memory>");

// Canonical re-serialization of parsed rows (round-trips canonical input).
std::string to_canonical_csv(const SeasonData& season);

}  // namespace ratekit
