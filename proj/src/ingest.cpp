#include "ratekit/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

namespace ratekit {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) {
        s.remove_prefix(1);
    }
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
        s.remove_suffix(1);
    }
    return s;
}

std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= line.size(); ++i) {
        if (i == line.size() || line[i] == ',') {
            fields.push_back(trim(line.substr(start, i - start)));
            start = i + 1;
        }
    }
    return fields;
}

[[noreturn]] void row_error(std::string_view source, std::size_t line_no, const std::string& what) {
    throw DataError(std::string(source) + ":" + std::to_string(line_no) + ": " + what);
}

int parse_int(std::string_view field, std::string_view source, std::size_t line_no,
              const char* what) {
    int value = 0;
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc{} || ptr != field.data() + field.size()) {
        row_error(source, line_no, std::string("cannot parse ") + what + " '" +
                                       std::string(field) + "'");
    }
    return value;
}

// Howard Hinnant's days-from-civil; avoids any timezone machinery.
std::int64_t days_from_civil(std::int64_t y, unsigned m, unsigned d) {
    y -= m <= 2;
    const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
    const auto yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

bool is_valid_date(std::int64_t year, unsigned month, unsigned day) {
    if (month < 1 || month > 12 || day < 1) return false;
    static constexpr unsigned kDays[12] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
    unsigned max_day = kDays[month - 1];
    const bool leap = (year % 4 == 0 && year % 100 != 0) || year % 400 == 0;
    if (month == 2 && leap) max_day = 29;
    return day <= max_day;
}

}  // namespace

const char* outcome_mode_name(OutcomeMode mode) {
    switch (mode) {
        case OutcomeMode::BinaryFinal: return "binary_final";
        case OutcomeMode::TernaryRegulation: return "ternary_regulation";
        case OutcomeMode::TernaryFinal: return "ternary_final";
    }
    return "unknown";
}

std::optional<OutcomeMode> parse_outcome_mode(std::string_view name) {
    if (name == "binary_final") return OutcomeMode::BinaryFinal;
    if (name == "ternary_regulation") return OutcomeMode::TernaryRegulation;
    if (name == "ternary_final") return OutcomeMode::TernaryFinal;
    return std::nullopt;
}

int outcome_mode_alphabet(OutcomeMode mode) {
    return mode == OutcomeMode::BinaryFinal ? 2 : 3;
}

int derive_outcome(int home_score, int away_score, OutcomeMode mode) {
    if (home_score < 0 || away_score < 0) throw DataError("scores must be nonnegative");
    if (mode == OutcomeMode::BinaryFinal) {
        if (home_score == away_score) {
            throw DataError("tied score in binary mode (use a ternary mode for draws)");
        }
        return home_score > away_score ? 1 : 0;
    }
    if (home_score == away_score) return 1;
    return home_score > away_score ? 2 : 0;
}

std::int64_t parse_iso_date(std::string_view text) {
    // Strict YYYY-MM-DD.
    if (text.size() != 10 || text[4] != '-' || text[7] != '-') {
        throw DataError("date '" + std::string(text) + "' is not ISO YYYY-MM-DD");
    }
    auto digits = [&](std::size_t pos, std::size_t len) -> std::int64_t {
        std::int64_t value = 0;
        for (std::size_t i = pos; i < pos + len; ++i) {
            if (text[i] < '0' || text[i] > '9') {
                throw DataError("date '" + std::string(text) + "' is not ISO YYYY-MM-DD");
            }
            value = value * 10 + (text[i] - '0');
        }
        return value;
    };
    const std::int64_t year = digits(0, 4);
    const auto month = static_cast<unsigned>(digits(5, 2));
    const auto day = static_cast<unsigned>(digits(8, 2));
    if (!is_valid_date(year, month, day)) {
        throw DataError("date '" + std::string(text) + "' is not a valid calendar date");
    }
    return days_from_civil(year, month, day);
}

SeasonData parse_season_text(std::string_view text, OutcomeMode mode,
                             std::string_view source_name) {
    std::vector<std::string_view> lines;
    {
        std::size_t start = 0;
        for (std::size_t i = 0; i <= text.size(); ++i) {
            if (i == text.size() || text[i] == '\n') {
                lines.push_back(text.substr(start, i - start));
                start = i + 1;
            }
        }
        while (!lines.empty() && trim(lines.back()).empty()) lines.pop_back();
    }
    if (lines.empty()) throw DataError(std::string(source_name) + ": empty file");

    const auto header = split_fields(lines[0]);
    const std::vector<std::string_view> base{"date", "home", "away", "home_score", "away_score"};
    const bool has_regulation = header.size() == 7;
    if (header.size() != 5 && header.size() != 7) {
        row_error(source_name, 1, "header must have 5 or 7 columns");
    }
    for (std::size_t i = 0; i < base.size(); ++i) {
        if (header[i] != base[i]) {
            row_error(source_name, 1,
                      "unexpected header column '" + std::string(header[i]) + "' (want '" +
                          std::string(base[i]) + "')");
        }
    }
    if (has_regulation &&
        (header[5] != "reg_home_score" || header[6] != "reg_away_score")) {
        row_error(source_name, 1, "regulation columns must be reg_home_score,reg_away_score");
    }
    if (mode == OutcomeMode::TernaryRegulation && !has_regulation) {
        throw std::invalid_argument(std::string(source_name) +
                                    ": ternary_regulation mode needs regulation score columns");
    }

    struct ParsedRow {
        RawGameRow raw;
        std::int64_t date_days;
        std::size_t file_order;
    };
    std::vector<ParsedRow> parsed;
    parsed.reserve(lines.size() - 1);

    for (std::size_t li = 1; li < lines.size(); ++li) {
        const std::size_t line_no = li + 1;
        if (trim(lines[li]).empty()) continue;
        const auto fields = split_fields(lines[li]);
        if (fields.size() != header.size()) {
            row_error(source_name, line_no,
                      "expected " + std::to_string(header.size()) + " fields, got " +
                          std::to_string(fields.size()));
        }
        ParsedRow row;
        row.file_order = li;
        row.raw.date_iso = std::string(fields[0]);
        try {
            row.date_days = parse_iso_date(fields[0]);
        } catch (const DataError& e) {
            row_error(source_name, line_no, e.what());
        }
        row.raw.home_name = std::string(fields[1]);
        row.raw.away_name = std::string(fields[2]);
        if (row.raw.home_name.empty() || row.raw.away_name.empty()) {
            row_error(source_name, line_no, "team names must be nonempty");
        }
        if (row.raw.home_name == row.raw.away_name) {
            row_error(source_name, line_no, "a team cannot play itself");
        }
        row.raw.home_score = parse_int(fields[3], source_name, line_no, "home_score");
        row.raw.away_score = parse_int(fields[4], source_name, line_no, "away_score");
        if (row.raw.home_score < 0 || row.raw.away_score < 0) {
            row_error(source_name, line_no, "scores must be nonnegative");
        }
        if (has_regulation) {
            row.raw.regulation_home_score =
                parse_int(fields[5], source_name, line_no, "reg_home_score");
            row.raw.regulation_away_score =
                parse_int(fields[6], source_name, line_no, "reg_away_score");
            if (*row.raw.regulation_home_score < 0 || *row.raw.regulation_away_score < 0) {
                row_error(source_name, line_no, "regulation scores must be nonnegative");
            }
            if (*row.raw.regulation_home_score > row.raw.home_score ||
                *row.raw.regulation_away_score > row.raw.away_score) {
                row_error(source_name, line_no, "regulation scores cannot exceed final scores");
            }
        }
        parsed.push_back(std::move(row));
    }
    if (parsed.empty()) throw DataError(std::string(source_name) + ": no game rows");

    std::stable_sort(parsed.begin(), parsed.end(), [](const ParsedRow& a, const ParsedRow& b) {
        return a.date_days < b.date_days;
    });

    SeasonData season;
    season.rows.reserve(parsed.size());
    season.games.reserve(parsed.size());
    const std::int64_t first_day = parsed.front().date_days;

    auto team_id = [&](const std::string& name) -> std::uint32_t {
        auto [it, inserted] =
            season.team_index.try_emplace(name, static_cast<std::uint32_t>(season.team_names.size()));
        if (inserted) season.team_names.push_back(name);
        return it->second;
    };

    for (std::size_t i = 0; i < parsed.size(); ++i) {
        const auto& row = parsed[i];
        GameRecord game;
        game.t_index = static_cast<std::int64_t>(i) + 1;
        game.tau = row.date_days - first_day;
        game.home_ids = {team_id(row.raw.home_name)};
        game.away_ids = {team_id(row.raw.away_name)};
        if (mode == OutcomeMode::TernaryRegulation) {
            game.outcome = derive_outcome(*row.raw.regulation_home_score,
                                          *row.raw.regulation_away_score, mode);
        } else {
            try {
                game.outcome = derive_outcome(row.raw.home_score, row.raw.away_score, mode);
            } catch (const DataError& e) {
                row_error(source_name, row.file_order + 1, e.what());
            }
        }
        season.games.push_back(std::move(game));
        season.rows.push_back(parsed[i].raw);
    }
    return season;
}

SeasonData parse_season(const std::filesystem::path& path, OutcomeMode mode) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_season_text(buffer.str(), mode, path.string());
}

std::string to_canonical_csv(const SeasonData& season) {
    const bool has_regulation =
        !season.rows.empty() && season.rows.front().regulation_home_score.has_value();
    std::string out = has_regulation
                          ? "date,home,away,home_score,away_score,reg_home_score,reg_away_score\n"
                          : "date,home,away,home_score,away_score\n";
    for (const auto& row : season.rows) {
        out += row.date_iso;
        out += ',';
        out += row.home_name;
        out += ',';
        out += row.away_name;
        out += ',';
        out += std::to_string(row.home_score);
        out += ',';
        out += std::to_string(row.away_score);
        if (has_regulation) {
            out += ',';
            out += std::to_string(*row.regulation_home_score);
            out += ',';
            out += std::to_string(*row.regulation_away_score);
        }
        out += '\n';
    }
    return out;
}

}  // namespace ratekit
