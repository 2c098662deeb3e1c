#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <string>

#include "ratekit/evaluation.hpp"
#include "ratekit/ingest.hpp"

using namespace ratekit;

namespace {

const char* kSmallSeason =
    "date,home,away,home_score,away_score\n"
    "2009-08-15,TeamA,TeamB,1,0\n"
    "2009-08-15,TeamC,TeamD,2,3\n"
    "2009-08-22,TeamB,TeamC,4,1\n";

std::string epl_shaped_season() {
    // 20 teams, everyone plays everyone twice: 380 rows.
    std::string csv = "date,home,away,home_score,away_score\n";
    int day = 0;
    for (int home = 0; home < 20; ++home) {
        for (int away = 0; away < 20; ++away) {
            if (home == away) continue;
            const int month = 1 + (day / 28) % 12;
            const int dom = 1 + day % 28;
            char date[16];
            std::snprintf(date, sizeof(date), "2010-%02d-%02d", month, dom);
            csv += std::string(date) + ",T" + std::to_string(home) + ",T" + std::to_string(away) +
                   "," + std::to_string((home + away) % 4) + "," + std::to_string(away % 3) + "\n";
            ++day;
        }
    }
    return csv;
}

}  // namespace

TEST_CASE("basic binary parsing") {
    const auto season = parse_season_text(kSmallSeason, OutcomeMode::BinaryFinal);
    CHECK(season.team_count() == 4);
    CHECK(season.game_count() == 3);
    CHECK(season.team_names[0] == "TeamA");
    CHECK(season.team_index.at("TeamD") == 3);

    CHECK(season.games[0].outcome == 1);
    CHECK(season.games[0].home_ids[0] == 0);
    CHECK(season.games[0].away_ids[0] == 1);
    CHECK(season.games[1].outcome == 0);

    // Same date, same tau; one week later is seven days.
    CHECK(season.games[0].tau == 0);
    CHECK(season.games[1].tau == 0);
    CHECK(season.games[2].tau == 7);
    CHECK(season.games[2].t_index == 3);
}

TEST_CASE("rows are ordered by date with stable file order inside a day") {
    const char* unordered =
        "date,home,away,home_score,away_score\n"
        "2010-01-05,A,B,1,0\n"
        "2010-01-02,C,D,0,1\n"
        "2010-01-02,E,F,2,1\n";
    const auto season = parse_season_text(unordered, OutcomeMode::BinaryFinal);
    CHECK(season.rows[0].home_name == "C");
    CHECK(season.rows[1].home_name == "E");
    CHECK(season.rows[2].home_name == "A");
    CHECK(season.games[0].tau == 0);
    CHECK(season.games[2].tau == 3);
    // Indices by first appearance in chronological order.
    CHECK(season.team_index.at("C") == 0);
}

TEST_CASE("outcome derivation") {
    CHECK(derive_outcome(3, 2, OutcomeMode::BinaryFinal) == 1);
    CHECK(derive_outcome(0, 2, OutcomeMode::BinaryFinal) == 0);
    CHECK_THROWS_AS(derive_outcome(2, 2, OutcomeMode::BinaryFinal), DataError);
    CHECK(derive_outcome(2, 2, OutcomeMode::TernaryFinal) == 1);
    CHECK(derive_outcome(3, 1, OutcomeMode::TernaryFinal) == 2);
    CHECK(derive_outcome(0, 4, OutcomeMode::TernaryRegulation) == 0);
    CHECK_THROWS_AS(derive_outcome(-1, 0, OutcomeMode::TernaryFinal), DataError);
}

TEST_CASE("ternary regulation mode reads the regulation columns") {
    const char* nhl_like =
        "date,home,away,home_score,away_score,reg_home_score,reg_away_score\n"
        "2010-01-02,A,B,3,2,2,2\n"
        "2010-01-03,C,D,1,0,1,0\n";
    const auto season = parse_season_text(nhl_like, OutcomeMode::TernaryRegulation);
    CHECK(season.games[0].outcome == 1);  // regulation draw decided in overtime
    CHECK(season.games[1].outcome == 2);

    const auto binary = parse_season_text(nhl_like, OutcomeMode::BinaryFinal);
    CHECK(binary.games[0].outcome == 1);  // final score decides

    CHECK_THROWS_AS(parse_season_text(kSmallSeason, OutcomeMode::TernaryRegulation),
                    std::invalid_argument);
}

TEST_CASE("malformed input is reported with position") {
    const char* bad_score =
        "date,home,away,home_score,away_score\n"
        "2010-01-02,A,B,x,0\n";
    CHECK_THROWS_WITH_AS(parse_season_text(bad_score, OutcomeMode::BinaryFinal, "file.csv"),
                         doctest::Contains("file.csv:2"), DataError);

    const char* bad_date =
        "date,home,away,home_score,away_score\n"
        "2010-13-02,A,B,1,0\n";
    CHECK_THROWS_AS(parse_season_text(bad_date, OutcomeMode::BinaryFinal), DataError);

    const char* missing_field =
        "date,home,away,home_score,away_score\n"
        "2010-01-02,A,B,1\n";
    CHECK_THROWS_AS(parse_season_text(missing_field, OutcomeMode::BinaryFinal), DataError);

    const char* bad_header = "when,home,away,home_score,away_score\n2010-01-02,A,B,1,0\n";
    CHECK_THROWS_AS(parse_season_text(bad_header, OutcomeMode::BinaryFinal), DataError);

    const char* regulation_exceeds =
        "date,home,away,home_score,away_score,reg_home_score,reg_away_score\n"
        "2010-01-02,A,B,1,0,2,0\n";
    CHECK_THROWS_AS(parse_season_text(regulation_exceeds, OutcomeMode::TernaryRegulation),
                    DataError);

    const char* self_play =
        "date,home,away,home_score,away_score\n"
        "2010-01-02,A,A,1,0\n";
    CHECK_THROWS_AS(parse_season_text(self_play, OutcomeMode::BinaryFinal), DataError);

    CHECK_THROWS_AS(parse_season_text("", OutcomeMode::BinaryFinal), DataError);
    CHECK_THROWS_AS(parse_season(std::filesystem::path("/nonexistent/file.csv"),
                                 OutcomeMode::BinaryFinal),
                    DataError);
}

TEST_CASE("an EPL-shaped file has the right shape") {
    const auto season = parse_season_text(epl_shaped_season(), OutcomeMode::TernaryFinal);
    CHECK(season.team_count() == 20);
    CHECK(season.game_count() == 380);

    const auto freqs = count_frequencies(season.games, 3);
    double sum = 0.0;
    for (double f : freqs.f) sum += f;
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("canonical round trip") {
    const auto season = parse_season_text(kSmallSeason, OutcomeMode::BinaryFinal);
    CHECK(to_canonical_csv(season) == kSmallSeason);

    const auto reparsed = parse_season_text(to_canonical_csv(season), OutcomeMode::BinaryFinal);
    CHECK(reparsed.team_names == season.team_names);
    CHECK(reparsed.game_count() == season.game_count());
}

TEST_CASE("iso date arithmetic") {
    CHECK(parse_iso_date("1970-01-01") == 0);
    CHECK(parse_iso_date("1970-01-02") == 1);
    CHECK(parse_iso_date("1969-12-31") == -1);
    CHECK(parse_iso_date("2000-03-01") - parse_iso_date("2000-02-28") == 2);  // leap year
    CHECK(parse_iso_date("2100-03-01") - parse_iso_date("2100-02-28") == 1);  // not leap
    CHECK_THROWS_AS(parse_iso_date("2010-02-30"), DataError);
    CHECK_THROWS_AS(parse_iso_date("2010/01/01"), DataError);
}
