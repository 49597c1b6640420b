#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "imitation/game.hpp"

namespace imitation {

enum class GameFormat { json, csv };

struct GameParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Loaders throw GameParseError with a location where one is known.
// A game is loaded in integer mode iff every payoff literal is integral.
SymmetricGame load_game(std::istream& in, GameFormat fmt);
SymmetricGame load_game(const std::string& text, GameFormat fmt);
SymmetricGame load_game_file(const std::string& path);  // format inferred from the extension

std::string save_game(const SymmetricGame& game, GameFormat fmt);
void save_game_file(const SymmetricGame& game, const std::string& path);

nlohmann::json game_to_json(const SymmetricGame& game);
SymmetricGame game_from_json(const nlohmann::json& j);

// Round-trip-exact text for one payoff; integer mode prints no decimal point,
// float mode always keeps one so the mode survives a save/load cycle.
std::string format_number(Num v, bool integer_mode);

}  // namespace imitation
