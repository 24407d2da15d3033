#pragma once

#include <string>
#include <string_view>

#include "wcg/game.hpp"
#include "wcg/instance_gen.hpp"

// JSON file formats; see docs/formats.md. Every malformed document raises
// ParseError. Parsing does not validate the game; call validate_game.
namespace wcg::io {

std::string serialize_game(const Game& game);
Game parse_game(std::string_view text);

std::string serialize_profile(const Profile& profile);
Profile parse_profile(std::string_view text);

std::string serialize_spec(const GenSpec& spec);
GenSpec parse_spec(std::string_view text);

/// Whole file as a string; throws ParseError when it cannot be read.
std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view contents);

}  // namespace wcg::io
