#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>

#include "hypersonic/agent.hpp"
#include "hypersonic/game_state.hpp"

namespace hypersonic {

// Wire grammar, one message per line group, every line newline-terminated:
//
//   init:   "13 11 <my_id>"
//   turn:   11 rows of 13 chars ('.', 'X', '0' empty box, '1' range box, '2' bomb box)
//           "<n>" then n entity lines "<type> <owner> <x> <y> <p1> <p2>"
//             type 0 player: p1 bombs_available, p2 range (dead players included)
//             type 1 bomb:   p1 timer, p2 range
//             type 2 item:   owner 0, p1 kind (1 ExtraRange, 2 ExtraBomb), p2 0
//           stats "<turn> <countdown or -1>" then per player
//             "<boxes_destroyed> <alive> <max_bombs> <elimination_turn or -1>"
//   action: "MOVE <x> <y>" or "BOMB <x> <y>", optionally followed by a free message.

class ProtocolError : public std::runtime_error {
 public:
  ProtocolError(int line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

struct InitInfo {
  int width = kWidth;
  int height = kHeight;
  int my_id = 0;

  bool operator==(const InitInfo&) const = default;
};

std::string encode_init(int my_id);
InitInfo parse_init(const std::string& text);

std::string encode_turn(const GameState& s, int viewer);
GameState parse_turn(const std::string& text);
// Reads exactly one turn message; returns false on a clean end of stream.
bool read_turn(std::istream& in, GameState& out);

struct WireAction {
  bool bomb = false;
  Pos target;
  std::string message;

  bool operator==(const WireAction&) const = default;
};

std::string encode_action(Action a, Pos from);
std::string encode_action(const WireAction& a);
WireAction parse_action(const std::string& line);

// First step toward the target: own cell or an adjacent target is taken
// directly, otherwise the first step of a shortest path with ties broken
// Right, Down, Left, Up. Unreachable targets fall back to a legal step that
// reduces the Manhattan distance, else Stay. Never returns an illegal action.
Action reduce_action(const GameState& s, int player, const WireAction& a);

// Serves one agent over the stream protocol until the input ends.
void run_bot(Agent& agent, std::istream& in, std::ostream& out, const Budget& turn_budget,
             const Budget& first_turn_budget);

}  // namespace hypersonic
