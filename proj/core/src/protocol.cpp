#include "hypersonic/protocol.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

#include "hypersonic/bit_engine.hpp"
#include "hypersonic/reference_engine.hpp"

namespace hypersonic {
namespace {

std::vector<int> parse_ints(const std::string& line, int line_no, std::size_t expected) {
  std::vector<int> values;
  const char* p = line.data();
  const char* end = p + line.size();
  while (p < end) {
    while (p < end && *p == ' ') ++p;
    if (p == end) break;
    int v = 0;
    const auto [next, ec] = std::from_chars(p, end, v);
    if (ec != std::errc() || (next < end && *next != ' ')) throw ProtocolError(line_no, "expected integers: '" + line + "'");
    values.push_back(v);
    p = next;
  }
  if (values.size() != expected)
    throw ProtocolError(line_no, "expected " + std::to_string(expected) + " integers, got " + std::to_string(values.size()));
  return values;
}

std::string strip_cr(std::string line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return line;
}

Cell parse_cell(char c, Pos p, int line_no) {
  Cell cell;
  switch (c) {
    case '.': break;
    case 'X': cell.kind = CellKind::Wall; break;
    case '0': case '1': case '2':
      cell.kind = CellKind::Box;
      cell.content = static_cast<ItemKind>(c - '0');
      break;
    default: throw ProtocolError(line_no, std::string("bad cell character '") + c + "'");
  }
  if ((cell.kind == CellKind::Wall) != is_wall(p)) throw ProtocolError(line_no, "wall pattern violated");
  return cell;
}

class LineReader {
 public:
  explicit LineReader(std::istream& in) : in_(in) {}

  bool next(std::string& line) {
    if (!std::getline(in_, line)) return false;
    line = strip_cr(std::move(line));
    ++count_;
    return true;
  }
  std::string require() {
    std::string line;
    if (!next(line)) throw ProtocolError(count_ + 1, "unexpected end of message");
    return line;
  }
  int count() const { return count_; }

 private:
  std::istream& in_;
  int count_ = 0;
};

GameState parse_turn_lines(LineReader& r, const std::string& first_row) {
  GameState s;
  for (int y = 0; y < kHeight; ++y) {
    const std::string row = y == 0 ? first_row : r.require();
    if (static_cast<int>(row.size()) != kWidth)
      throw ProtocolError(r.count(), "grid row must have 13 characters, got " + std::to_string(row.size()));
    for (int x = 0; x < kWidth; ++x) s.grid[y][x] = parse_cell(row[x], {x, y}, r.count());
  }
  const int n = parse_ints(r.require(), r.count(), 1)[0];
  if (n < 0 || n > kCells + kMaxPlayers) throw ProtocolError(r.count(), "bad entity count");
  for (int i = 0; i < n; ++i) {
    const auto v = parse_ints(r.require(), r.count(), 6);
    const Pos pos{v[2], v[3]};
    if (!in_grid(pos)) throw ProtocolError(r.count(), "coordinates out of range");
    switch (v[0]) {
      case 0: {
        if (v[1] < 0 || v[1] >= kMaxPlayers) throw ProtocolError(r.count(), "bad player id");
        Player p;
        p.id = v[1];
        p.pos = pos;
        p.bombs_available = v[4];
        p.range = v[5];
        s.players.push_back(p);
        break;
      }
      case 1:
        s.bombs.push_back({v[1], pos, v[4], v[5]});
        break;
      case 2:
        if (v[4] != 1 && v[4] != 2) throw ProtocolError(r.count(), "bad item kind");
        s.items.push_back({static_cast<ItemKind>(v[4]), pos});
        break;
      default: throw ProtocolError(r.count(), "bad entity type " + std::to_string(v[0]));
    }
  }
  std::sort(s.players.begin(), s.players.end(), [](const Player& a, const Player& b) { return a.id < b.id; });
  for (std::size_t i = 0; i < s.players.size(); ++i)
    if (s.players[i].id != static_cast<int>(i)) throw ProtocolError(r.count(), "player ids must be 0..n-1");
  const auto by_cell = [](const auto& a, const auto& b) { return cell_index(a.pos) < cell_index(b.pos); };
  std::sort(s.bombs.begin(), s.bombs.end(), by_cell);
  std::sort(s.items.begin(), s.items.end(), by_cell);

  const auto stats = parse_ints(r.require(), r.count(), 2 + 4 * s.players.size());
  s.turn = stats[0];
  if (stats[1] >= 0) s.post_box_countdown = stats[1];
  for (std::size_t i = 0; i < s.players.size(); ++i) {
    Player& p = s.players[i];
    p.boxes_destroyed = stats[2 + 4 * i];
    p.alive = stats[3 + 4 * i] != 0;
    p.max_bombs = stats[4 + 4 * i];
    if (stats[5 + 4 * i] >= 0) p.elimination_turn = stats[5 + 4 * i];
  }
  return s;
}

bool passable(const GameState& s, Pos p) {
  return in_grid(p) && s.at(p).kind == CellKind::Floor && s.bomb_at(p) == nullptr;
}

constexpr std::array<Move, 4> kTieOrder{Move::Right, Move::Down, Move::Left, Move::Up};

}  // namespace

std::string encode_init(int my_id) { return std::to_string(kWidth) + ' ' + std::to_string(kHeight) + ' ' + std::to_string(my_id) + '\n'; }

InitInfo parse_init(const std::string& text) {
  std::istringstream in(text);
  LineReader r(in);
  const auto v = parse_ints(r.require(), 1, 3);
  if (v[0] != kWidth || v[1] != kHeight) throw ProtocolError(1, "grid must be 13x11");
  if (v[2] < 0 || v[2] >= kMaxPlayers) throw ProtocolError(1, "bad player id");
  return {v[0], v[1], v[2]};
}

std::string encode_turn(const GameState& s, int /*viewer*/) {
  std::ostringstream out;
  for (int y = 0; y < kHeight; ++y) out << grid_row(s, y) << '\n';
  out << s.players.size() + s.bombs.size() + s.items.size() << '\n';
  for (const Player& p : s.players)
    out << "0 " << p.id << ' ' << p.pos.x << ' ' << p.pos.y << ' ' << p.bombs_available << ' ' << p.range << '\n';
  for (const Bomb& b : s.bombs)
    out << "1 " << b.owner << ' ' << b.pos.x << ' ' << b.pos.y << ' ' << b.timer << ' ' << b.range << '\n';
  for (const Item& i : s.items) out << "2 0 " << i.pos.x << ' ' << i.pos.y << ' ' << static_cast<int>(i.kind) << " 0\n";
  out << s.turn << ' ' << s.post_box_countdown.value_or(-1);
  for (const Player& p : s.players)
    out << ' ' << p.boxes_destroyed << ' ' << (p.alive ? 1 : 0) << ' ' << p.max_bombs << ' '
        << p.elimination_turn.value_or(-1);
  out << '\n';
  return out.str();
}

GameState parse_turn(const std::string& text) {
  std::istringstream in(text);
  LineReader r(in);
  return parse_turn_lines(r, r.require());
}

bool read_turn(std::istream& in, GameState& out) {
  LineReader r(in);
  std::string first;
  if (!r.next(first)) return false;
  out = parse_turn_lines(r, first);
  return true;
}

std::string encode_action(const WireAction& a) {
  std::string s = (a.bomb ? "BOMB " : "MOVE ") + std::to_string(a.target.x) + ' ' + std::to_string(a.target.y);
  if (!a.message.empty()) s += ' ' + a.message;
  return s + '\n';
}

std::string encode_action(Action a, Pos from) { return encode_action(WireAction{a.drop, step_toward(from, a.move), {}}); }

WireAction parse_action(const std::string& raw) {
  const std::string line = strip_cr(raw);
  std::istringstream in(line);
  std::string verb;
  in >> verb;
  WireAction a;
  if (verb == "BOMB") a.bomb = true;
  else if (verb != "MOVE") throw ProtocolError(1, "unknown verb '" + verb + "'");
  if (!(in >> a.target.x >> a.target.y)) throw ProtocolError(1, "expected target coordinates");
  if (!in_grid(a.target)) throw ProtocolError(1, "target out of range");
  std::getline(in >> std::ws, a.message);
  return a;
}

Action reduce_action(const GameState& s, int player, const WireAction& a) {
  const auto [resolved, events] = resolve_explosions(s);
  const std::vector<Action> legal = legal_actions_resolved(resolved, player);
  const auto is_legal = [&](Action x) { return std::find(legal.begin(), legal.end(), x) != legal.end(); };
  if (legal.empty()) return Action::stay();
  const Pos from = resolved.players[player].pos;
  const bool drop = a.bomb && is_legal({Move::Stay, true});

  Move move = Move::Stay;
  if (manhattan(from, a.target) == 1) {
    for (const Move m : kTieOrder)
      if (step_toward(from, m) == a.target && is_legal({m, false})) move = m;
  } else if (a.target != from) {
    std::array<int, kCells> dist;
    dist.fill(-1);
    // Distances to the target over cells a player could walk through.
    std::vector<Pos> queue{a.target};
    dist[cell_index(a.target)] = 0;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const Pos p = queue[head];
      for (const Move m : kTieOrder) {
        const Pos q = step_toward(p, m);
        if (!passable(resolved, q) || dist[cell_index(q)] >= 0) continue;
        dist[cell_index(q)] = dist[cell_index(p)] + 1;
        queue.push_back(q);
      }
    }
    int best = -1;
    for (const Move m : kTieOrder) {
      const Pos q = step_toward(from, m);
      if (!is_legal({m, false})) continue;
      const int d = dist[cell_index(q)];
      if (d >= 0 && (best < 0 || d < best)) {
        best = d;
        move = m;
      }
    }
    if (best < 0) {
      for (const Move m : kTieOrder) {
        if (is_legal({m, false}) && manhattan(step_toward(from, m), a.target) < manhattan(from, a.target)) {
          move = m;
          break;
        }
      }
    }
  }
  return {move, drop};
}

void run_bot(Agent& agent, std::istream& in, std::ostream& out, const Budget& turn_budget,
             const Budget& first_turn_budget) {
  std::string line;
  if (!std::getline(in, line)) return;
  const int me = parse_init(line).my_id;
  GameState s;
  for (bool first = true; read_turn(in, s); first = false) {
    const BitState b = from_state(s);
    const SearchResult r = agent.decide(b, me, first ? first_turn_budget : turn_budget);
    WireAction w{r.action.drop, step_toward(s.players[me].pos, r.action.move), {}};
    out << encode_action(w) << std::flush;
  }
}

}  // namespace hypersonic
