#include "parhca/codec.hpp"

#include <charconv>
#include <sstream>

namespace parhca {

char symbol_char(Symbol s) {
  static constexpr char chars[] = {'r', 'l', 'u', 'd', 'w', 'n', 'e'};
  return chars[static_cast<int>(s)];
}

std::vector<Symbol> EncodedSegment::symbols() const {
  std::vector<Symbol> out(static_cast<std::size_t>(start_time), Symbol::n);
  out.insert(out.end(), moves.begin(), moves.end());
  out.push_back(Symbol::e);
  return out;
}

std::string EncodedSegment::to_string() const {
  std::ostringstream s;
  s << agent << ' ' << start.x << ' ' << start.y;
  for (Symbol sym : symbols()) s << ' ' << symbol_char(sym);
  return s.str();
}

EncodedSegment encode_segment(const SubpathSegment& seg) {
  if (seg.states.empty()) throw CodecError("cannot encode an empty segment");
  EncodedSegment enc{seg.agent, seg.states.front().cell, seg.states.front().t, {}};
  if (enc.start_time < 0) throw CodecError("negative start time");
  for (std::size_t k = 1; k < seg.states.size(); ++k) {
    Coord a = seg.states[k - 1].cell, b = seg.states[k].cell;
    if (seg.states[k].t != seg.states[k - 1].t + 1)
      throw CodecError("segment is not time-contiguous");
    int dx = b.x - a.x, dy = b.y - a.y;
    if (dx == 1 && dy == 0)
      enc.moves.push_back(Symbol::r);
    else if (dx == -1 && dy == 0)
      enc.moves.push_back(Symbol::l);
    else if (dx == 0 && dy == 1)
      enc.moves.push_back(Symbol::u);
    else if (dx == 0 && dy == -1)
      enc.moves.push_back(Symbol::d);
    else if (dx == 0 && dy == 0)
      enc.moves.push_back(Symbol::w);
    else
      throw CodecError("segment contains a non-adjacent step");
  }
  return enc;
}

SubpathSegment decode_segment(const EncodedSegment& enc) {
  SubpathSegment seg;
  seg.agent = enc.agent;
  TimedCell cur{enc.start, enc.start_time};
  seg.states.push_back(cur);
  for (Symbol s : enc.moves) {
    switch (s) {
      case Symbol::r: ++cur.cell.x; break;
      case Symbol::l: --cur.cell.x; break;
      case Symbol::u: ++cur.cell.y; break;
      case Symbol::d: --cur.cell.y; break;
      case Symbol::w: break;
      default: throw CodecError("only move symbols may follow the start time");
    }
    ++cur.t;
    seg.states.push_back(cur);
  }
  return seg;
}

namespace {

int parse_int(std::string_view tok, const char* what) {
  int v = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc{} || ptr != tok.data() + tok.size() || v < 0)
    throw CodecError(std::string("bad ") + what + " '" + std::string(tok) + "'");
  return v;
}

Symbol parse_symbol(std::string_view tok) {
  if (tok.size() == 1) {
    switch (tok[0]) {
      case 'r': return Symbol::r;
      case 'l': return Symbol::l;
      case 'u': return Symbol::u;
      case 'd': return Symbol::d;
      case 'w': return Symbol::w;
      case 'n': return Symbol::n;
      case 'e': return Symbol::e;
    }
  }
  throw CodecError("unknown symbol '" + std::string(tok) + "'");
}

}  // namespace

EncodedSegment parse_segment_text(std::string_view text) {
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && (text[i] == ' ' || text[i] == '\t' || text[i] == '\n' ||
                               text[i] == '\r' || text[i] == ','))
      ++i;
    std::size_t j = i;
    while (j < text.size() && !(text[j] == ' ' || text[j] == '\t' || text[j] == '\n' ||
                                text[j] == '\r' || text[j] == ','))
      ++j;
    if (j > i) tokens.push_back(text.substr(i, j - i));
    i = j;
  }
  if (tokens.size() < 3) throw CodecError("segment header needs agent, x and y");

  EncodedSegment enc;
  enc.agent = parse_int(tokens[0], "agent id");
  enc.start = {parse_int(tokens[1], "x"), parse_int(tokens[2], "y")};
  bool terminated = false;
  for (std::size_t k = 3; k < tokens.size(); ++k) {
    if (terminated) throw CodecError("symbols after terminator");
    Symbol s = parse_symbol(tokens[k]);
    if (s == Symbol::e) {
      terminated = true;
    } else if (s == Symbol::n) {
      if (!enc.moves.empty()) throw CodecError("start-time marker after a move");
      ++enc.start_time;
    } else {
      enc.moves.push_back(s);
    }
  }
  if (!terminated) throw CodecError("segment stream has no terminator");
  return enc;
}

int ceil_log2(std::uint64_t n) {
  int bits = 0;
  while (bits < 64 && (std::uint64_t{1} << bits) < n) ++bits;
  return bits;
}

std::uint64_t header_bits(int n_agents, int map_side) {
  return static_cast<std::uint64_t>(ceil_log2(static_cast<std::uint64_t>(n_agents)) +
                                    2 * ceil_log2(static_cast<std::uint64_t>(map_side)) +
                                    kSymbolBits);
}

std::uint64_t segment_bits(std::size_t k, std::span<const SubpathSegment> segments,
                           int n_agents, int map_side) {
  if (k >= segments.size()) throw std::out_of_range("segment index out of range");
  const auto& seg = segments[k];
  if (seg.states.empty()) throw std::invalid_argument("empty segment");
  auto start = static_cast<std::uint64_t>(seg.states.front().t);
  auto moves = static_cast<std::uint64_t>(seg.length());
  return static_cast<std::uint64_t>(ceil_log2(static_cast<std::uint64_t>(n_agents))) +
         2 * static_cast<std::uint64_t>(ceil_log2(static_cast<std::uint64_t>(map_side))) +
         kSymbolBits * start + kSymbolBits * (moves + 1);
}

std::uint64_t path_bits(std::span<const SubpathSegment> segments, int n_agents,
                        int map_side) {
  std::uint64_t total = 0;
  for (std::size_t k = 0; k < segments.size(); ++k)
    total += segment_bits(k, segments, n_agents, map_side);
  return total;
}

namespace {

class BitWriter {
 public:
  void put(std::uint64_t value, int width) {
    for (int b = width - 1; b >= 0; --b) {
      if (used_ % 8 == 0) bytes_.push_back(0);
      if (value >> b & 1) bytes_.back() |= static_cast<std::uint8_t>(0x80 >> (used_ % 8));
      ++used_;
    }
  }
  std::vector<std::uint8_t> take() { return std::move(bytes_); }

 private:
  std::vector<std::uint8_t> bytes_;
  std::size_t used_ = 0;
};

class BitReader {
 public:
  explicit BitReader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  std::uint64_t get(int width) {
    std::uint64_t v = 0;
    for (int b = 0; b < width; ++b) {
      if (pos_ >= bytes_.size() * 8) throw CodecError("packed segment truncated");
      v = v << 1 | (bytes_[pos_ / 8] >> (7 - pos_ % 8) & 1);
      ++pos_;
    }
    return v;
  }
  std::size_t remaining() const { return bytes_.size() * 8 - pos_; }

 private:
  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

}  // namespace

std::vector<std::uint8_t> pack_segment(const EncodedSegment& enc, int n_agents,
                                       int map_side) {
  const int id_bits = ceil_log2(static_cast<std::uint64_t>(n_agents));
  const int coord_bits = ceil_log2(static_cast<std::uint64_t>(map_side));
  if (enc.agent < 0 || static_cast<std::uint64_t>(enc.agent) >= (std::uint64_t{1} << id_bits))
    throw CodecError("agent id does not fit the header");
  if (enc.start.x < 0 || enc.start.y < 0 ||
      static_cast<std::uint64_t>(std::max(enc.start.x, enc.start.y)) >=
          (std::uint64_t{1} << coord_bits))
    throw CodecError("start cell does not fit the header");

  BitWriter w;
  w.put(static_cast<std::uint64_t>(enc.agent), id_bits);
  w.put(static_cast<std::uint64_t>(enc.start.x), coord_bits);
  w.put(static_cast<std::uint64_t>(enc.start.y), coord_bits);
  for (Symbol s : enc.symbols()) w.put(static_cast<std::uint64_t>(s), kSymbolBits);
  return w.take();
}

EncodedSegment unpack_segment(std::span<const std::uint8_t> bytes, int n_agents,
                              int map_side) {
  const int id_bits = ceil_log2(static_cast<std::uint64_t>(n_agents));
  const int coord_bits = ceil_log2(static_cast<std::uint64_t>(map_side));
  BitReader r(bytes);
  EncodedSegment enc;
  enc.agent = static_cast<AgentId>(r.get(id_bits));
  enc.start.x = static_cast<int>(r.get(coord_bits));
  enc.start.y = static_cast<int>(r.get(coord_bits));
  for (;;) {
    if (r.remaining() < kSymbolBits) throw CodecError("packed segment has no terminator");
    auto code = r.get(kSymbolBits);
    if (code > static_cast<std::uint64_t>(Symbol::e))
      throw CodecError("unknown packed symbol");
    auto s = static_cast<Symbol>(code);
    if (s == Symbol::e) break;
    if (s == Symbol::n) {
      if (!enc.moves.empty()) throw CodecError("start-time marker after a move");
      ++enc.start_time;
    } else {
      enc.moves.push_back(s);
    }
  }
  if (r.remaining() >= 8) throw CodecError("trailing bytes after packed segment");
  return enc;
}

}  // namespace parhca
