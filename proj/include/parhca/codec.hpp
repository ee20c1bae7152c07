#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "parhca/conflict.hpp"

namespace parhca {

/// Segment alphabet. Each symbol costs three bits on the wire.
/// r: x+1, l: x-1, u: y+1, d: y-1, w: wait, n: one unit of start time, e: end.
enum class Symbol : std::uint8_t { r = 0, l = 1, u = 2, d = 3, w = 4, n = 5, e = 6 };

inline constexpr int kSymbolBits = 3;

char symbol_char(Symbol s);

class CodecError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Agent id, start cell, start time and one move symbol per step.
struct EncodedSegment {
  AgentId agent = 0;
  Coord start;
  int start_time = 0;
  std::vector<Symbol> moves;  // r/l/u/d/w only

  /// Full symbol stream after the header: start_time n's, moves, then e.
  std::vector<Symbol> symbols() const;
  /// Space-separated text form, e.g. "5 0 0 n n r u w r d r u u u l e".
  std::string to_string() const;

  friend bool operator==(const EncodedSegment&, const EncodedSegment&) = default;
};

EncodedSegment encode_segment(const SubpathSegment& seg);
/// Rebuilds the timed states. Partition and neighbouring states are not
/// part of the encoding and come back as 0 / empty.
SubpathSegment decode_segment(const EncodedSegment& enc);
/// Parses the text form. Throws CodecError on a missing terminator, unknown
/// symbol, malformed header, or n after a move.
EncodedSegment parse_segment_text(std::string_view text);

/// ceil(log2(n)), 0 for n <= 1.
int ceil_log2(std::uint64_t n);

/// Bits for segment k of one path: agent id, start cell, one n per unit of
/// start time and (moves + 1) direction/end symbols.
std::uint64_t segment_bits(std::size_t k, std::span<const SubpathSegment> segments,
                           int n_agents, int map_side);
/// Sum of segment_bits over all segments of a path.
std::uint64_t path_bits(std::span<const SubpathSegment> segments, int n_agents, int map_side);
/// Header overhead for one segment starting at t = 0 (agent, cell, e).
std::uint64_t header_bits(int n_agents, int map_side);

/// Packed wire form: agent id in ceil_log2(N) bits, x and y in ceil_log2(M)
/// bits each, then 3-bit symbols, MSB first, zero-padded to a whole byte.
std::vector<std::uint8_t> pack_segment(const EncodedSegment& enc, int n_agents, int map_side);
/// Inverse of pack_segment. Throws CodecError on malformed input.
EncodedSegment unpack_segment(std::span<const std::uint8_t> bytes, int n_agents, int map_side);

}  // namespace parhca
