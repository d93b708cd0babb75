#pragma once

#include <b0calc/pc.hpp>

#include <string>

namespace b0calc {

// Line-oriented presentation language:
//
//   group <name> {
//     prime <p>;
//     gens <id> <id> ...;
//     central <id> ...;
//     order <id> <q>;
//     pow <id> = <word>;
//     comm [<id>, <id>] = <word>;
//   }
//
// <word> is whitespace-separated id^exp factors ("1" for the identity),
// exponents in decimal.  Power and commutator values must be words in the
// central generators.  Statements may appear in any order; generators are
// canonically reordered so the central ones form the trailing block.

struct ParsedGroup {
  std::string name;
  PcPresentation pres;
};

// Parse and validate.  Throws SyntaxError with line/column, then the
// presentation validation errors.
ParsedGroup parse_dsl(const std::string& text);

// Canonical source text; parse_dsl(describe_dsl(g)) reproduces g.
std::string describe_dsl(const PcPresentation& g,
                         const std::string& name = "G");

// FNV-1a (64-bit) over the canonical serialization, as 16 hex digits.
// Independent of statement order and of the group name.
std::string presentation_hash(const PcPresentation& g);

}  // namespace b0calc
