#pragma once
#include <array>
#include <vector>

#include "aztec/combinatorics.hpp"

namespace aztec {

// Coordinates are doubled so every vertex of the half-integer lattice is an integer pair.
struct Square {
  int row;   // 1..2N+1
  long pos;  // position within the row
  long ci2, cj2;  // doubled center
  bool dark;      // odd rows
  bool v;
  int domino = -1;
};

struct Domino {
  int lower, upper;  // square indices; upper sits in the next row
  bool leans_right;  // upper square lies up-right of the lower one
  bool lower_odd;
  int kind() const;  // 0..3 from the lower row parity and the lean
};

struct TilingLayout {
  std::vector<Square> squares;
  std::vector<Domino> dominoes;
};

long row_length(const DomainSpec& d, int row);
long row_offset2(int row);  // doubled i-coordinate of position 0's center

// The four corners of a square, bottom/left/right/top, doubled.
std::array<std::array<long, 2>, 4> corners2(const Square& s);

// Throws ValidationError if the grid does not pair into dominoes.
TilingLayout layout(const VGrid& g, const DomainSpec& d);

}  // namespace aztec
