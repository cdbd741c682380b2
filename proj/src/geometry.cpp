#include "aztec/geometry.hpp"

#include <algorithm>
#include <string>

namespace aztec {

int Domino::kind() const { return 2 * lower_odd + leans_right; }

long row_length(const DomainSpec& d, int row) {
  if (row == 1) return d.N;
  return row % 2 == 1 ? d.N + d.m : d.N + d.m + 1;
}

long row_offset2(int row) { return row % 2 == 1 ? 1 : 0; }

std::array<std::array<long, 2>, 4> corners2(const Square& s) {
  return {{{s.ci2, s.cj2 - 1}, {s.ci2 - 1, s.cj2}, {s.ci2 + 1, s.cj2}, {s.ci2, s.cj2 + 1}}};
}

TilingLayout layout(const VGrid& g, const DomainSpec& d) {
  const int rows = 2 * d.N + 1;
  if (static_cast<int>(g.rows.size()) != rows) throw ValidationError("grid must have 2N+1 rows");
  TilingLayout t;
  std::vector<std::vector<int>> by_row(rows + 1);
  for (int k = 1; k <= rows; ++k) {
    std::vector<long> positions;
    if (k == 1) {
      for (long w : d.omega) positions.push_back(w - 1);
    } else {
      for (long p = 0; p < row_length(d, k); ++p) positions.push_back(p);
    }
    const auto& vs = g.rows[k - 1];
    for (long p : positions) {
      Square s;
      s.row = k;
      s.pos = p;
      s.ci2 = 2 * p + row_offset2(k);
      s.cj2 = k - 1;
      s.dark = k % 2 == 1;
      s.v = std::binary_search(vs.begin(), vs.end(), p);
      by_row[k].push_back(static_cast<int>(t.squares.size()));
      t.squares.push_back(s);
    }
    long nv = 0;
    for (int id : by_row[k]) nv += t.squares[id].v;
    if (nv != static_cast<long>(vs.size())) throw ValidationError("V-position outside row " + std::to_string(k));
  }

  // Odd-row V pairs with the V above it, even-row Lambda pairs with the Lambda above it; both in order.
  for (int k = 1; k < rows; ++k) {
    const bool want_v = k % 2 == 1;
    std::vector<int> lo, hi;
    for (int id : by_row[k])
      if (t.squares[id].v == want_v) lo.push_back(id);
    for (int id : by_row[k + 1])
      if (t.squares[id].v == want_v) hi.push_back(id);
    if (lo.size() != hi.size()) throw ValidationError("rows " + std::to_string(k) + "/" + std::to_string(k + 1) + " do not pair");
    for (std::size_t a = 0; a < lo.size(); ++a) {
      Square& s = t.squares[lo[a]];
      Square& u = t.squares[hi[a]];
      const long di = u.ci2 - s.ci2;
      if (di != 1 && di != -1) throw ValidationError("unpaired square in row " + std::to_string(k));
      s.domino = u.domino = static_cast<int>(t.dominoes.size());
      t.dominoes.push_back({lo[a], hi[a], di == 1, k % 2 == 1});
    }
  }
  for (const Square& s : t.squares)
    if (s.domino < 0) throw ValidationError("square left uncovered in row " + std::to_string(s.row));
  return t;
}

}  // namespace aztec
