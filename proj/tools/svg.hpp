#pragma once
#include <string>
#include <vector>

#include "aztec/combinatorics.hpp"
#include "aztec/frozen.hpp"
#include "aztec/geometry.hpp"

namespace aztec::svg {

using Polyline = std::vector<Point2>;

struct TilingLayers {
  std::vector<Polyline> arctic;  // (chi, kappa) pieces
  bool paths = false;
};

std::string tiling(const VGrid& g, const DomainSpec& d, const TilingLayers& layers);

// Plot of curve pieces in the box [x0, x1] x [y0, y1].
std::string curves(const std::vector<Polyline>& pieces, double x0, double x1, double y0, double y1,
                   const std::string& title);

}  // namespace aztec::svg
