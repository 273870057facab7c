#pragma once

// Text literals for functions and wavelet families:
//   zero | haar | haar2d[:kind] | chi:a,b | steps:b0,v0,b1,v1,...,bn
//   poly:x0,y0;x1,y1;...[=v] | random:n,seed
// Values are complex doubles: "2", "1.5-2i", "i".

#include <string_view>
#include <vector>

#include "superframe/funcspace.hpp"

namespace superframe {

Complex parse_complex(std::string_view text);

/// A single function on R^dim. Throws Parse, ShapeMismatch or InvalidGeometry.
PiecewiseFunction parse_function(std::string_view text, int dim);

/// Wavelet literal; a bare `haar2d` expands to the three separable wavelets.
std::vector<PiecewiseFunction> parse_wavelets(std::string_view text, int dim);

}  // namespace superframe
