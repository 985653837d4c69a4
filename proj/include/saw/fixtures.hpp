#ifndef SAW_FIXTURES_HPP
#define SAW_FIXTURES_HPP

#include <span>
#include <string_view>

#include "saw/matrix.hpp"

namespace saw::fixtures {

// Exact-rational matrices bundled with the library. The same text ships
// as data/fixtures/<name>.mat.
//
//   uniform4       e' (1/4, 1/4, 1/4, 1/4)
//   concentrated4  rows (1/2, 0, 1/2, 0)
//   mixed4         rows differ; same ({1,2},{3,4}) block sums as the two above
//   blockdiag4     two 2x2 stable diagonal blocks (1/3, 2/3) and (2/5, 3/5)
std::span<const std::string_view> names();
std::string_view text(std::string_view name);
Matrix<Rational> load(std::string_view name);

}  // namespace saw::fixtures

#endif  // SAW_FIXTURES_HPP
