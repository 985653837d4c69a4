#include "saw/fixtures.hpp"

#include <array>
#include <sstream>
#include <string>

#include "saw/errors.hpp"

namespace saw::fixtures {

namespace {

constexpr std::string_view k_uniform4 = R"fixture(# stable stochastic matrix e' delta, delta = (1/4, 1/4, 1/4, 1/4)
4 4
1/4 1/4 1/4 1/4
1/4 1/4 1/4 1/4
1/4 1/4 1/4 1/4
1/4 1/4 1/4 1/4
)fixture";

constexpr std::string_view k_concentrated4 = R"fixture(# similar to uniform4 on columns ({1,2},{3,4}) with the fewest positive entries
4 4
2/4 0 2/4 0
2/4 0 2/4 0
2/4 0 2/4 0
2/4 0 2/4 0
)fixture";

constexpr std::string_view k_mixed4 = R"fixture(# similar to uniform4 on columns ({1,2},{3,4}), rows not identical
4 4
1/4 1/4 2/4 0
1/4 1/4 2/4 0
2/4 0 0 2/4
0 2/4 2/4 0
)fixture";

constexpr std::string_view k_blockdiag4 = R"fixture(# stable on rows ({1,2},{3,4}), columns singletons
4 4
1/3 2/3 0 0
1/3 2/3 0 0
0 0 2/5 3/5
0 0 2/5 3/5
)fixture";

constexpr std::array<std::string_view, 4> kNames{"uniform4", "concentrated4", "mixed4", "blockdiag4"};
constexpr std::array<std::string_view, 4> kTexts{k_uniform4, k_concentrated4, k_mixed4, k_blockdiag4};

}  // namespace

std::span<const std::string_view> names() { return kNames; }

std::string_view text(std::string_view name) {
    for (std::size_t i = 0; i < kNames.size(); ++i)
        if (kNames[i] == name) return kTexts[i];
    throw InvalidArgument("unknown fixture '" + std::string(name) + "'");
}

Matrix<Rational> load(std::string_view name) {
    std::istringstream in{std::string(text(name))};
    return read_rational_matrix(in);
}

}  // namespace saw::fixtures
