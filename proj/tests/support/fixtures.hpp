#pragma once

// Worked examples used across the test suites.

#include <string>
#include <vector>

#include "stackres/parse.hpp"

namespace fixtures {

using namespace stackres;

struct Fixture {
  std::string name;
  std::string field;
  std::string poly;
};

inline const std::string kTangentSolve = "-y^9 + y^3 - x^6 + x^11";
inline const std::string kTwoEdges = "z^7 - x^6*z^2 + x^15";
inline const std::string kSevenOrder = "x2^7 + x1^4*x2^4 + x1^7*x2^2 + x1^9*x2 + x1^11 + x1^6*x2^3";
inline const std::string kSevenOrderQuartic = "x2^7 + x1^4*x2^4 + x1^8*x2 + x1^12";

// Three characteristic pairs: the resolution tree has depth 2.
inline const std::string kNested = "((y^2 - x^3)^2 - x^7)^2 - x^15*y";

inline std::vector<Fixture> all() {
  return {
      {"tangent-solve", "F3", kTangentSolve},
      {"two-edges-F2", "F2", kTwoEdges},
      {"two-edges-F3", "F3", kTwoEdges},
      {"two-edges-F5", "F5", kTwoEdges},
      {"two-edges-Q", "Q", kTwoEdges},
      {"seven-order", "F3", kSevenOrder},
      {"seven-order-quartic", "F3", kSevenOrderQuartic},
      {"inseparable-2", "F2", "x1^2 - x2^3"},
      {"inseparable-3", "F3", "x1^3 - x2^4"},
      {"cusp-F3", "F3", "x1^2 - x2^3"},
      {"cusp-Q", "Q", "y^2 - x^3"},
      {"node-F3", "F3", "y^2 - x^2"},
      {"tacnode-F5", "F5", "y^2 - x^4"},
      {"ramphoid-F2", "F2", "y^2 + x^5 + x^2*y^2"},
      {"e8-F5", "F5", "y^3 + x^5"},
      {"triple-F2", "F2", "y^3 + x^4 + x^3*y"},
      {"quartic-F3", "F3", "(y^2 - x^3)^2 - x^7"},
      {"lines-F5", "F5", "x*y*(x - y)"},
      {"nested-F3", "F3", kNested},
      {"nested-Q", "Q", kNested},
  };
}

inline MPoly parse(const Fixture& f) { return parse_polynomial(f.poly, Field::parse(f.field)); }

}  // namespace fixtures
