#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>

#include "stackres/figures.hpp"
#include "support/fixtures.hpp"

using namespace stackres;

namespace {

std::size_t count(const std::string& text, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1)) ++n;
  return n;
}

}  // namespace

TEST_CASE("Newton polygon carries the intercept labels") {
  for (const char* field : {"F2", "F3", "F5", "Q"}) {
    const auto a = compute_invariant_and_center(parse_polynomial(fixtures::kTwoEdges, Field::parse(field)));
    const std::string svg = newton_polygon_svg(a);
    CHECK(svg.find("ν = 7") != std::string::npos);
    CHECK(svg.find("νδ = 42/5") != std::string::npos);
    CHECK(svg.find("ν_u") == std::string::npos);
    CHECK(svg.rfind("<?xml", 0) == 0);
    CHECK(count(svg, "<circle") == 3);
  }
  const MPoly f = parse_polynomial(fixtures::kSevenOrder, Field::prime(3));
  const auto node = blow_up_once(f);
  const std::string svg = newton_polygon_svg(*node.analysis, &*node.blowup);
  CHECK(svg.find("νδ = 28/3") != std::string::npos);
  // nu_u(f) = min(a + 2b) over the support of the order-seven polynomial.
  CHECK(svg.find("ν_u(f) = 11") != std::string::npos);
}

TEST_CASE("fan pair for w = (3, 2) in characteristic 3") {
  const auto b = multiweighted_blowup({3, 2, 6}, {"y", "x"}, Field::prime(3));
  const std::string svg = fan_svg(b);
  CHECK(svg.find("&lt;u&gt; (1,1)") != std::string::npos);
  CHECK(svg.find("&lt;w&gt; (3,2)") != std::string::npos);
  // Left panel: det 2 and det 3; right panel: det 2, det 1, det 1.
  CHECK(count(svg, "det 2") == 2);
  CHECK(count(svg, "det 3") == 1);
  CHECK(count(svg, "det 1") == 2);
  CHECK(svg.find("Σ'") != std::string::npos);

  const auto w = weighted_blowup({1, 1, 2}, {"y", "x"}, Field());
  const std::string single = fan_svg(w);
  CHECK(single.find("Σ'") == std::string::npos);
  CHECK(count(single, "det 1") == 2);
}

TEST_CASE("figures are deterministic and absent for smooth input") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "stackres-figures-test";
  fs::remove_all(dir);
  const auto tree = resolve(parse_polynomial(fixtures::kSevenOrder, Field::prime(3)));
  const auto first = emit_figures(tree, (dir / "a").string());
  const auto second = emit_figures(tree, (dir / "b").string());
  REQUIRE(first == second);
  CHECK(first.size() == 2 * static_cast<std::size_t>(std::count_if(tree.nodes.begin(), tree.nodes.end(),
                                                                    [](const ResolutionNode& n) { return n.blowup.has_value(); })));
  for (const auto& name : first) {
    std::ifstream a(dir / "a" / name, std::ios::binary), b(dir / "b" / name, std::ios::binary);
    const std::string sa((std::istreambuf_iterator<char>(a)), {}), sb((std::istreambuf_iterator<char>(b)), {});
    CHECK(sa == sb);
    CHECK(newton_polygon_svg(*tree.nodes.front().analysis, &*tree.nodes.front().blowup) ==
          newton_polygon_svg(*tree.nodes.front().analysis, &*tree.nodes.front().blowup));
  }
  CHECK(emit_figures(resolve(parse_polynomial("y - x^2", Field::prime(5))), (dir / "smooth").string()).empty());
  CHECK(emit_figures(resolve(parse_polynomial("(y + x^2)^3", Field::prime(5))), (dir / "smooth").string()).empty());
  fs::remove_all(dir);
}
