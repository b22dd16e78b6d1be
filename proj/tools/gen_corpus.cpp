// Writes the seeded corpus of random singular plane curves used by the property tests.
// Each line is "<field> <TAB> <polynomial>"; the output is fixed by the seed.

#include <fstream>
#include <iostream>
#include <random>

#include <CLI11.hpp>

#include "support/generators.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Generate the random singular curve corpus"};
  std::string out = "random_corpus.txt";
  std::uint64_t seed = 20240611;
  int count = 500;
  unsigned max_degree = 8;
  app.add_option("-o,--output", out, "Output file");
  app.add_option("--seed", seed, "Random seed");
  app.add_option("--count", count, "Number of polynomials");
  app.add_option("--max-degree", max_degree, "Maximal total degree");
  CLI11_PARSE(app, argc, argv);

  using namespace stackres;
  const std::vector<Field> fields = {Field::prime(2), Field::prime(3), Field::prime(5)};
  const std::vector<std::string> vars = {"x", "y"};
  std::mt19937_64 rng(seed);
  std::ofstream file(out);
  if (!file) {
    std::cerr << "cannot write " << out << "\n";
    return 2;
  }
  file << "# seed " << seed << ", " << count << " polynomials of order >= 2 and degree <= " << max_degree << "\n";
  for (int k = 0; k < count;) {
    const Field& field = fields[k % fields.size()];
    const unsigned terms = std::uniform_int_distribution<unsigned>(2, 6)(rng);
    MPoly f = testgen::random_poly(field, vars, max_degree, terms, rng, 2);
    if (k % 2 == 1) {
      // Every other entry is y^a + c x^b plus terms above the segment joining them: degenerate
      // Newton polygons, inseparable initial forms and higher order are then common.
      const unsigned a = std::uniform_int_distribution<unsigned>(2, std::min(max_degree, 6u))(rng);
      const unsigned b = std::uniform_int_distribution<unsigned>(a, max_degree)(rng);
      MPoly g = testgen::var(field, vars, 1).pow(a) + testgen::var(field, vars, 0).pow(b) * testgen::nonzero(field, rng);
      for (const auto& [e, c] : f.terms())
        if (e[0] * a + e[1] * b > a * b && e[0] + e[1] <= max_degree) g += MPoly::monomial(field, vars, e, c);
      f = g;
    }
    if (f.is_zero()) continue;
    file << field.spec() << "\t" << f.to_string() << "\n";
    ++k;
  }
  return 0;
}
