// Times the level-parallel resolver against the depth-first serial reference on the fixtures
// and the random corpus, and checks that both produce the same trees.

#include <chrono>
#include <iostream>

#include <CLI11.hpp>
#include <omp.h>

#include "stackres/export.hpp"
#include "support/fixtures.hpp"
#include "support/tree_checks.hpp"

using namespace stackres;

int main(int argc, char** argv) {
  CLI::App app{"Serial versus parallel resolution timings"};
  int repeat = 5, threads = 0;
  std::string corpus = STACKRES_DATA_DIR "/random_corpus.txt";
  app.add_option("--repeat", repeat, "Timed repetitions")->capture_default_str();
  app.add_option("--threads", threads, "OpenMP threads (0: runtime default)");
  app.add_option("--corpus", corpus, "Corpus file")->capture_default_str();
  CLI11_PARSE(app, argc, argv);
  if (threads > 0) omp_set_num_threads(threads);

  std::vector<MPoly> inputs;
  for (const auto& fx : fixtures::all()) inputs.push_back(fixtures::parse(fx));
  for (const auto& e : treecheck::load_corpus(corpus)) inputs.push_back(treecheck::parse(e));

  std::size_t nodes = 0;
  for (const auto& f : inputs) {
    const auto a = to_json(resolve(f)), b = to_json(resolve_serial(f));
    if (a != b) {
      std::cerr << "trees differ for " << f.to_string() << "\n";
      return 1;
    }
    nodes += a["nodes"].size();
  }

  auto time = [&](auto&& run) {
    double best = 1e300;
    for (int r = 0; r < repeat; ++r) {
      const auto start = std::chrono::steady_clock::now();
      for (const auto& f : inputs) run(f);
      best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
    }
    return best;
  };
  const double serial = time([](const MPoly& f) { return resolve_serial(f); });
  const double parallel = time([](const MPoly& f) { return resolve(f); });
  std::cout << inputs.size() << " inputs, " << nodes << " nodes, " << omp_get_max_threads() << " threads\n"
            << "serial   " << serial * 1e3 << " ms (best of " << repeat << ")\n"
            << "parallel " << parallel * 1e3 << " ms (best of " << repeat << ")\n"
            << "speedup  " << serial / parallel << "\n";
  return 0;
}
