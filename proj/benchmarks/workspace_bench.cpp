#include <benchmark/benchmark.h>

#include <fstream>
#include <sstream>

#include "tightsigma/cli/workspace.hpp"

using namespace tightsigma;

namespace {

std::string read(const std::string& name) {
  std::ifstream in(std::string(TIGHTSIGMA_SOURCE_DIR) + "/docs/specs/" + name);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void BM_ParseWorkspace(benchmark::State& state) {
  const std::string text = read("families.json");
  for (auto _ : state) {
    benchmark::DoNotOptimize(cli::parse_workspace(text));
  }
}
BENCHMARK(BM_ParseWorkspace);

void BM_EmitBuiltFiltration(benchmark::State& state) {
  RandomFiltrationOptions opt;
  opt.length = static_cast<std::size_t>(state.range(0));
  opt.seed = 9;
  cli::Workspace ws;
  ws.filtrations["f"] = cli::describe(build_random_filtration(opt).filtration);
  for (auto _ : state) {
    benchmark::DoNotOptimize(cli::emit_workspace(ws));
  }
}
BENCHMARK(BM_EmitBuiltFiltration)->Arg(4)->Arg(8);

} // namespace

BENCHMARK_MAIN();
