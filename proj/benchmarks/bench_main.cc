#include <benchmark/benchmark.h>

// Local entry point: the distro's libbenchmark_main.a ships LTO bytecode
// that newer toolchains refuse to link, so we provide main() ourselves.
int main(int argc, char** argv) {
  benchmark::Initialize(&argc, argv);
  if (benchmark::ReportUnrecognizedArguments(argc, argv)) return 1;
  benchmark::RunSpecifiedBenchmarks();
  benchmark::Shutdown();
  return 0;
}
