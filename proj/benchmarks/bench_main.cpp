#include <benchmark/benchmark.h>

// The distro ships benchmark_main as an LTO-only archive, so main lives here.
BENCHMARK_MAIN();
