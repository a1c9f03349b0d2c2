// Compares the serial and parallel exhaustive searches on subset-sum
// instances of growing size and checks that they agree bit for bit.
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <string>

#include "nnt/generators.hpp"
#include "nnt/instance_io.hpp"
#include "nnt/reductions.hpp"
#include "nnt/solvers.hpp"
#include "nnt/sources.hpp"

namespace {

double run_ms(const nnt::Instance& inst, bool serial, nnt::SolveResult& out) {
  nnt::SolveOptions opts;
  opts.budget = 1ull << 30;
  opts.serial = serial;
  auto start = std::chrono::steady_clock::now();
  out = serial ? nnt::brute_force_serial(inst, opts)
               : nnt::brute_force(inst, opts);
  auto stop = std::chrono::steady_clock::now();
  return std::chrono::duration<double, std::milli>(stop - start).count();
}

}  // namespace

int main(int argc, char** argv) {
  std::size_t min_n = 12, max_n = 16;
  if (argc > 1) min_n = std::strtoull(argv[1], nullptr, 10);
  if (argc > 2) max_n = std::strtoull(argv[2], nullptr, 10);

  std::printf("%4s %12s %12s %12s %9s %6s\n", "n", "candidates", "serial ms",
              "parallel ms", "speedup", "agree");
  bool all_agree = true;
  for (std::size_t n = min_n; n <= max_n; ++n) {
    nnt::SourceProblem src = nnt::random_subset_sum(1000 + n, n, 50);
    nnt::Instance inst =
        nnt::subset_sum_to_dnnt(std::get<nnt::SubsetSumInstance>(src));

    nnt::SolveResult serial_res, parallel_res;
    double serial_ms = run_ms(inst, true, serial_res);
    double parallel_ms = run_ms(inst, false, parallel_res);

    bool agree = serial_res.decision == parallel_res.decision &&
                 serial_res.loss == parallel_res.loss &&
                 nnt::serialize_assignment(*serial_res.witness, inst) ==
                     nnt::serialize_assignment(*parallel_res.witness, inst);
    all_agree = all_agree && agree;

    std::printf("%4zu %12llu %12.2f %12.2f %8.2fx %6s\n", n,
                static_cast<unsigned long long>(serial_res.stats.candidates),
                serial_ms, parallel_ms,
                parallel_ms > 0 ? serial_ms / parallel_ms : 0.0,
                agree ? "yes" : "NO");
  }
  if (!all_agree) {
    std::fprintf(stderr, "serial and parallel searches disagree\n");
    return 1;
  }
  return 0;
}
