#pragma once

#include <algorithm>
#include <cstddef>
#include <iterator>
#include <utility>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace wsato {

// Execution mode for the embarrassingly parallel checker loops. Serial is
// the reference implementation; the OpenMP path must produce identical
// results (tests compare them, the bench tool times them).
enum class ExecMode { serial, openmp };

ExecMode default_exec_mode();
void set_default_exec_mode(ExecMode m);

// Runs fn(t, out) for t in [0, n); collects the outputs for which fn
// returned true, in index order, so both modes agree bit for bit.
template <typename Out, typename Fn>
std::vector<Out> run_indexed(std::size_t n, ExecMode mode, Fn&& fn) {
  std::vector<Out> results;
  if (mode == ExecMode::serial) {
    for (std::size_t t = 0; t < n; ++t) {
      Out out{};
      if (fn(t, out)) results.push_back(std::move(out));
    }
    return results;
  }
  std::vector<std::pair<std::size_t, Out>> hits;
#ifdef _OPENMP
#pragma omp parallel
  {
    std::vector<std::pair<std::size_t, Out>> local;
#pragma omp for schedule(dynamic, 4) nowait
    for (long long t = 0; t < static_cast<long long>(n); ++t) {
      Out out{};
      if (fn(static_cast<std::size_t>(t), out))
        local.emplace_back(static_cast<std::size_t>(t), std::move(out));
    }
#pragma omp critical
    hits.insert(hits.end(), std::make_move_iterator(local.begin()),
                std::make_move_iterator(local.end()));
  }
#else
  for (std::size_t t = 0; t < n; ++t) {
    Out out{};
    if (fn(t, out)) hits.emplace_back(t, std::move(out));
  }
#endif
  std::sort(hits.begin(), hits.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  for (auto& h : hits) results.push_back(std::move(h.second));
  return results;
}

}  // namespace wsato
