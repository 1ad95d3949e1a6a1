#pragma once

#include <functional>
#include <string>

namespace hopcorr {

// All numeric output uses 17 significant digits so reruns are byte-identical.
std::string fmt17(double x);

std::string json_escape(const std::string& s);

// "null" for non-finite values (JSON has no inf/nan).
std::string json_number(double x);

// Write-to-temp-then-rename so partially written files are never observed.
void write_file_atomic(const std::string& path, const std::string& content);

std::string read_file(const std::string& path);

// min(hardware_concurrency, HOPCORR_THREADS) with HOPCORR_THREADS optional.
int thread_budget();

// Runs fn(0..n-1) on up to `threads` workers (0 = thread_budget()). Results
// must be written to per-index slots; scheduling order is unspecified.
void parallel_for(int n, const std::function<void(int)>& fn, int threads = 0);

}  // namespace hopcorr
