#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>

namespace vb {

// Error codes used across the library. Names follow the operation contracts.
enum class Err {
  InvalidArgument,
  MemoryBudget,
  NoPath,
  EmptyMask,
  ConnectivityFailed,
  GenerationFailed,
  LevelTooDeep,
  EmptySet,
  DegenerateMeasure,
  EmptyCandidates,
  SeedNotAdmissible,
  NoBoundaryTouching,
  DepthUnresolvable,
  EtaTooLarge,
  NoCompleteBranch,
  NotInCollection,
  BrokenAncestry,
  PathLeavesDomain,
  Unsupported3D,
  IoError,
  ConfigError,
};

class Error : public std::runtime_error {
 public:
  Error(Err code, const std::string& msg) : std::runtime_error(msg), code_(code) {}
  Err code() const { return code_; }

 private:
  Err code_;
};

[[noreturn]] inline void fail(Err code, const std::string& msg) { throw Error(code, msg); }

// All metric comparisons carry this slack (in units of the cell size h):
// distances are exact rationals times h in principle but live in doubles.
inline constexpr double kCompareSlack = 1e-6;

inline bool approx_le(double a, double b, double h) { return a <= b + kCompareSlack * h; }
inline bool approx_ge(double a, double b, double h) { return a >= b - kCompareSlack * h; }
inline bool approx_lt(double a, double b, double h) { return a < b - kCompareSlack * h; }

// Compensated (Kahan) accumulator for measure totals and arclengths.
struct KahanSum {
  double sum = 0.0;
  double carry = 0.0;
  void add(double x) {
    double y = x - carry;
    double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
  double value() const { return sum; }
};

int worker_count();  // VB_WORKERS override, else hardware concurrency

// Runs fn(i) for i in [0, n) on worker_count() threads (or `workers` if > 0).
// fn must be safe to run concurrently for distinct i.
void parallel_for(int64_t n, const std::function<void(int64_t)>& fn, int workers = 0);

}  // namespace vb
