#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "lpl/algebra.hpp"

namespace lpl::noise {

using algebra::InputError;

/// Counter-based normal generator: every draw is a pure function of its key,
/// so any increment of any path is reproducible in isolation and ensembles
/// are schedule-independent.
double normal_draw(std::uint64_t seed, std::uint64_t stream, std::uint64_t component,
                   std::uint64_t step, std::uint64_t draw);
/// Uniform on (0,1), same keying.
double uniform_draw(std::uint64_t seed, std::uint64_t stream, std::uint64_t component,
                    std::uint64_t step, std::uint64_t draw);

/// Discretized driving path S = (t, S^1, ..., S^M): a strictly increasing time
/// grid with per-component increments and quadratic-variation increments.
/// Component 0 is the deterministic clock (dS^0 = dt, d[S^0] = 0); components
/// i >= 1 are Brownian by default (d[S^i] = dt).
struct DrivingPath {
  std::vector<double> times;                          // size n_steps + 1
  std::vector<std::vector<double>> increments;        // [component][step]
  std::vector<std::vector<double>> qv_increments;     // [component][step]
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;   // trajectory id within an ensemble
  int level = 0;              // number of bridge refinements applied
  bool brownian = true;       // false for paths imported from file

  int n_steps() const { return static_cast<int>(times.size()) - 1; }
  int n_components() const { return static_cast<int>(increments.size()); }
};

/// Uniform-grid Brownian path with n_components noise components plus the
/// clock (component 0).  Increment (i, n) depends only on
/// (seed, stream, i, n), never on other increments.
DrivingPath brownian_path(int n_components, double t0, double t1, int n_steps,
                          std::uint64_t seed, std::uint64_t stream = 0);

/// Halve every interval, drawing midpoints by Brownian-bridge conditioning:
/// the refined path's coarse increments equal the original's exactly
/// (left + right == parent by construction).
DrivingPath refine(const DrivingPath& path);

/// CSV import/export of path levels (columns t, S1..SM); increments are
/// recomputed on load.  Imported paths cannot be refined.
void save_path_csv(const DrivingPath& path, const std::string& filename);
DrivingPath load_path_csv(const std::string& filename);

}  // namespace lpl::noise
