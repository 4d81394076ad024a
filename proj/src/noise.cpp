#include "lpl/noise.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>

namespace lpl::noise {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t key_hash(std::uint64_t seed, std::uint64_t stream, std::uint64_t component,
                       std::uint64_t step, std::uint64_t sub) {
  std::uint64_t h = splitmix64(seed);
  h = splitmix64(h ^ stream);
  h = splitmix64(h ^ component);
  h = splitmix64(h ^ step);
  h = splitmix64(h ^ sub);
  return h;
}

double to_unit(std::uint64_t h) {
  // (0, 1), strictly: 53-bit mantissa shifted off zero
  return (static_cast<double>(h >> 11) + 0.5) * 0x1.0p-53;
}

}  // namespace

double uniform_draw(std::uint64_t seed, std::uint64_t stream, std::uint64_t component,
                    std::uint64_t step, std::uint64_t draw) {
  return to_unit(key_hash(seed, stream, component, step, draw));
}

double normal_draw(std::uint64_t seed, std::uint64_t stream, std::uint64_t component,
                   std::uint64_t step, std::uint64_t draw) {
  double u1 = uniform_draw(seed, stream, component, step, 2 * draw);
  double u2 = uniform_draw(seed, stream, component, step, 2 * draw + 1);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

DrivingPath brownian_path(int n_components, double t0, double t1, int n_steps,
                          std::uint64_t seed, std::uint64_t stream) {
  if (n_steps < 1) throw InputError("brownian_path: n_steps must be >= 1");
  if (!(t1 > t0)) throw InputError("brownian_path: t1 must exceed t0");
  if (n_components < 0) throw InputError("brownian_path: negative component count");

  DrivingPath p;
  p.seed = seed;
  p.stream = stream;
  double dt = (t1 - t0) / n_steps;
  p.times.resize(n_steps + 1);
  for (int n = 0; n <= n_steps; ++n) p.times[n] = t0 + n * dt;
  p.times[n_steps] = t1;

  p.increments.resize(n_components + 1);
  p.qv_increments.resize(n_components + 1);
  p.increments[0].assign(n_steps, dt);
  p.qv_increments[0].assign(n_steps, 0.0);
  double sq = std::sqrt(dt);
  for (int i = 1; i <= n_components; ++i) {
    p.increments[i].resize(n_steps);
    p.qv_increments[i].assign(n_steps, dt);
    for (int n = 0; n < n_steps; ++n)
      p.increments[i][n] = sq * normal_draw(seed, stream, static_cast<std::uint64_t>(i),
                                            static_cast<std::uint64_t>(n), 0);
  }
  return p;
}

DrivingPath refine(const DrivingPath& path) {
  if (!path.brownian)
    throw InputError("refine: only clock + Brownian components can be refined");
  int n = path.n_steps();
  int nc = path.n_components();
  DrivingPath r;
  r.seed = path.seed;
  r.stream = path.stream;
  r.level = path.level + 1;
  r.times.resize(2 * n + 1);
  for (int k = 0; k < n; ++k) {
    r.times[2 * k] = path.times[k];
    r.times[2 * k + 1] = 0.5 * (path.times[k] + path.times[k + 1]);
  }
  r.times[2 * n] = path.times[n];

  r.increments.resize(nc);
  r.qv_increments.resize(nc);
  r.increments[0].resize(2 * n);
  for (int k = 0; k < n; ++k) {
    double half = 0.5 * (path.times[k + 1] - path.times[k]);
    r.increments[0][2 * k] = half;
    r.increments[0][2 * k + 1] = half;
  }
  r.qv_increments[0].assign(2 * n, 0.0);
  for (int i = 1; i < nc; ++i) {
    r.increments[i].resize(2 * n);
    r.qv_increments[i].resize(2 * n);
    for (int k = 0; k < n; ++k) {
      double dt = path.times[k + 1] - path.times[k];
      // Brownian bridge: midpoint deviation ~ N(0, dt/4), keyed by the
      // refinement level and parent interval index so any level is
      // reproducible in isolation.
      double xi = 0.5 * std::sqrt(dt) *
                  normal_draw(path.seed, path.stream, static_cast<std::uint64_t>(i),
                              static_cast<std::uint64_t>(k),
                              static_cast<std::uint64_t>(path.level) + 1);
      double parent = path.increments[i][k];
      r.increments[i][2 * k] = 0.5 * parent + xi;
      r.increments[i][2 * k + 1] = 0.5 * parent - xi;
      r.qv_increments[i][2 * k] = 0.5 * dt;
      r.qv_increments[i][2 * k + 1] = 0.5 * dt;
    }
  }
  return r;
}

void save_path_csv(const DrivingPath& path, const std::string& filename) {
  std::ofstream out(filename);
  if (!out) throw InputError("save_path_csv: cannot open " + filename);
  out << "t";
  for (int i = 1; i < path.n_components(); ++i) out << ",S" << i;
  out << "\n";
  std::vector<double> level(path.n_components(), 0.0);
  char buf[32];
  auto put = [&](double v) {
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    out << buf;
  };
  for (int n = 0; n <= path.n_steps(); ++n) {
    put(path.times[n]);
    for (int i = 1; i < path.n_components(); ++i) {
      out << ",";
      put(level[i]);
      if (n < path.n_steps()) level[i] += path.increments[i][n];
    }
    out << "\n";
  }
}

DrivingPath load_path_csv(const std::string& filename) {
  std::ifstream in(filename);
  if (!in) throw InputError("load_path_csv: cannot open " + filename);
  std::string line;
  if (!std::getline(in, line)) throw InputError("load_path_csv: empty file");
  int ncols = 1;
  for (char c : line)
    if (c == ',') ++ncols;

  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) row.push_back(std::stod(cell));
    if (static_cast<int>(row.size()) != ncols)
      throw InputError("load_path_csv: ragged row in " + filename);
    rows.push_back(std::move(row));
  }
  if (rows.size() < 2) throw InputError("load_path_csv: need at least two rows");

  DrivingPath p;
  p.brownian = false;
  int n = static_cast<int>(rows.size()) - 1;
  p.times.resize(n + 1);
  for (int k = 0; k <= n; ++k) p.times[k] = rows[k][0];
  for (int k = 0; k < n; ++k)
    if (!(p.times[k + 1] > p.times[k]))
      throw InputError("load_path_csv: times not strictly increasing");
  p.increments.resize(ncols);
  p.qv_increments.resize(ncols);
  for (int k = 0; k < n; ++k) {
    double dt = p.times[k + 1] - p.times[k];
    p.increments[0].push_back(dt);
    p.qv_increments[0].push_back(0.0);
    for (int i = 1; i < ncols; ++i) {
      p.increments[i].push_back(rows[k + 1][i] - rows[k][i]);
      p.qv_increments[i].push_back(dt);
    }
  }
  return p;
}

}  // namespace lpl::noise
