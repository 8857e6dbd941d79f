#pragma once
// Inner loops of the two time steppers. Each kernel has a scalar reference
// implementation and an AVX2 variant; the active one is chosen at runtime
// from CPU support, overridable with CONEDECAY_ISA=scalar|avx2.
//
// All variants evaluate the same expression tree lane by lane, so results are
// bitwise identical across ISAs (the build disables FMA contraction).

#include <cstddef>
#include <span>
#include <string_view>

namespace conedecay::kernels {

enum class Isa { scalar, avx2 };

std::string_view to_string(Isa isa);

/// True when the CPU (and the build) can run the given ISA.
bool isa_available(Isa isa);

/// ISA used by the dispatching entry points below.
Isa active_isa();

/// Force an ISA (tests, benchmarks). Throws if unavailable.
void set_active_isa(Isa isa);

/// Three-point radial leapfrog update on interior nodes 1..N-1:
///   next[j] = (2 cur[j] - prev[j]) + ((upper[j] cur[j+1] + mid cur[j]) + lower[j] cur[j-1])
/// Coefficients already carry the dt^2 factor. Boundary nodes of `next` are untouched.
struct RadialCoefficients {
  std::span<const double> lower;
  std::span<const double> upper;
  double mid;
};

void radial_step(const RadialCoefficients& c, std::span<const double> prev,
                 std::span<const double> cur, std::span<double> next);

/// Per-cell data of the planar flux operator, rows = radial cell index, cols = theta.
/// For cell (i, j) with corners u00=(i,j), u10=(i+1,j), u01=(i,j+1), u11=(i+1,j+1):
///   dr0 = (u10-u00)*inv_dr[i]      dr1 = (u11-u01)*inv_dr[i]
///   dt0 = (u01-u00)*inv_rdt[i]     dt1 = (u11-u10)*inv_rdt[i]
///   Fr0 = krr*dr0 + kx*(dt0+dt1)   Fr1 = krr*dr1 + kx*(dt0+dt1)
///   Ft0 = ktt*dt0 + kx*(dr0+dr1)   Ft1 = ktt*dt1 + kx*(dr0+dr1)
/// and the energy gradient contributions written to g00..g11 of that cell.
struct PlanarCells {
  std::size_t n_rows = 0;   // radial cells
  std::size_t n_theta = 0;  // angular cells (periodic)
  std::span<const double> krr, ktt, kx;          // n_rows * n_theta
  std::span<const double> inv_dr, inv_rdt;       // n_rows
};

struct PlanarScratch {
  std::span<double> g00, g10, g01, g11;  // n_rows * n_theta each
};

/// u has (n_rows + 1) * n_theta node values. Fills the scratch arrays.
void planar_cell_gradients(const PlanarCells& cells, std::span<const double> u,
                           const PlanarScratch& scratch);

/// Gathers node gradients for interior node rows 1..n_rows-1:
///   out[i,j] = -inv_mass[i] * ((g00[i,j] + g10[i-1,j]) + (g01[i,j-1] + g11[i-1,j-1]))
/// Rows 0 and n_rows of `out` are set to zero.
void planar_gather(const PlanarCells& cells, const PlanarScratch& scratch,
                   std::span<const double> inv_mass, std::span<double> out);

/// next[k] = (2 cur[k] - prev[k]) + dt2 * lu[k] over the given range.
void leapfrog_update(std::span<const double> prev, std::span<const double> cur,
                     std::span<const double> lu, double dt2, std::span<double> next);

namespace scalar {
void radial_step(const RadialCoefficients& c, std::span<const double> prev,
                 std::span<const double> cur, std::span<double> next);
void planar_cell_gradients(const PlanarCells& cells, std::span<const double> u,
                           const PlanarScratch& scratch);
void planar_gather(const PlanarCells& cells, const PlanarScratch& scratch,
                   std::span<const double> inv_mass, std::span<double> out);
void leapfrog_update(std::span<const double> prev, std::span<const double> cur,
                     std::span<const double> lu, double dt2, std::span<double> next);
}  // namespace scalar

namespace avx2 {
bool compiled();
void radial_step(const RadialCoefficients& c, std::span<const double> prev,
                 std::span<const double> cur, std::span<double> next);
void planar_cell_gradients(const PlanarCells& cells, std::span<const double> u,
                           const PlanarScratch& scratch);
void planar_gather(const PlanarCells& cells, const PlanarScratch& scratch,
                   std::span<const double> inv_mass, std::span<double> out);
void leapfrog_update(std::span<const double> prev, std::span<const double> cur,
                     std::span<const double> lu, double dt2, std::span<double> next);
}  // namespace avx2

}  // namespace conedecay::kernels
