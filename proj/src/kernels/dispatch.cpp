#include <atomic>
#include <cstdlib>
#include <string>

#include "conedecay/error.hpp"
#include "conedecay/kernels.hpp"

namespace conedecay::kernels {

namespace {

bool cpu_has_avx2() {
#if defined(__x86_64__) || defined(__i386__)
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

Isa detect() {
  if (const char* env = std::getenv("CONEDECAY_ISA")) {
    const std::string want(env);
    if (want == "scalar") return Isa::scalar;
    if (want == "avx2" && isa_available(Isa::avx2)) return Isa::avx2;
  }
  return isa_available(Isa::avx2) ? Isa::avx2 : Isa::scalar;
}

std::atomic<Isa>& active() {
  static std::atomic<Isa> isa{detect()};
  return isa;
}

}  // namespace

std::string_view to_string(Isa isa) { return isa == Isa::avx2 ? "avx2" : "scalar"; }

bool isa_available(Isa isa) {
  if (isa == Isa::scalar) return true;
  return avx2::compiled() && cpu_has_avx2();
}

Isa active_isa() { return active().load(std::memory_order_relaxed); }

void set_active_isa(Isa isa) {
  if (!isa_available(isa)) throw Error("ISA not available: " + std::string(to_string(isa)));
  active().store(isa, std::memory_order_relaxed);
}

void radial_step(const RadialCoefficients& c, std::span<const double> prev,
                 std::span<const double> cur, std::span<double> next) {
  if (active_isa() == Isa::avx2) return avx2::radial_step(c, prev, cur, next);
  scalar::radial_step(c, prev, cur, next);
}

void planar_cell_gradients(const PlanarCells& cells, std::span<const double> u,
                           const PlanarScratch& scratch) {
  if (active_isa() == Isa::avx2) return avx2::planar_cell_gradients(cells, u, scratch);
  scalar::planar_cell_gradients(cells, u, scratch);
}

void planar_gather(const PlanarCells& cells, const PlanarScratch& scratch,
                   std::span<const double> inv_mass, std::span<double> out) {
  if (active_isa() == Isa::avx2) return avx2::planar_gather(cells, scratch, inv_mass, out);
  scalar::planar_gather(cells, scratch, inv_mass, out);
}

void leapfrog_update(std::span<const double> prev, std::span<const double> cur,
                     std::span<const double> lu, double dt2, std::span<double> next) {
  if (active_isa() == Isa::avx2) return avx2::leapfrog_update(prev, cur, lu, dt2, next);
  scalar::leapfrog_update(prev, cur, lu, dt2, next);
}

}  // namespace conedecay::kernels
