#pragma once

#include <fftw3.h>

#include <complex>
#include <cstddef>
#include <mutex>
#include <new>
#include <vector>

namespace qgroove {

namespace detail {

// FFTW's planner is not thread-safe; plan creation/destruction is serialized.
// Executing distinct plans on distinct arrays is safe concurrently.
inline std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

}  // namespace detail

/// Allocator that hands out FFTW-aligned memory so plans can use SIMD paths
/// and stay byte-for-byte reproducible across runs.
template <class T>
struct FftwAllocator {
  using value_type = T;
  FftwAllocator() = default;
  template <class U>
  FftwAllocator(const FftwAllocator<U>&) {}
  T* allocate(std::size_t n) {
    void* p = fftw_malloc(n * sizeof(T));
    if (!p) throw std::bad_alloc();
    return static_cast<T*>(p);
  }
  void deallocate(T* p, std::size_t) { fftw_free(p); }
  bool operator==(const FftwAllocator&) const { return true; }
  bool operator!=(const FftwAllocator&) const { return false; }
};

using ComplexArray = std::vector<std::complex<double>, FftwAllocator<std::complex<double>>>;

/// In-place c2c transform pair bound to one array. FFTW_ESTIMATE keeps plan
/// selection deterministic for a given shape and alignment.
class SpectralTransform {
 public:
  SpectralTransform(std::complex<double>* data, int n0)
      : SpectralTransform(data, n0, 0) {}

  SpectralTransform(std::complex<double>* data, int n0, int n1) {
    auto* p = reinterpret_cast<fftw_complex*>(data);
    std::lock_guard<std::mutex> lock(detail::planner_mutex());
    if (n1 > 0) {
      fwd_ = fftw_plan_dft_2d(n0, n1, p, p, FFTW_FORWARD, FFTW_ESTIMATE);
      bwd_ = fftw_plan_dft_2d(n0, n1, p, p, FFTW_BACKWARD, FFTW_ESTIMATE);
    } else {
      fwd_ = fftw_plan_dft_1d(n0, p, p, FFTW_FORWARD, FFTW_ESTIMATE);
      bwd_ = fftw_plan_dft_1d(n0, p, p, FFTW_BACKWARD, FFTW_ESTIMATE);
    }
  }

  ~SpectralTransform() {
    std::lock_guard<std::mutex> lock(detail::planner_mutex());
    fftw_destroy_plan(fwd_);
    fftw_destroy_plan(bwd_);
  }

  SpectralTransform(const SpectralTransform&) = delete;
  SpectralTransform& operator=(const SpectralTransform&) = delete;

  void forward() const { fftw_execute(fwd_); }   // unnormalized
  void backward() const { fftw_execute(bwd_); }  // unnormalized (scale by 1/N)

 private:
  fftw_plan fwd_;
  fftw_plan bwd_;
};

}  // namespace qgroove
