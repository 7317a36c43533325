#pragma once

#include <complex>
#include <mutex>
#include <vector>

#include "fkwave/grid.hpp"

namespace fkwave {

// Real FFT pair for one transform size. Plans are created lazily under a
// global lock and execution is serialized per instance; use one instance per
// thread for concurrent solves.
class RealFFT {
public:
    explicit RealFFT(int n);
    ~RealFFT();
    RealFFT(const RealFFT&) = delete;
    RealFFT& operator=(const RealFFT&) = delete;

    int size() const noexcept { return n_; }
    // forward: n reals -> n/2+1 complex bins (unnormalized)
    std::vector<std::complex<double>> forward(const std::vector<double>& in) const;
    // inverse: n/2+1 bins -> n reals, normalized by 1/n
    std::vector<double> inverse(const std::vector<std::complex<double>>& bins) const;

private:
    int n_;
    void* plan_fwd_;
    void* plan_inv_;
    double* buf_real_;
    void* buf_cplx_;
    mutable std::mutex mtx_;
};

// Shared per-grid transform, guarded internally.
const RealFFT& fft_for(const Grid& g);

// Spectral helpers on gridded data (periodic).
std::vector<double> spectral_derivative(const std::vector<double>& v, const Grid& g, int order);

} // namespace fkwave
