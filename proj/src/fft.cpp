#include "fkwave/fft.hpp"

#include <fftw3.h>

#include <cstring>
#include <map>
#include <memory>

namespace fkwave {

namespace {
std::mutex planner_mutex; // FFTW planning is not thread-safe
}

RealFFT::RealFFT(int n) : n_(n) {
    std::lock_guard lock(planner_mutex);
    buf_real_ = fftw_alloc_real(n);
    buf_cplx_ = fftw_alloc_complex(n / 2 + 1);
    plan_fwd_ = fftw_plan_dft_r2c_1d(n, buf_real_, static_cast<fftw_complex*>(buf_cplx_), FFTW_ESTIMATE);
    plan_inv_ = fftw_plan_dft_c2r_1d(n, static_cast<fftw_complex*>(buf_cplx_), buf_real_, FFTW_ESTIMATE);
}

RealFFT::~RealFFT() {
    std::lock_guard lock(planner_mutex);
    fftw_destroy_plan(static_cast<fftw_plan>(plan_fwd_));
    fftw_destroy_plan(static_cast<fftw_plan>(plan_inv_));
    fftw_free(buf_real_);
    fftw_free(buf_cplx_);
}

std::vector<std::complex<double>> RealFFT::forward(const std::vector<double>& in) const {
    std::lock_guard lock(mtx_);
    std::memcpy(buf_real_, in.data(), n_ * sizeof(double));
    fftw_execute(static_cast<fftw_plan>(plan_fwd_));
    std::vector<std::complex<double>> out(n_ / 2 + 1);
    std::memcpy(out.data(), buf_cplx_, (n_ / 2 + 1) * sizeof(fftw_complex));
    return out;
}

std::vector<double> RealFFT::inverse(const std::vector<std::complex<double>>& bins) const {
    std::lock_guard lock(mtx_);
    std::memcpy(buf_cplx_, bins.data(), (n_ / 2 + 1) * sizeof(fftw_complex));
    fftw_execute(static_cast<fftw_plan>(plan_inv_));
    std::vector<double> out(n_);
    const double scale = 1.0 / n_;
    for (int i = 0; i < n_; ++i) out[i] = buf_real_[i] * scale;
    return out;
}

const RealFFT& fft_for(const Grid& g) {
    static std::mutex cache_mutex;
    static std::map<int, std::unique_ptr<RealFFT>> cache;
    std::lock_guard lock(cache_mutex);
    auto& slot = cache[g.n()];
    if (!slot) slot = std::make_unique<RealFFT>(g.n());
    return *slot;
}

std::vector<double> spectral_derivative(const std::vector<double>& v, const Grid& g, int order) {
    const auto& fft = fft_for(g);
    auto bins = fft.forward(v);
    const int nb = static_cast<int>(bins.size());
    for (int j = 0; j < nb; ++j) {
        const double k = g.wavenumber(j);
        std::complex<double> f;
        switch (order) {
            case 1: f = std::complex<double>(0.0, k); break;
            case 2: f = std::complex<double>(-k * k, 0.0); break;
            default: throw InvalidParams("spectral_derivative: order must be 1 or 2");
        }
        bins[j] *= f;
    }
    // odd derivative of a real field: the Nyquist bin has no usable sign
    if (order % 2 == 1) bins[nb - 1] = 0.0;
    return fft.inverse(bins);
}

} // namespace fkwave
