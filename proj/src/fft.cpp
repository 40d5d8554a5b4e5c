#include "fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <vector>

#include "qfall/kernels.hpp"

namespace qfall::detail {
namespace {

struct PlanPair {
    fftw_plan forward = nullptr;
    fftw_plan backward = nullptr;
};

// Planning is not thread-safe in FFTW; execution with new-array execute is.
// Plans are created once per size and live for the process lifetime.
const PlanPair& plans_for(std::size_t n)
{
    static std::mutex mutex;
    static std::map<std::size_t, PlanPair> cache;

    std::lock_guard lock(mutex);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;

    std::vector<std::complex<double>> scratch(n);
    auto* buf = reinterpret_cast<fftw_complex*>(scratch.data());
    const int size = static_cast<int>(n);
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    PlanPair p;
    p.forward = fftw_plan_dft_1d(size, buf, buf, FFTW_FORWARD, flags);
    p.backward = fftw_plan_dft_1d(size, buf, buf, FFTW_BACKWARD, flags);
    return cache.emplace(n, p).first->second;
}

} // namespace

void fft_forward(std::span<std::complex<double>> data)
{
    auto* buf = reinterpret_cast<fftw_complex*>(data.data());
    fftw_execute_dft(plans_for(data.size()).forward, buf, buf);
}

void fft_inverse(std::span<std::complex<double>> data)
{
    auto* buf = reinterpret_cast<fftw_complex*>(data.data());
    fftw_execute_dft(plans_for(data.size()).backward, buf, buf);
    kernels::scale(data, 1.0 / static_cast<double>(data.size()));
}

} // namespace qfall::detail
