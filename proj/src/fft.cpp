#include "ridgelab/fft.hpp"

#include <fftw3.h>

#include <cstring>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <utility>

namespace ridgelab::fft {

namespace {

struct FftwFree {
    void operator()(void* p) const { fftw_free(p); }
};
using Buffer = std::unique_ptr<fftw_complex[], FftwFree>;

Buffer make_buffer(std::size_t n) {
    return Buffer(static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * n)));
}

// FFTW planning is not thread-safe; execution with the new-array interface is.
// Plans are made once per (size, direction) and shared.
class PlanCache {
public:
    ~PlanCache() {
        for (auto& [key, plan] : plans_) {
            fftw_destroy_plan(plan);
        }
    }

    fftw_plan get(std::size_t n, int sign) {
        std::lock_guard lock(mutex_);
        auto key = std::make_pair(n, sign);
        if (auto it = plans_.find(key); it != plans_.end()) {
            return it->second;
        }
        Buffer in = make_buffer(n);
        Buffer out = make_buffer(n);
        fftw_plan plan = fftw_plan_dft_1d(static_cast<int>(n), in.get(), out.get(), sign,
                                          FFTW_ESTIMATE | FFTW_UNALIGNED);
        plans_.emplace(key, plan);
        return plan;
    }

private:
    std::mutex mutex_;
    std::map<std::pair<std::size_t, int>, fftw_plan> plans_;
};

PlanCache& cache() {
    static PlanCache instance;
    return instance;
}

std::vector<cdouble> transform(std::span<const cdouble> x, int sign) {
    const std::size_t n = x.size();
    if (n == 0) {
        return {};
    }
    Buffer in = make_buffer(n);
    Buffer out = make_buffer(n);
    static_assert(sizeof(cdouble) == sizeof(fftw_complex));
    std::memcpy(in.get(), x.data(), n * sizeof(fftw_complex));
    fftw_execute_dft(cache().get(n, sign), in.get(), out.get());
    std::vector<cdouble> result(n);
    std::memcpy(static_cast<void*>(result.data()), out.get(), n * sizeof(fftw_complex));
    return result;
}

}  // namespace

std::vector<cdouble> forward(std::span<const cdouble> x) { return transform(x, FFTW_FORWARD); }

std::vector<cdouble> forward_real(std::span<const double> x) {
    std::vector<cdouble> z(x.begin(), x.end());
    return forward(z);
}

std::vector<cdouble> inverse(std::span<const cdouble> spectrum) {
    return transform(spectrum, FFTW_BACKWARD);
}

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

std::size_t next_power_of_two(std::size_t n) {
    std::size_t m = 1;
    while (m < n) {
        m <<= 1;
    }
    return m;
}

double bin_frequency(std::size_t k, std::size_t n, double dt) {
    const double base = 2.0 * std::numbers::pi / (static_cast<double>(n) * dt);
    if (2 * k <= n) {
        return base * static_cast<double>(k);
    }
    return -base * static_cast<double>(n - k);
}

}  // namespace ridgelab::fft
