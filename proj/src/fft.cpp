#include "rwns/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <tuple>

namespace rwns {
namespace fft {

namespace {

// Plans are created with FFTW_UNALIGNED so fftw_execute_dft may run on any
// caller buffer; creation is serialized, execution is thread-safe.
class PlanCache {
public:
    static PlanCache& instance() {
        static PlanCache cache;
        return cache;
    }

    fftw_plan get(int dim, int n, std::size_t len, int sign) {
        std::lock_guard<std::mutex> lock(mutex_);
        const Key key{dim, n, len, sign};
        auto it = plans_.find(key);
        if (it != plans_.end()) return it->second;

        std::vector<cplx> scratch(len);
        auto* buf = reinterpret_cast<fftw_complex*>(scratch.data());
        const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
        fftw_plan plan = nullptr;
        if (dim == 1) {
            plan = fftw_plan_dft_1d(static_cast<int>(len), buf, buf, sign, flags);
        } else {
            plan = fftw_plan_dft_2d(n, n, buf, buf, sign, flags);
        }
        plans_.emplace(key, plan);
        return plan;
    }

private:
    using Key = std::tuple<int, int, std::size_t, int>;
    std::mutex mutex_;
    std::map<Key, fftw_plan> plans_;
};

void execute(const PeriodicGrid& grid, const std::vector<cplx>& in, std::vector<cplx>& out,
             int sign) {
    out.resize(in.size());
    fftw_plan plan = PlanCache::instance().get(grid.dim(), grid.n(), grid.size(), sign);
    fftw_execute_dft(plan,
                     reinterpret_cast<fftw_complex*>(const_cast<cplx*>(in.data())),
                     reinterpret_cast<fftw_complex*>(out.data()));
}

std::vector<cplx> execute_1d(const std::vector<cplx>& in, int sign) {
    std::vector<cplx> out(in.size());
    fftw_plan plan = PlanCache::instance().get(1, static_cast<int>(in.size()), in.size(), sign);
    fftw_execute_dft(plan,
                     reinterpret_cast<fftw_complex*>(const_cast<cplx*>(in.data())),
                     reinterpret_cast<fftw_complex*>(out.data()));
    return out;
}

} // namespace

void forward(const PeriodicGrid& grid, const std::vector<cplx>& in, std::vector<cplx>& out) {
    execute(grid, in, out, FFTW_FORWARD);
}

void inverse(const PeriodicGrid& grid, const std::vector<cplx>& in, std::vector<cplx>& out) {
    execute(grid, in, out, FFTW_BACKWARD);
}

std::vector<cplx> forward_1d(const std::vector<cplx>& in) { return execute_1d(in, FFTW_FORWARD); }

std::vector<cplx> inverse_1d(const std::vector<cplx>& in) { return execute_1d(in, FFTW_BACKWARD); }

} // namespace fft

std::vector<cplx> to_spectrum(const PeriodicGrid& grid, const std::vector<cplx>& values) {
    std::vector<cplx> out;
    fft::forward(grid, values, out);
    const double scale = grid.cell_volume();
    for (cplx& v : out) v *= scale;
    return out;
}

std::vector<cplx> to_spectrum(const PeriodicGrid& grid, const std::vector<double>& values) {
    std::vector<cplx> tmp(values.begin(), values.end());
    return to_spectrum(grid, tmp);
}

std::vector<cplx> to_spectrum(const ComplexField& psi) {
    return to_spectrum(psi.grid(), psi.values());
}

std::vector<cplx> from_spectrum(const PeriodicGrid& grid, const std::vector<cplx>& spectrum) {
    std::vector<cplx> out;
    fft::inverse(grid, spectrum, out);
    double volume = 1.0;
    for (int d = 0; d < grid.dim(); ++d) volume *= grid.length();
    const double scale = 1.0 / volume;
    for (cplx& v : out) v *= scale;
    return out;
}

} // namespace rwns
