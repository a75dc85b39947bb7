#include "fft.hpp"

#include <fftw3.h>

#include <map>
#include <memory>
#include <mutex>
#include <tuple>
#include <utility>

#include "ofdmclip/error.hpp"

namespace ofdmclip::detail {

namespace {

struct PlanDeleter {
    void operator()(fftw_plan_s* p) const { fftw_destroy_plan(p); }
};
using Plan = std::unique_ptr<fftw_plan_s, PlanDeleter>;

// FFTW's planner is not re-entrant; execution with the new-array interface is.
std::mutex planner_mutex;

fftw_plan plan_for(std::size_t n, int sign, bool in_place) {
    static std::map<std::tuple<std::size_t, int, bool>, Plan> plans;
    std::scoped_lock lock(planner_mutex);
    auto key = std::make_tuple(n, sign, in_place);
    auto it = plans.find(key);
    if (it == plans.end()) {
        auto* a = fftw_alloc_complex(n);
        auto* b = in_place ? a : fftw_alloc_complex(n);
        Plan p(fftw_plan_dft_1d(static_cast<int>(n), a, b, sign,
                                FFTW_ESTIMATE | FFTW_UNALIGNED));
        fftw_free(a);
        if (!in_place) fftw_free(b);
        it = plans.emplace(key, std::move(p)).first;
    }
    return it->second.get();
}

void run(std::span<const Complex> in, std::span<Complex> out, int sign) {
    if (in.size() != out.size()) {
        throw InputShapeError("fft: input and output lengths differ");
    }
    if (in.empty()) return;
    const bool in_place = in.data() == out.data();
    auto* plan = plan_for(in.size(), sign, in_place);
    // fftw takes a non-const input pointer but does not write to it out of place.
    auto* src = reinterpret_cast<fftw_complex*>(const_cast<Complex*>(in.data()));
    auto* dst = reinterpret_cast<fftw_complex*>(out.data());
    fftw_execute_dft(plan, src, dst);
}

}  // namespace

void fft_forward(std::span<const Complex> in, std::span<Complex> out) { run(in, out, FFTW_FORWARD); }

void fft_inverse(std::span<const Complex> in, std::span<Complex> out) { run(in, out, FFTW_BACKWARD); }

}  // namespace ofdmclip::detail
