#ifndef CORRBOUND_UTIL_HPP
#define CORRBOUND_UTIL_HPP

#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace corrbound {

// SplitMix64 (Vigna's public-domain mixer). Fixed algorithm so that seeded
// runs reproduce bit-for-bit on every platform; std:: distributions are
// implementation-defined and must not be used for anything persisted.
class SplitMix64 {
  public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // Uniform double in [0, 1) from the top 53 bits.
    double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  private:
    std::uint64_t state_;
};

// Derives an independent stream seed from (seed, index). Used to give every
// Monte Carlo sample its own generator, which makes results independent of
// the worker count.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
    SplitMix64 g(seed ^ (0x9E3779B97F4A7C15ULL * (index + 1)));
    g.next();
    return g.next();
}

// Runs fn(i) for i in [0, count) on up to `workers` threads. Callers must
// write results into per-index slots; the scheduling order is unspecified.
// The first exception thrown by any fn is rethrown on the calling thread.
template <typename F>
void parallel_for(std::size_t count, unsigned workers, F&& fn) {
    if (workers <= 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    if (workers > count) workers = static_cast<unsigned>(count);
    std::atomic<std::size_t> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    std::vector<std::thread> threads;
    threads.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        threads.emplace_back([&] {
            for (;;) {
                std::size_t i = next.fetch_add(1);
                if (i >= count) return;
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!first_error) first_error = std::current_exception();
                    return;
                }
            }
        });
    }
    for (auto& t : threads) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

// Kahan compensated accumulator.
class KahanSum {
  public:
    void add(double x) {
        double y = x - comp_;
        double t = sum_ + y;
        comp_ = (t - sum_) - y;
        sum_ = t;
    }
    double value() const { return sum_; }

  private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

}  // namespace corrbound

#endif
