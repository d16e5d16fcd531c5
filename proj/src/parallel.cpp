#include "netgeom/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <thread>
#include <vector>

namespace netgeom::exec {

namespace {
std::atomic<int> g_threads{0};

int resolve_auto() {
    if (const char* env = std::getenv("NETGEOM_THREADS")) {
        int v = std::atoi(env);
        if (v > 0) return v;
    }
    unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1 : static_cast<int>(hc);
}
} // namespace

void set_thread_count(int threads) { g_threads.store(threads < 0 ? 0 : threads); }

int thread_count() {
    int t = g_threads.load();
    return t > 0 ? t : resolve_auto();
}

void parallel_for(std::int64_t count, const std::function<void(std::int64_t, std::int64_t)>& fn) {
    if (count <= 0) return;
    std::int64_t workers = std::min<std::int64_t>(thread_count(), count);
    if (workers <= 1) {
        fn(0, count);
        return;
    }
    std::int64_t chunk = std::max<std::int64_t>(1, count / (workers * 8));
    std::atomic<std::int64_t> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr first_error;
    std::atomic<int> error_claim{0};

    auto body = [&] {
        for (;;) {
            std::int64_t begin = next.fetch_add(chunk);
            if (begin >= count || failed.load(std::memory_order_relaxed)) break;
            std::int64_t end = std::min(begin + chunk, count);
            try {
                fn(begin, end);
            } catch (...) {
                if (error_claim.exchange(1) == 0) first_error = std::current_exception();
                failed.store(true, std::memory_order_relaxed);
                break;
            }
        }
    };

    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers - 1));
    for (std::int64_t i = 1; i < workers; ++i) pool.emplace_back(body);
    body();
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

} // namespace netgeom::exec
