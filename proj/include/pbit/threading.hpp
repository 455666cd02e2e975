#pragma once

#include <condition_variable>
#include <cstdlib>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace pbit {

// Thread budget: PBIT_THREADS env var if set, else hardware concurrency.
inline unsigned thread_budget() {
    if (const char* env = std::getenv("PBIT_THREADS")) {
        long v = std::strtol(env, nullptr, 10);
        if (v >= 1) return static_cast<unsigned>(v);
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? hw : 1;
}

// Minimal reusable pool for deterministic data-parallel loops. Work items are
// index ranges; correctness never depends on which worker runs which range.
class ThreadPool {
public:
    explicit ThreadPool(unsigned workers) {
        for (unsigned t = 0; t + 1 < workers; ++t)
            threads_.emplace_back([this] { worker_loop(); });
    }

    ~ThreadPool() {
        {
            std::unique_lock lock(mu_);
            stop_ = true;
        }
        cv_.notify_all();
        for (auto& t : threads_) t.join();
    }

    unsigned width() const { return static_cast<unsigned>(threads_.size()) + 1; }

    // Invokes fn(begin, end) over disjoint chunks of [0, count); blocks until done.
    void for_range(std::size_t count, const std::function<void(std::size_t, std::size_t)>& fn) {
        if (count == 0) return;
        unsigned parts = width();
        if (parts <= 1 || count < 2048) {
            fn(0, count);
            return;
        }
        std::size_t chunk = (count + parts - 1) / parts;
        {
            std::unique_lock lock(mu_);
            fn_ = &fn;
            next_ = chunk;  // caller takes the first chunk itself
            count_ = count;
            chunk_ = chunk;
            pending_ = 0;
            for (std::size_t b = chunk; b < count; b += chunk) ++pending_;
            generation_++;
        }
        cv_.notify_all();
        fn(0, std::min(chunk, count));
        std::unique_lock lock(mu_);
        done_cv_.wait(lock, [this] { return pending_ == 0; });
        fn_ = nullptr;
    }

private:
    void worker_loop() {
        uint64_t seen = 0;
        while (true) {
            std::unique_lock lock(mu_);
            cv_.wait(lock, [&] { return stop_ || (fn_ && generation_ != seen && next_ < count_); });
            if (stop_) return;
            seen = generation_;
            while (fn_ && next_ < count_) {
                std::size_t b = next_;
                std::size_t e = std::min(b + chunk_, count_);
                next_ = e;
                auto* fn = fn_;
                lock.unlock();
                (*fn)(b, e);
                lock.lock();
                if (--pending_ == 0) done_cv_.notify_all();
            }
        }
    }

    std::vector<std::thread> threads_;
    std::mutex mu_;
    std::condition_variable cv_, done_cv_;
    const std::function<void(std::size_t, std::size_t)>* fn_ = nullptr;
    std::size_t next_ = 0, count_ = 0, chunk_ = 0;
    int pending_ = 0;
    uint64_t generation_ = 0;
    bool stop_ = false;
};

}  // namespace pbit
