#pragma once

#include <algorithm>
#include <chrono>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace afdkit {

// Evenly spaced request pacing shared by all fetch workers: each acquire()
// reserves the next slot 1/rate after the previous one and sleeps until it.
class RateLimiter {
 public:
  explicit RateLimiter(double permits_per_second) {
    if (permits_per_second <= 0) throw std::invalid_argument("rate must be > 0");
    interval_ = std::chrono::duration_cast<std::chrono::nanoseconds>(
        std::chrono::duration<double>(1.0 / permits_per_second));
    next_ = std::chrono::steady_clock::now();
  }

  void acquire() {
    std::chrono::steady_clock::time_point slot;
    {
      std::lock_guard<std::mutex> lock(mu_);
      slot = std::max(next_, std::chrono::steady_clock::now());
      next_ = slot + interval_;
    }
    std::this_thread::sleep_until(slot);
  }

 private:
  std::mutex mu_;
  std::chrono::steady_clock::time_point next_;
  std::chrono::nanoseconds interval_;
};

}  // namespace afdkit
