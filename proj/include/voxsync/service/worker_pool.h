#ifndef VOXSYNC_SERVICE_WORKER_POOL_H_
#define VOXSYNC_SERVICE_WORKER_POOL_H_

#include <algorithm>
#include <atomic>
#include <chrono>
#include <condition_variable>
#include <deque>
#include <exception>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <thread>
#include <type_traits>
#include <vector>

#include "voxsync/common/error.h"

namespace voxsync::service {

class PoolSaturated : public Error {
 public:
  using Error::Error;
};

struct PoolOptions {
  int workers = 0;  // 0 = hardware concurrency
  std::size_t queue_depth = 64;
  std::chrono::milliseconds queue_timeout{5000};
};

// Fixed set of threads, each owning one Engine built up front by the
// factory, fed from a bounded FIFO. Run() blocks the caller until its job has
// finished. A job that cannot be queued, or that waits in the queue longer
// than queue_timeout, fails with PoolSaturated and is never executed.
template <typename Engine>
class WorkerPool {
 public:
  using Factory = std::function<std::unique_ptr<Engine>(int worker)>;

  WorkerPool(const PoolOptions& options, const Factory& factory)
      : options_(options) {
    int n = options.workers;
    if (n <= 0) n = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    if (options.queue_depth == 0) throw Error("queue depth must be > 0");
    engines_.reserve(n);
    for (int i = 0; i < n; ++i) engines_.push_back(factory(i));
    threads_.reserve(n);
    for (int i = 0; i < n; ++i) {
      threads_.emplace_back([this, i] { Loop(*engines_[i]); });
    }
  }

  ~WorkerPool() {
    {
      std::lock_guard<std::mutex> lock(mu_);
      stopping_ = true;
    }
    cv_.notify_all();
    for (auto& t : threads_) t.join();
    for (auto& job : queue_) job->Finish(std::make_exception_ptr(Error("worker pool stopped")));
  }

  WorkerPool(const WorkerPool&) = delete;
  WorkerPool& operator=(const WorkerPool&) = delete;

  int workers() const { return static_cast<int>(threads_.size()); }
  const PoolOptions& options() const { return options_; }
  std::uint64_t jobs_completed() const { return completed_.load(); }

  std::size_t queued() const {
    std::lock_guard<std::mutex> lock(mu_);
    return queue_.size();
  }

  template <typename F>
  std::invoke_result_t<F&, Engine&> Run(F f) {
    using R = std::invoke_result_t<F&, Engine&>;
    auto job = std::make_shared<Job>();
    std::optional<std::conditional_t<std::is_void_v<R>, char, R>> result;
    job->body = [&f, &result](Engine& engine) {
      if constexpr (std::is_void_v<R>) {
        f(engine);
        result.emplace();
      } else {
        result.emplace(f(engine));
      }
    };
    {
      std::lock_guard<std::mutex> lock(mu_);
      if (stopping_) throw Error("worker pool stopped");
      if (queue_.size() >= options_.queue_depth) {
        throw PoolSaturated("synthesis queue is full");
      }
      queue_.push_back(job);
    }
    cv_.notify_one();

    std::unique_lock<std::mutex> job_lock(job->mu);
    if (!job->cv.wait_for(job_lock, options_.queue_timeout,
                          [&] { return job->started || job->done; })) {
      job_lock.unlock();
      std::lock_guard<std::mutex> lock(mu_);
      int expected = kQueued;
      if (job->state.compare_exchange_strong(expected, kCancelled)) {
        queue_.erase(std::find(queue_.begin(), queue_.end(), job));
        throw PoolSaturated("synthesis job waited too long in the queue");
      }
      job_lock.lock();
    }
    job->cv.wait(job_lock, [&] { return job->done; });
    if (job->error) std::rethrow_exception(job->error);
    if constexpr (!std::is_void_v<R>) return std::move(*result);
  }

 private:
  enum : int { kQueued, kRunning, kCancelled };

  struct Job {
    std::function<void(Engine&)> body;
    std::atomic<int> state{kQueued};
    std::mutex mu;
    std::condition_variable cv;
    bool started = false;
    bool done = false;
    std::exception_ptr error;

    void Finish(std::exception_ptr e) {
      {
        std::lock_guard<std::mutex> lock(mu);
        error = std::move(e);
        done = true;
      }
      cv.notify_all();
    }
  };

  void Loop(Engine& engine) {
    for (;;) {
      std::shared_ptr<Job> job;
      {
        std::unique_lock<std::mutex> lock(mu_);
        cv_.wait(lock, [&] { return stopping_ || !queue_.empty(); });
        if (stopping_) return;
        job = std::move(queue_.front());
        queue_.pop_front();
        int expected = kQueued;
        if (!job->state.compare_exchange_strong(expected, kRunning)) continue;
      }
      {
        std::lock_guard<std::mutex> lock(job->mu);
        job->started = true;
      }
      job->cv.notify_all();
      std::exception_ptr error;
      try {
        job->body(engine);
      } catch (...) {
        error = std::current_exception();
      }
      ++completed_;
      job->Finish(error);
    }
  }

  PoolOptions options_;
  std::vector<std::unique_ptr<Engine>> engines_;
  std::vector<std::thread> threads_;
  mutable std::mutex mu_;
  std::condition_variable cv_;
  std::deque<std::shared_ptr<Job>> queue_;
  bool stopping_ = false;
  std::atomic<std::uint64_t> completed_{0};
};

}  // namespace voxsync::service

#endif  // VOXSYNC_SERVICE_WORKER_POOL_H_
