#include "twc/worker_pool.hpp"

#include <algorithm>

namespace twc {

WorkerPool::WorkerPool(std::size_t workers) : workers_(std::max<std::size_t>(1, workers)) {
  for (std::size_t w = 1; w < workers_; ++w) threads_.emplace_back([this, w] { loop(w); });
}

WorkerPool::~WorkerPool() {
  {
    std::lock_guard lock(mu_);
    stop_ = true;
  }
  start_cv_.notify_all();
  for (auto& t : threads_) t.join();
}

void WorkerPool::drain(std::size_t worker) {
  for (;;) {
    std::size_t i;
    {
      std::lock_guard lock(mu_);
      if (next_ >= count_ || error_) return;
      i = next_++;
    }
    try {
      (*task_)(i, worker);
    } catch (...) {
      std::lock_guard lock(mu_);
      if (!error_) error_ = std::current_exception();
    }
  }
}

void WorkerPool::loop(std::size_t worker) {
  std::size_t seen = 0;
  for (;;) {
    {
      std::unique_lock lock(mu_);
      start_cv_.wait(lock, [&] { return stop_ || generation_ != seen; });
      if (stop_) return;
      seen = generation_;
      ++active_;
    }
    drain(worker);
    {
      std::lock_guard lock(mu_);
      --active_;
    }
    done_cv_.notify_all();
  }
}

void WorkerPool::run(std::size_t count, const Task& task) {
  if (count == 0) return;
  {
    std::lock_guard lock(mu_);
    task_ = &task;
    count_ = count;
    next_ = 0;
    error_ = nullptr;
    ++generation_;
  }
  start_cv_.notify_all();
  drain(0);
  std::exception_ptr err;
  {
    std::unique_lock lock(mu_);
    done_cv_.wait(lock, [&] { return active_ == 0 && (next_ >= count_ || error_); });
    err = error_;
    task_ = nullptr;
    count_ = 0;
  }
  if (err) std::rethrow_exception(err);
}

}  // namespace twc
