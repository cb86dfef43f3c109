#pragma once

#include <condition_variable>
#include <cstddef>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace twc {

// Fixed set of threads that run one indexed loop at a time. run() blocks
// until every index is done and rethrows the first exception raised by a
// task. With one worker everything runs on the calling thread.
class WorkerPool {
 public:
  using Task = std::function<void(std::size_t index, std::size_t worker)>;

  explicit WorkerPool(std::size_t workers);
  ~WorkerPool();
  WorkerPool(const WorkerPool&) = delete;
  WorkerPool& operator=(const WorkerPool&) = delete;

  std::size_t size() const { return workers_; }
  void run(std::size_t count, const Task& task);

 private:
  void loop(std::size_t worker);
  void drain(std::size_t worker);

  std::size_t workers_;
  std::vector<std::thread> threads_;
  std::mutex mu_;
  std::condition_variable start_cv_;
  std::condition_variable done_cv_;
  const Task* task_ = nullptr;
  std::size_t count_ = 0;
  std::size_t next_ = 0;
  std::size_t active_ = 0;
  std::size_t generation_ = 0;
  bool stop_ = false;
  std::exception_ptr error_;
};

}  // namespace twc
