#pragma once

#include <cstdint>
#include <deque>
#include <optional>
#include <stdexcept>

namespace ehsim {

struct Task {
  std::int64_t arrival_slot = 0;
  bool operator==(const Task&) const = default;
};

enum class OfferOutcome { Accepted, Dropped };

/// Bounded FIFO of pending tasks.
class TaskBuffer {
 public:
  explicit TaskBuffer(std::int64_t capacity) : capacity_(capacity) {
    if (capacity < 1) throw std::invalid_argument("TaskBuffer: capacity must be >= 1");
  }

  OfferOutcome offer(std::int64_t slot) {
    if (full()) return OfferOutcome::Dropped;
    queue_.push_back(Task{slot});
    return OfferOutcome::Accepted;
  }

  std::optional<Task> take() {
    if (queue_.empty()) return std::nullopt;
    Task t = queue_.front();
    queue_.pop_front();
    return t;
  }

  std::int64_t occupancy() const { return static_cast<std::int64_t>(queue_.size()); }
  std::int64_t capacity() const { return capacity_; }
  bool empty() const { return queue_.empty(); }
  bool full() const { return occupancy() >= capacity_; }
  const std::deque<Task>& contents() const { return queue_; }

  bool operator==(const TaskBuffer&) const = default;

 private:
  std::int64_t capacity_;
  std::deque<Task> queue_;
};

inline OfferOutcome buffer_offer(TaskBuffer& buffer, std::int64_t slot) {
  return buffer.offer(slot);
}
inline std::optional<Task> buffer_take(TaskBuffer& buffer) { return buffer.take(); }

}  // namespace ehsim
