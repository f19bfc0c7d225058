#include "ijoin/stream_source.hpp"

#include <cassert>

namespace ijoin {

OrderingError::OrderingError(const Endpoint& prev, const Endpoint& bad)
    : std::runtime_error("out-of-order endpoint " + to_string(bad) + " after " +
                         to_string(prev)),
      previous(prev),
      offending(bad) {}

void EndpointFeed::push(const Endpoint& e) {
  {
    std::lock_guard lock(mutex_);
    if (closed_) throw std::logic_error("push on a closed endpoint feed");
    if (last_ && compare_endpoints(*last_, e) > 0) throw OrderingError(*last_, e);
    last_ = e;
    queue_.push_back(e);
  }
  ready_.notify_one();
}

void EndpointFeed::close() {
  {
    std::lock_guard lock(mutex_);
    closed_ = true;
  }
  ready_.notify_all();
}

bool StreamSourceIterator::finished() {
  if (head_) return false;
  if (done_) return true;
  std::unique_lock lock(feed_->mutex_);
  feed_->ready_.wait(lock, [&] { return !feed_->queue_.empty() || feed_->closed_; });
  if (feed_->queue_.empty()) {
    done_ = true;
    return true;
  }
  head_ = feed_->queue_.front();
  feed_->queue_.pop_front();
  return false;
}

StreamSourceIterator::Status StreamSourceIterator::poll() {
  if (head_) return Status::Ready;
  if (done_) return Status::Finished;
  std::lock_guard lock(feed_->mutex_);
  if (!feed_->queue_.empty()) {
    head_ = feed_->queue_.front();
    feed_->queue_.pop_front();
    return Status::Ready;
  }
  if (feed_->closed_) {
    done_ = true;
    return Status::Finished;
  }
  return Status::Pending;
}

Endpoint StreamSourceIterator::endpoint() {
  [[maybe_unused]] const bool at_end = finished();
  assert(!at_end && "endpoint() on a finished stream");
  return *head_;
}

void StreamSourceIterator::advance() {
  if (!head_) finished();
  head_.reset();
}

}  // namespace ijoin
