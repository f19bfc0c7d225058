#pragma once

#include <condition_variable>
#include <deque>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>

#include "ijoin/core.hpp"

namespace ijoin {

class OrderingError : public std::runtime_error {
 public:
  OrderingError(const Endpoint& previous, const Endpoint& offending);

  Endpoint previous;
  Endpoint offending;
};

/// Producer side of a live endpoint stream. push() may be called from any
/// thread; endpoints must arrive in compare_endpoints order.
class EndpointFeed {
 public:
  /// Throws OrderingError when `e` sorts before the previously pushed
  /// endpoint, and std::logic_error after close().
  void push(const Endpoint& e);

  /// Signals end-of-stream. Idempotent.
  void close();

 private:
  friend class StreamSourceIterator;

  std::mutex mutex_;
  std::condition_variable ready_;
  std::deque<Endpoint> queue_;
  std::optional<Endpoint> last_;
  bool closed_ = false;
};

/// Consumer side of an EndpointFeed. finished() blocks until the next
/// endpoint or end-of-stream is known; poll() is the non-blocking variant.
class StreamSourceIterator {
 public:
  enum class Status { Ready, Pending, Finished };

  explicit StreamSourceIterator(std::shared_ptr<EndpointFeed> feed) : feed_(std::move(feed)) {}

  bool finished();
  Status poll();
  Endpoint endpoint();
  void advance();

 private:
  std::shared_ptr<EndpointFeed> feed_;
  std::optional<Endpoint> head_;
  bool done_ = false;
};

inline StreamSourceIterator stream_source_iterator(std::shared_ptr<EndpointFeed> feed) {
  return StreamSourceIterator(std::move(feed));
}

}  // namespace ijoin
