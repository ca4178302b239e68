#pragma once

// Single-assignment futures with continuations. A future is single-consumer:
// get() may be called once, and then()/when_all() consume their inputs.
//
// wait() on a pool worker thread keeps executing queued tasks until the
// future is ready, so nested launches cannot starve the pool.

#include <chrono>
#include <condition_variable>
#include <exception>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

namespace octosimd::runtime {

namespace detail {

// Implemented by the pool: true when the caller is one of its workers, and
// a way for such a caller to run one queued task (false if none was found).
bool on_worker_thread();
bool help_one();

template <class T>
using value_t = std::conditional_t<std::is_void_v<T>, std::monostate, T>;

template <class T>
class SharedState {
 public:
  enum class Status { pending, ready, failed };

  void set_value(value_t<T> v) {
    complete([&] {
      value_.emplace(std::move(v));
      status_ = Status::ready;
    });
  }

  void set_error(std::exception_ptr e) {
    complete([&] {
      error_ = std::move(e);
      status_ = Status::failed;
    });
  }

  // Runs f once the state is complete; immediately if it already is.
  void on_complete(std::function<void()> f) {
    {
      std::lock_guard lock(mu_);
      if (status_ == Status::pending) {
        continuations_.push_back(std::move(f));
        return;
      }
    }
    f();
  }

  bool is_ready() const {
    std::lock_guard lock(mu_);
    return status_ != Status::pending;
  }

  Status status() const {
    std::lock_guard lock(mu_);
    return status_;
  }

  void wait() const {
    if (on_worker_thread()) {
      while (!is_ready()) {
        if (!help_one()) {
          std::unique_lock lock(mu_);
          cv_.wait_for(lock, std::chrono::microseconds(100), [&] { return status_ != Status::pending; });
        }
      }
      return;
    }
    std::unique_lock lock(mu_);
    cv_.wait(lock, [&] { return status_ != Status::pending; });
  }

  // Moves the result out; only valid once complete.
  value_t<T> take() {
    std::lock_guard lock(mu_);
    if (retrieved_) throw std::logic_error("future result already retrieved");
    retrieved_ = true;
    if (status_ == Status::failed) std::rethrow_exception(error_);
    return std::move(*value_);
  }

  std::exception_ptr error() const {
    std::lock_guard lock(mu_);
    return error_;
  }

 private:
  template <class F>
  void complete(F&& assign) {
    std::vector<std::function<void()>> conts;
    {
      std::lock_guard lock(mu_);
      if (status_ != Status::pending) throw std::logic_error("future completed twice");
      assign();
      conts.swap(continuations_);
    }
    cv_.notify_all();
    for (auto& c : conts) c();
  }

  mutable std::mutex mu_;
  mutable std::condition_variable cv_;
  Status status_ = Status::pending;
  std::optional<value_t<T>> value_;
  std::exception_ptr error_;
  std::vector<std::function<void()>> continuations_;
  bool retrieved_ = false;
};

}  // namespace detail

template <class T>
class Future;

template <class T>
class Promise {
 public:
  Promise() : state_(std::make_shared<detail::SharedState<T>>()) {}

  Future<T> get_future() const { return Future<T>(state_); }

  template <class U = T>
    requires(!std::is_void_v<U>)
  void set_value(U v) {
    state_->set_value(std::move(v));
  }
  void set_value()
    requires std::is_void_v<T>
  {
    state_->set_value(std::monostate{});
  }
  void set_error(std::exception_ptr e) { state_->set_error(std::move(e)); }

 private:
  std::shared_ptr<detail::SharedState<T>> state_;
};

template <class T>
class Future {
 public:
  using value_type = T;

  Future() = default;
  explicit Future(std::shared_ptr<detail::SharedState<T>> s) : state_(std::move(s)) {}

  bool valid() const { return static_cast<bool>(state_); }
  bool is_ready() const { return require().is_ready(); }
  bool has_error() const { return require().status() == detail::SharedState<T>::Status::failed; }

  void wait() const { require().wait(); }

  // Waits, then returns the value or rethrows the stored error.
  T get() {
    auto s = std::move(state_);
    if (!s) throw std::logic_error("get() on an empty future");
    s->wait();
    if constexpr (std::is_void_v<T>) {
      s->take();
    } else {
      return s->take();
    }
  }

  std::shared_ptr<detail::SharedState<T>> release_state() { return std::move(state_); }

 private:
  detail::SharedState<T>& require() const {
    if (!state_) throw std::logic_error("operation on an empty future");
    return *state_;
  }

  std::shared_ptr<detail::SharedState<T>> state_;
};

template <class T>
Future<std::decay_t<T>> make_ready_future(T&& v) {
  Promise<std::decay_t<T>> p;
  p.set_value(std::forward<T>(v));
  return p.get_future();
}

inline Future<void> make_ready_future() {
  Promise<void> p;
  p.set_value();
  return p.get_future();
}

template <class T>
Future<T> make_failed_future(std::exception_ptr e) {
  Promise<T> p;
  p.set_error(std::move(e));
  return p.get_future();
}

namespace detail {

template <class T, class F>
auto invoke_with_value(F& f, value_t<T>&& v) {
  if constexpr (std::is_void_v<T>) {
    return f();
  } else {
    return f(std::move(v));
  }
}

template <class T, class F>
using continuation_result_t =
    decltype(invoke_with_value<T>(std::declval<F&>(), std::declval<value_t<T>&&>()));

}  // namespace detail

// Runs `f(value)` on whichever thread completes `input` (or immediately if it
// is already complete). Failures skip `f` and propagate.
template <class T, class F>
auto then(Future<T> input, F f) -> Future<detail::continuation_result_t<T, F>> {
  using R = detail::continuation_result_t<T, F>;
  auto src = input.release_state();
  if (!src) throw std::logic_error("then() on an empty future");
  auto dst = std::make_shared<detail::SharedState<R>>();
  src->on_complete([src, dst, f = std::move(f)]() mutable {
    try {
      auto v = src->take();
      if constexpr (std::is_void_v<R>) {
        detail::invoke_with_value<T>(f, std::move(v));
        dst->set_value(std::monostate{});
      } else {
        dst->set_value(detail::invoke_with_value<T>(f, std::move(v)));
      }
    } catch (...) {
      dst->set_error(std::current_exception());
    }
  });
  return Future<R>(dst);
}

// Completes once every input has. On failure, the error of the first failed
// input in argument order is propagated.
template <class T>
auto when_all(std::vector<Future<T>> inputs) {
  using Out = std::conditional_t<std::is_void_v<T>, void, std::vector<T>>;
  auto dst = std::make_shared<detail::SharedState<Out>>();

  struct Join {
    std::vector<std::shared_ptr<detail::SharedState<T>>> states;
    std::mutex mu;
    std::size_t remaining = 0;
  };
  auto join = std::make_shared<Join>();
  for (auto& f : inputs) {
    auto s = f.release_state();
    if (!s) throw std::logic_error("when_all() on an empty future");
    join->states.push_back(std::move(s));
  }
  join->remaining = join->states.size();

  auto finish = [join, dst] {
    for (auto& s : join->states) {
      if (auto e = s->error()) {
        dst->set_error(e);
        return;
      }
    }
    if constexpr (std::is_void_v<T>) {
      dst->set_value(std::monostate{});
    } else {
      std::vector<T> values;
      values.reserve(join->states.size());
      for (auto& s : join->states) values.push_back(s->take());
      dst->set_value(std::move(values));
    }
  };

  if (join->states.empty()) {
    finish();
  } else {
    for (auto& s : join->states) {
      s->on_complete([join, finish] {
        bool last = false;
        {
          std::lock_guard lock(join->mu);
          last = --join->remaining == 0;
        }
        if (last) finish();
      });
    }
  }
  return Future<Out>(dst);
}

}  // namespace octosimd::runtime
