#pragma once

// Depth-first generation of order ideals of a finite graded poset.
//
// Points are indexed by a linear extension of the poset order.  A set is
// grown by adding an addable point strictly larger than the last one added,
// so every ideal is produced exactly once, as the sorted sequence of its
// elements.  The candidates of a child are the parent's candidates above the
// new point plus the covers of the new point that just became addable.

#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

#include "hdpart/errors.hpp"

namespace hdp::detail {

struct GradedPoset {
  std::vector<int> degree;
  std::vector<std::vector<int>> uppers;  // covers above (always higher index)
  std::vector<int> nlower;               // number of covers below inside the poset
  std::vector<int> roots;                // nlower == 0

  std::size_t size() const { return degree.size(); }
};

class NodeBudget {
 public:
  explicit NodeBudget(std::uint64_t limit) : limit_(limit) {}
  void charge(std::uint64_t n) {
    if (used_.fetch_add(n, std::memory_order_relaxed) + n > limit_)
      throw ResourceLimitError("search node ceiling of " + std::to_string(limit_) + " exceeded");
  }
  std::uint64_t used() const { return used_.load(); }

 private:
  std::uint64_t limit_;
  std::atomic<std::uint64_t> used_{0};
};

// Policy requirements:
//   void push(int p); void pop(int p);
//   bool viable();   prune test after a push
//   bool full();     no further additions allowed (target size reached)
//   void accept();   called on full nodes; records into the policy's tally
template <class Policy>
class Augmenter {
 public:
  Augmenter(const GradedPoset& poset, Policy policy, NodeBudget& budget)
      : poset_(poset), policy_(std::move(policy)), budget_(budget), lp_(poset.size(), 0) {}

  Policy& policy() { return policy_; }
  std::uint64_t nodes() const { return nodes_; }

  void replay(const std::vector<int>& prefix) {
    for (int p : prefix) add(p);
  }

  void run(const std::vector<int>& cands, int last) {
    buf_.assign(cands.begin(), cands.end());
    dfs(0, buf_.size(), last);
    flush();
  }

  // One level of expansion; full children are accepted immediately.
  template <class Sink>
  void expand(const std::vector<int>& cands, int last, Sink&& sink) {
    for (int c : cands) {
      if (c <= last) continue;
      std::vector<int> child;
      for (int x : cands)
        if (x > c) child.push_back(x);
      add(c, &child);
      if (policy_.viable()) {
        if (policy_.full())
          policy_.accept();
        else
          sink(c, child);
      }
      remove(c);
    }
    flush();
  }

 private:
  void add(int p, std::vector<int>* newly = nullptr) {
    policy_.push(p);
    for (int u : poset_.uppers[static_cast<std::size_t>(p)])
      if (++lp_[static_cast<std::size_t>(u)] == poset_.nlower[static_cast<std::size_t>(u)] && newly)
        newly->push_back(u);
    tick();
  }

  void remove(int p) {
    for (int u : poset_.uppers[static_cast<std::size_t>(p)]) --lp_[static_cast<std::size_t>(u)];
    policy_.pop(p);
  }

  void tick() {
    ++nodes_;
    if (++pending_ == 4096) flush();
  }

  void flush() {
    if (pending_) {
      std::uint64_t n = pending_;
      pending_ = 0;
      budget_.charge(n);
    }
  }

  void dfs(std::size_t begin, std::size_t end, int last) {
    for (std::size_t i = begin; i < end; ++i) {
      const int c = buf_[i];
      if (c <= last) continue;
      policy_.push(c);
      tick();
      if (policy_.viable()) {
        if (policy_.full()) {
          policy_.accept();
        } else {
          const std::size_t nb = buf_.size();
          for (std::size_t j = begin; j < end; ++j)
            if (buf_[j] > c) buf_.push_back(buf_[j]);
          for (int u : poset_.uppers[static_cast<std::size_t>(c)])
            if (++lp_[static_cast<std::size_t>(u)] == poset_.nlower[static_cast<std::size_t>(u)])
              buf_.push_back(u);
          dfs(nb, buf_.size(), c);
          buf_.resize(nb);
          for (int u : poset_.uppers[static_cast<std::size_t>(c)]) --lp_[static_cast<std::size_t>(u)];
        }
      }
      policy_.pop(c);
    }
  }

  const GradedPoset& poset_;
  Policy policy_;
  NodeBudget& budget_;
  std::vector<int> lp_;
  std::vector<int> buf_;
  std::uint64_t nodes_ = 0;
  std::uint64_t pending_ = 0;
};

struct SplitTask {
  std::vector<int> prefix;
  std::vector<int> cands;
  int last = -1;
};

// Runs the whole search and returns the merged tally.  Tally needs
// operator+=; Policy exposes `Tally tally`.  The result does not depend on
// the number of threads: tallies are sums.
template <class Policy>
auto run_search(const GradedPoset& poset, const Policy& proto, unsigned threads, NodeBudget& budget) {
  using Tally = decltype(proto.tally);
  Tally total{};
  {
    Policy root = proto;
    if (!root.viable()) return total;
    if (root.full()) {
      root.accept();
      return root.tally;
    }
  }
  if (threads <= 1) {
    Augmenter<Policy> a(poset, proto, budget);
    a.run(poset.roots, -1);
    return a.policy().tally;
  }

  // Breadth-first splitting until there is enough work to share.
  std::vector<SplitTask> frontier{SplitTask{{}, poset.roots, -1}};
  const std::size_t want = 32u * threads;
  for (int round = 0; round < 48 && !frontier.empty() && frontier.size() < want; ++round) {
    std::vector<SplitTask> next;
    for (const auto& t : frontier) {
      Augmenter<Policy> a(poset, proto, budget);
      a.replay(t.prefix);
      a.expand(t.cands, t.last, [&](int c, const std::vector<int>& child) {
        SplitTask s{t.prefix, child, c};
        s.prefix.push_back(c);
        next.push_back(std::move(s));
      });
      total += a.policy().tally;
    }
    frontier = std::move(next);
  }

  std::vector<Tally> partial(threads);
  std::atomic<std::size_t> cursor{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::atomic<bool> stop{false};
  {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < threads; ++w) {
      pool.emplace_back([&, w] {
        try {
          while (!stop.load()) {
            const std::size_t i = cursor.fetch_add(1);
            if (i >= frontier.size()) break;
            Augmenter<Policy> a(poset, proto, budget);
            a.replay(frontier[i].prefix);
            a.run(frontier[i].cands, frontier[i].last);
            partial[w] += a.policy().tally;
          }
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
          stop = true;
        }
      });
    }
  }
  if (failure) std::rethrow_exception(failure);
  for (const auto& p : partial) total += p;
  return total;
}

}  // namespace hdp::detail
