#include "hdpart/socle_reduction.hpp"

#include <atomic>
#include <exception>
#include <thread>

#include "hdpart/errors.hpp"

namespace hdp {

namespace {

std::vector<Index> live_triples(int e, int a) {
  std::vector<Index> out;
  for (int k = 0; k <= a; ++k)
    for (int q = 0; q <= e; ++q)
      for (int m = 0; q + m <= e; ++m) {
        if (socle_vanishes(e, k, q, m, a)) continue;
        auto b = boundary_value(TableKind::ALPHA, {k, q, m});
        if (b && *b == 0) continue;
        out.push_back({k, q, m});
      }
  return out;
}

}  // namespace

std::vector<Index> alpha_indices_for(int e, int a) {
  std::vector<Index> out;
  for (auto& t : live_triples(e, a))
    if (!boundary_value(TableKind::ALPHA, t)) out.push_back(t);
  return out;
}

Integer SocleReducer::refined_locked(int e, int k, int q, int m, int a, const Integer& alpha) {
  if (a <= 0 || k > a || q + m > e) return 0;
  const std::array<int, 5> key{e, k, q, m, a};
  if (auto it = memo_.find(key); it != memo_.end()) return it->second;
  Integer v = alpha * binomial(a, k) * binomial(long(a) * (a + 1) / 2 - q, e - q - m);
  for (int i = 1; i < a; ++i) v -= binomial(a, i) * refined_locked(e, k, q, m, i, alpha);
  memo_.emplace(key, v);
  return v;
}

Integer SocleReducer::refined(int e, int k, int q, int m, int a) {
  if (a < 0 || e < 0 || k < 0 || q < 0 || m < 0) throw DomainError("negative socle-reduction index");
  if (a == 0 || k > a || q + m > e) return 0;
  auto alpha = alpha_.find({k, q, m});
  if (!alpha) throw MissingDataError("ALPHA", {index_label(TableKind::ALPHA, {k, q, m})});
  std::lock_guard lock(mu_);
  return refined_locked(e, k, q, m, a, *alpha);
}

Integer SocleReducer::total(int e, int a, unsigned threads) {
  if (a < 0 || e < 0) throw DomainError("negative socle-reduction index");
  if (a == 0) return e == 0 ? 1 : 0;

  auto triples = live_triples(e, a);
  std::vector<std::string> missing;
  for (auto& t : triples)
    if (!alpha_.find(t)) missing.push_back(index_label(TableKind::ALPHA, t));
  if (!missing.empty()) throw MissingDataError("ALPHA", std::move(missing));

  std::vector<Integer> parts(triples.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  auto work = [&] {
    for (std::size_t i; (i = next++) < triples.size();) {
      try {
        parts[i] = refined(e, triples[i][0], triples[i][1], triples[i][2], a);
      } catch (...) {
        std::lock_guard lock(failure_mu);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  const unsigned n = std::max(1u, std::min<unsigned>(threads, triples.size()));
  if (n == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned i = 0; i < n; ++i) pool.emplace_back(work);
  }
  if (failure) std::rethrow_exception(failure);

  Integer sum = 0;
  for (auto& p : parts) sum += p;
  return sum;
}

std::size_t SocleReducer::memo_size() const {
  std::lock_guard lock(mu_);
  return memo_.size();
}

Integer c_refined(int e, int k, int q, int m, int a, const CountTable& alpha) {
  return SocleReducer(alpha).refined(e, k, q, m, a);
}

Integer c_total(int e, int a, const CountTable& alpha, unsigned threads) {
  return SocleReducer(alpha).total(e, a, threads);
}

}  // namespace hdp
