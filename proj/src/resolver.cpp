#include "hdpart/resolver.hpp"

#include <algorithm>

#include "hdpart/closed_forms.hpp"
#include "hdpart/errors.hpp"

namespace hdp {

namespace {

int ceil_half(int x) { return (x + 1) / 2; }

void agree(const Integer& a, const Integer& b, TableKind kind, const Index& idx) {
  if (a != b)
    throw IntegrityError("two routes disagree at " + index_label(kind, idx) + ": " + to_string(a) + " vs " +
                         to_string(b));
}

}  // namespace

Resolver::Resolver(ResolverOptions opts) : opts_(opts), reducer_(std::make_unique<SocleReducer>(alpha_)) {
  if (opts_.threads == 0) opts_.threads = 1;
}

CountTable& Resolver::mut(TableKind kind) {
  switch (kind) {
    case TableKind::P: return p_;
    case TableKind::Y: return y_;
    case TableKind::C: return c_;
    case TableKind::ALPHA: return alpha_;
    case TableKind::D: break;
  }
  throw DomainError("the resolver keeps no D table");
}

const CountTable& Resolver::table(TableKind kind) const { return const_cast<Resolver*>(this)->mut(kind); }

std::optional<Integer> Resolver::stored(TableKind kind, const Index& idx) {
  auto& t = mut(kind);
  if (auto v = t.find(idx)) return v;
  if (opts_.cache)
    if (auto r = opts_.cache->find(kind, idx)) {
      t.insert(idx, r->value, r->provenance);
      return r->value;
    }
  return std::nullopt;
}

void Resolver::store(TableKind kind, const Index& idx, const Integer& v, Provenance prov) {
  mut(kind).insert(idx, v, prov);
  if (opts_.cache) opts_.cache->put(kind, idx, v, prov);
}

Integer Resolver::p(int n, int d) {
  if (n < 0 || d < 0) throw DomainError("p needs n, d >= 0");
  const Index idx{n, d};
  if (auto v = stored(TableKind::P, idx)) return *v;
  auto pipeline = [&] {
    Integer acc = 0;
    for (int k = 0; k <= std::min(n, d - 1); ++k) acc += binomial(n, k) * y(k, d);
    return acc;
  };
  if (opts_.closed_forms && n <= 3) {
    const Integer v = p_low_dimension(n, d);
    if (opts_.verify) agree(v, pipeline(), TableKind::P, idx);
    store(TableKind::P, idx, v, Provenance::closed_form);
    return v;
  }
  const Integer v = pipeline();
  store(TableKind::P, idx, v, Provenance::inversion);
  return v;
}

Integer Resolver::y(int k, int d) {
  const Index idx{k, d};
  if (auto v = stored(TableKind::Y, idx)) return *v;
  if (opts_.closed_forms)
    if (auto v = limit_values(TableKind::Y, idx)) {
      if (opts_.verify) agree(*v, y_pipeline(k, d), TableKind::Y, idx);
      store(TableKind::Y, idx, *v, Provenance::closed_form);
      return *v;
    }
  const int e = d - k - 1;
  if (opts_.closed_forms && k > 2 * e) {
    // The diagonal is a polynomial in k of degree 2e: extend it from 2e+1 values.
    for (int j = 0; j <= 2 * e; ++j) y(j, j + e + 1);
    const Integer v = y_recurrence(y_, e, k);
    if (opts_.verify) agree(v, y_pipeline(k, d), TableKind::Y, idx);
    store(TableKind::Y, idx, v, Provenance::recurrence);
    return v;
  }
  const Integer v = y_pipeline(k, d);
  store(TableKind::Y, idx, v, Provenance::inversion);
  return v;
}

Integer Resolver::y_pipeline(int k, int d) {
  const int e = d - k - 1;
  if (e < 0) return 0;
  Integer acc = 0;
  for (int x = 0; x <= std::min(k, 2 * e); ++x) acc += binomial(k, x) * c(x, e);
  return acc;
}

Integer Resolver::c(int k, int e) {
  const Index idx{k, e};
  if (auto v = stored(TableKind::C, idx)) return *v;
  if (opts_.closed_forms)
    if (auto v = limit_values(TableKind::C, idx)) {
      if (opts_.verify) agree(*v, c_pipeline(k, e), TableKind::C, idx);
      store(TableKind::C, idx, *v, Provenance::closed_form);
      return *v;
    }
  const int x = 2 * e - k;
  if (opts_.closed_forms && x >= 1 && e > 2 * x) {
    for (int z = ceil_half(x); z <= 2 * x; ++z) c(2 * z - x, z);
    const Integer v = c_recurrence(c_, x, e);
    if (opts_.verify) agree(v, c_pipeline(k, e), TableKind::C, idx);
    store(TableKind::C, idx, v, Provenance::recurrence);
    return v;
  }
  const Integer v = c_pipeline(k, e);
  store(TableKind::C, idx, v, Provenance::recurrence);
  return v;
}

Integer Resolver::c_pipeline(int k, int e) {
  for (const auto& idx : alpha_indices_for(e, k)) alpha(idx[0], idx[1], idx[2]);
  return reducer_->total(e, k, opts_.threads);
}

Integer Resolver::alpha(int k, int q, int m) {
  const Index idx{k, q, m};
  if (auto v = stored(TableKind::ALPHA, idx)) return *v;
  if (opts_.closed_forms && q == k && k >= 1 && m >= 1) {
    const Integer v = hydral_count(k, m);
    if (opts_.verify) agree(v, alpha_search_value(k, q, m), TableKind::ALPHA, idx);
    store(TableKind::ALPHA, idx, v, Provenance::closed_form);
    return v;
  }
  const Integer v = alpha_search_value(k, q, m);
  store(TableKind::ALPHA, idx, v, Provenance::search);
  return v;
}

Integer Resolver::alpha_search_value(int k, int q, int m) {
  AlphaOptions o;
  o.threads = opts_.threads;
  o.max_nodes = opts_.max_nodes;
  const AlphaQuery query{k, q, m, std::nullopt, std::nullopt};
  if (opts_.cache) o = opts_.cache->resumable(query, o);
  const auto res = alpha_search(query, o);
  if (opts_.cache) opts_.cache->drop_checkpoint(query_id(query));
  nodes_ += res.nodes;
  return res.value;
}

void Resolver::fill_y(int d) {
  for (int k = 0; k < d; ++k) y(k, d);
}

RationalFunctionQ Resolver::H(int d) {
  if (d < 1) throw DomainError("H_d needs d >= 1");
  const int bound = std::max(d - 2, 0);
  const PolynomialQ den = PolynomialQ::one_minus(1).pow(static_cast<unsigned>(d));
  const int order = d + bound + kFitSlack;
  std::vector<Rational> coeffs;
  for (int n = 0; n <= order; ++n) coeffs.emplace_back(p(n + 1, d));
  const auto fit = fit_numerator(PowerSeriesQ(std::move(coeffs), order), den, bound);
  if (!fit.ok())
    throw IntegrityError("H_" + std::to_string(d) + " has no numerator of degree <= " + std::to_string(bound) +
                         "; offending coefficient t^" + std::to_string(fit.offending_index));
  return RationalFunctionQ(*fit.numerator, den);
}

std::vector<Integer> Resolver::c_diagonal(int x, int count) {
  if (x < 0) throw DomainError("negative x");
  std::vector<Integer> out;
  for (int i = 0; i < count; ++i) {
    const int e = ceil_half(x) + i;
    out.push_back(x % 2 == 0 ? c(2 * (e + 1) - x, e + 1) : c(2 * e - x, e));
  }
  return out;
}

}  // namespace hdp
