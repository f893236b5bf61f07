// hdpart: counts, generating functions and conjecture checks from the shell.
//
// Exit codes: 0 ok, 1 error, 2 conjecture fails, 3 inconclusive.

#include <CLI11.hpp>

#include <algorithm>
#include <functional>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "hdpart/cache.hpp"
#include "hdpart/closed_forms.hpp"
#include "hdpart/enumerate.hpp"
#include "hdpart/errors.hpp"
#include "hdpart/macmahon.hpp"
#include "hdpart/mpartition.hpp"
#include "hdpart/refinement.hpp"
#include "hdpart/resolver.hpp"
#include "hdpart/series.hpp"

namespace {

using namespace hdp;

constexpr int kExitError = 1;
constexpr int kExitFails = 2;
constexpr int kExitInconclusive = 3;

struct Global {
  unsigned threads = 1;
  std::string cache_dir;
  bool no_cache = false;
  std::uint64_t max_nodes = 1'000'000'000ULL;
  bool oracle = false;
  bool verify = false;
  int expand = -1;
};

// Shared state built once the command line is parsed.
struct Session {
  Global g;
  std::unique_ptr<Cache> cache;

  unsigned threads() const {
    if (g.threads != 0) return g.threads;
    return std::max(1u, std::thread::hardware_concurrency());
  }

  void open() {
    if (g.no_cache) {
      cache = std::make_unique<Cache>();
    } else {
      cache = std::make_unique<Cache>(g.cache_dir.empty() ? Cache::default_dir() : std::filesystem::path(g.cache_dir));
      if (cache->corrupt_lines() > 0)
        std::cerr << "warning kind=cache message=skipped " << cache->corrupt_lines() << " damaged cache lines\n";
    }
    cache->load(Cache::golden_path());
  }

  ResolverOptions resolver_options() const {
    ResolverOptions o;
    o.threads = threads();
    o.max_nodes = g.max_nodes;
    o.cache = cache.get();
    return o;
  }

  // Every entry recomputed by search, away from the cache.
  ResolverOptions search_options() const {
    ResolverOptions o;
    o.threads = threads();
    o.max_nodes = g.max_nodes;
    o.closed_forms = false;
    return o;
  }

  EnumerationOptions enum_options() const { return EnumerationOptions{threads(), g.max_nodes}; }
};

void diff(const Integer& a, const std::string& route_a, const Integer& b, const std::string& route_b) {
  if (a != b)
    throw IntegrityError(route_a + " gives " + to_string(a) + " but " + route_b + " gives " + to_string(b));
  std::cerr << "verified " << route_a << " = " << route_b << "\n";
}

std::string provenance_of(const Resolver& r, TableKind kind, const Index& idx) {
  if (auto e = r.table(kind).entry(idx)) return name(e->provenance);
  return "unknown";
}

// Computes through the resolver, or the oracle with --oracle; --verify
// adds a second independent route and diffs.
int count_value(Session& s, TableKind kind, const Index& idx, const std::function<Integer(Resolver&)>& via,
                const std::function<Integer()>& oracle) {
  Integer value;
  if (s.g.oracle) {
    value = oracle();
    if (s.g.verify) {
      Resolver r(s.resolver_options());
      const Integer other = via(r);
      diff(value, "oracle", other, provenance_of(r, kind, idx));
    }
  } else {
    Resolver r(s.resolver_options());
    value = via(r);
    if (s.g.verify) {
      // Closed and shipped values are checked by search, searched ones by brute force.
      const std::string prov = provenance_of(r, kind, idx);
      if (prov == "closed-form" || prov == "golden") {
        Resolver search(s.search_options());
        const Integer other = via(search);
        diff(value, prov, other, "search");
      } else {
        diff(value, prov, oracle(), "oracle");
      }
    }
  }
  std::cout << value << "\n";
  return 0;
}

void print_expansion(const PowerSeriesQ& s) { std::cout << "coefficients: " << render(s) << "\n"; }

void print_rational(const Session& s, const RationalFunctionQ& f) {
  std::cout << render_factored(f) << "\n";
  if (s.g.expand > 0) print_expansion(series_of(f, s.g.expand - 1));
}

int report_exit(const ConjectureReport& rep) {
  std::cout << render(rep);
  switch (rep.verdict) {
    case Verdict::holds: return 0;
    case Verdict::fails: return kExitFails;
    case Verdict::inconclusive: return kExitInconclusive;
  }
  return kExitError;
}

std::vector<int> parse_ints(const std::string& text) {
  std::vector<int> out;
  std::stringstream in(text);
  std::string part;
  while (std::getline(in, part, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(part, &used));
      if (used != part.size()) throw std::invalid_argument(part);
    } catch (const std::exception&) {
      throw DomainError("expected a comma-separated list of integers, got '" + text + "'");
    }
  }
  return out;
}

void print_error(const Error& e) {
  std::cerr << "error kind=" << e.kind() << " message=" << e.what();
  if (const auto* m = dynamic_cast<const MissingDataError*>(&e)) {
    std::cerr << " table=" << m->table() << " missing=";
    for (std::size_t i = 0; i < m->missing().size(); ++i) std::cerr << (i ? "," : "") << m->missing()[i];
  }
  std::cerr << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  Session s;
  CLI::App app{"Higher-dimensional partitions: exact counts, generating functions and conjecture checks"};
  app.set_version_flag("--version", std::string(tool_version()));
  app.require_subcommand(1);
  app.add_option("--threads", s.g.threads, "Worker threads, 0 for all cores")->capture_default_str();
  app.add_option("--cache-dir", s.g.cache_dir, "Cache directory")->envname("HDPART_CACHE_DIR");
  app.add_flag("--no-cache", s.g.no_cache, "Do not read or write the persistent cache");
  app.add_option("--max-nodes", s.g.max_nodes, "Search node ceiling per query")->capture_default_str();

  std::function<int()> run;

  // count
  app.fallthrough();
  auto* count = app.add_subcommand("count", "Print one exact count");
  count->fallthrough();
  count->require_subcommand(1);
  count->add_flag("--oracle", s.g.oracle, "Brute-force enumeration");
  count->add_flag("--verify", s.g.verify, "Compute by a second route and compare");

  int n = 0, d = 0, k = 0, e = 0, q = 0, m = 0, x = 0;
  std::optional<int> length;
  bool by_hilbert = false;

  auto* cp = count->add_subcommand("p", "p_d^n: partitions of n in dimension d");
  cp->add_option("--n", n)->required()->check(CLI::NonNegativeNumber);
  cp->add_option("--d", d)->required()->check(CLI::NonNegativeNumber);
  cp->callback([&] {
    run = [&] {
      return count_value(s, TableKind::P, {n, d}, [&](Resolver& r) { return r.p(n, d); },
                         [&] { return count_partitions(n, d, s.enum_options()); });
    };
  });

  auto* cy = count->add_subcommand("y", "y_d^k");
  cy->add_option("--k", k)->required()->check(CLI::NonNegativeNumber);
  cy->add_option("--d", d)->required()->check(CLI::NonNegativeNumber);
  cy->callback([&] {
    run = [&] {
      return count_value(s, TableKind::Y, {k, d}, [&](Resolver& r) { return r.y(k, d); },
                         [&] { return oracle_y(k, d, s.enum_options()); });
    };
  });

  auto* cc = count->add_subcommand("c", "c_e^k");
  cc->add_option("--k", k)->required()->check(CLI::NonNegativeNumber);
  cc->add_option("--e", e)->required()->check(CLI::NonNegativeNumber);
  cc->callback([&] {
    run = [&] {
      return count_value(s, TableKind::C, {k, e}, [&](Resolver& r) { return r.c(k, e); },
                         [&] { return oracle_c(k, e, s.enum_options()); });
    };
  });

  auto* ca = count->add_subcommand("alpha", "M-partitions of type (k, q, m)");
  ca->add_option("--k", k)->required()->check(CLI::NonNegativeNumber);
  ca->add_option("--q", q)->required()->check(CLI::NonNegativeNumber);
  ca->add_option("--m", m)->required()->check(CLI::NonNegativeNumber);
  ca->add_option("--length", length, "Restrict the socle degree to at most this value");
  ca->add_flag("--by-hilbert", by_hilbert, "Also print the count per Hilbert function");
  ca->callback([&] {
    run = [&]() -> int {
      if (!length && !by_hilbert)
        return count_value(s, TableKind::ALPHA, {k, q, m}, [&](Resolver& r) { return r.alpha(k, q, m); },
                           [&] { return oracle_alpha(k, q, m, std::nullopt, s.enum_options()); });
      // Restricted or split counts go straight to the search.
      const AlphaQuery query{k, q, m, length, std::nullopt};
      AlphaOptions o;
      o.threads = s.threads();
      o.max_nodes = s.g.max_nodes;
      Index idx{k, q, m};
      if (length) idx.push_back(*length);
      Integer value;
      AlphaResult res;
      const auto cached = s.cache->find(TableKind::ALPHA, idx);
      if (s.g.oracle) {
        value = oracle_alpha(k, q, m, length, s.enum_options());
      } else if (cached && !by_hilbert) {
        value = cached->value;
      } else {
        res = alpha_search(query, s.cache->resumable(query, o), by_hilbert);
        s.cache->drop_checkpoint(query_id(query));
        value = res.value;
        s.cache->put(TableKind::ALPHA, idx, value, Provenance::search);
      }
      if (s.g.verify) {
        const Integer other = oracle_alpha(k, q, m, length, s.enum_options());
        diff(value, s.g.oracle ? "oracle" : "search", other, "oracle");
      }
      std::cout << value << "\n";
      for (const auto& [h, c] : res.by_hilbert) {
        std::cout << "hilbert ";
        for (std::size_t i = 0; i < h.size(); ++i) std::cout << (i ? "," : "") << h[i];
        std::cout << "\t" << c << "\n";
      }
      return 0;
    };
  });

  auto* ch = count->add_subcommand("hydral", "Hydral M-partitions: type (n, n, m)");
  ch->add_option("--n", n)->required()->check(CLI::PositiveNumber);
  ch->add_option("--m", m)->required()->check(CLI::NonNegativeNumber);
  ch->callback([&] {
    run = [&] {
      return count_value(s, TableKind::ALPHA, {n, n, m}, [&](Resolver& r) { return r.alpha(n, n, m); },
                         [&] { return oracle_alpha(n, n, m, std::nullopt, s.enum_options()); });
    };
  });

  // series
  auto* series = app.add_subcommand("series", "Print a generating function");
  series->require_subcommand(1);
  series->fallthrough();
  series->add_option("--expand", s.g.expand, "Also print this many coefficients");
  std::string parts;

  auto* sH = series->add_subcommand("H", "sum_n p_d^(n+1) t^n");
  sH->add_option("--d", d)->required()->check(CLI::PositiveNumber);
  sH->callback([&] {
    run = [&] {
      Resolver r(s.resolver_options());
      print_rational(s, r.H(d));
      return 0;
    };
  });

  auto* sY = series->add_subcommand("Y", "sum_k y_(k+2+e)^(k+1) t^k");
  sY->add_option("--e", e)->required()->check(CLI::NonNegativeNumber);
  sY->callback([&] {
    run = [&] {
      Resolver r(s.resolver_options());
      for (int j = 0; j < 2 * e; ++j) r.y(j + 1, j + e + 2);
      const auto f = gen_Y(e, y_seed(r.table(TableKind::Y), e));
      // Terms past the seed must follow from the fitted form.
      const int check = 2 * e + 2;
      const auto s_f = series_of(f, check);
      for (int j = 0; j <= check; ++j)
        if (s_f[j] != Rational(r.y(j + 1, j + e + 2)))
          throw IntegrityError("Y_" + std::to_string(e) + " disagrees with the table at t^" + std::to_string(j));
      print_rational(s, f);
      return 0;
    };
  });

  auto* sC = series->add_subcommand("C", "Borel transform of the c diagonal x");
  sC->add_option("--x", x)->required()->check(CLI::NonNegativeNumber);
  sC->callback([&] {
    run = [&] {
      Resolver r(s.resolver_options());
      const auto cs = gen_C(x, r.c_diagonal(x, c_seed_length(x) + 1));
      std::cout << render(cs) << "\n";
      if (s.g.expand > 0)
        print_expansion(inverse_borel(
            expand_half_power(cs.numerator, HalfIntegerPower(-cs.denominator_exponent), s.g.expand - 1)));
      return 0;
    };
  });

  auto* sHy = series->add_subcommand("hydral", "sum_m alpha(n, n, m) t^m");
  sHy->add_option("--n", n)->required()->check(CLI::PositiveNumber);
  sHy->callback([&] {
    run = [&] {
      print_rational(s, hydral_series(n));
      return 0;
    };
  });

  auto* sPhi = series->add_subcommand("phi", "Phi_n");
  sPhi->add_option("--n", n)->required()->check(CLI::PositiveNumber);
  sPhi->callback([&] {
    run = [&] {
      print_rational(s, phi_rational(n));
      return 0;
    };
  });

  auto* sPsi = series->add_subcommand("psi", "Psi_lambda, the product of Phi over the parts");
  sPsi->add_option("--parts", parts, "Comma-separated parts, e.g. 3,1")->required();
  sPsi->callback([&] {
    run = [&] {
      const LinearPartition lambda(parse_ints(parts));
      if (lambda.empty()) throw DomainError("psi needs at least one part");
      RationalFunctionQ f(PolynomialQ{1}, PolynomialQ{1});
      for (int part : lambda.parts()) {
        if (part < 1) throw DomainError("parts must be positive");
        f = f * phi_rational(part);
      }
      print_rational(s, f);
      return 0;
    };
  });

  auto* sPi = series->add_subcommand("pi", "Product formula series in dimension n");
  sPi->add_option("--n", n)->required()->check(CLI::NonNegativeNumber);
  sPi->callback([&] {
    run = [&] {
      print_expansion(pi_series(n, (s.g.expand > 0 ? s.g.expand : 10) - 1));
      return 0;
    };
  });

  // conjecture
  auto* conj = app.add_subcommand("conjecture", "Check a conjecture over a finite range");
  conj->require_subcommand(1);
  conj->fallthrough();
  int order = 50, dmax = 8;
  std::string bound = "1000000";

  auto* cA = conj->add_subcommand("andrews", "Rationality of the k-th diagonal");
  cA->add_option("--k", k)->required()->check(CLI::PositiveNumber);
  cA->add_option("--order", order)->capture_default_str()->check(CLI::PositiveNumber);
  cA->callback([&] { run = [&] { return report_exit(check_andrews(k, order)); }; });

  auto* cE = conj->add_subcommand("epsilon", "Divisibility of the exponent discrepancy");
  cE->add_option("--m", m)->required()->check(CLI::PositiveNumber);
  cE->callback([&] {
    run = [&] {
      Resolver r(s.resolver_options());
      for (int dd = 1; dd <= m; ++dd) r.fill_y(dd);
      return report_exit(check_epsilon(m, r.table(TableKind::Y)));
    };
  });

  auto* cS = conj->add_subcommand("sparsity", "Coincidences p_d^n = p_e^m");
  cS->add_option("--dmax", dmax)->capture_default_str()->check(CLI::PositiveNumber);
  cS->add_option("--bound", bound)->capture_default_str();
  cS->callback([&] {
    run = [&] {
      Integer b;
      if (b.set_str(bound, 10) != 0 || b < 0) throw DomainError("--bound must be a nonnegative integer");
      Resolver r(s.resolver_options());
      for (int dd = 1; dd <= dmax; ++dd) r.fill_y(dd);
      return report_exit(sparsity_search(dmax, b, r.table(TableKind::Y)).report);
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    const int code = app.exit(err);
    return code == 0 ? 0 : kExitError;
  }

  try {
    s.open();
    return run ? run() : kExitError;
  } catch (const Error& err) {
    print_error(err);
    return kExitError;
  } catch (const std::exception& err) {
    std::cerr << "error kind=internal message=" << err.what() << "\n";
    return kExitError;
  }
}
