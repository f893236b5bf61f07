#pragma once

// Refined counts y, c, d, their inversion formulas and recurrences, and the
// generating functions built from finitely many of them.

#include <map>
#include <optional>
#include <shared_mutex>
#include <string_view>
#include <string>
#include <vector>

#include "hdpart/bigint.hpp"
#include "hdpart/series.hpp"

namespace hdp {

// Index layouts: P (n,d); Y (k,d); C (k,e); D (k,e); ALPHA (k,q,m) or (k,q,m,l).
enum class TableKind { P, Y, C, D, ALPHA };
enum class Provenance { oracle, inversion, recurrence, closed_form, cache, search, golden };

const char* name(TableKind k);
const char* name(Provenance p);
std::optional<TableKind> table_kind_from(std::string_view s);
std::optional<Provenance> provenance_from(std::string_view s);

using Index = std::vector<int>;

std::string index_label(TableKind kind, const Index& idx);  // e.g. "Y[2,4]"

// Values forced by definition (zero ranges and the trivial ones), or nothing.
// Throws DomainError for malformed indices.
std::optional<Integer> boundary_value(TableKind kind, const Index& idx);

class CountTable {
 public:
  struct Entry {
    Integer value;
    Provenance provenance;
  };

  explicit CountTable(TableKind kind) : kind_(kind) {}
  CountTable(const CountTable& o);
  CountTable& operator=(const CountTable& o);

  TableKind kind() const { return kind_; }

  // Stored entry or boundary convention.
  std::optional<Integer> find(const Index& idx) const;
  Integer at(const Index& idx) const;  // MissingDataError when absent
  std::optional<Entry> entry(const Index& idx) const;

  // Rejects values that contradict a boundary convention or an existing
  // entry (IntegrityError). Re-inserting the same value keeps the first
  // provenance.
  void insert(const Index& idx, const Integer& value, Provenance prov);

  std::size_t size() const;
  std::map<Index, Entry> snapshot() const;

 private:
  TableKind kind_;
  mutable std::shared_mutex mu_;
  std::map<Index, Entry> map_;
};

// p_d^n = sum_k C(n,k) y_d^k
Integer p_from_y(const CountTable& y, int n, int d);
// y_d^n = sum_j (-1)^(n+j) C(n,j) p_d^j
Integer y_from_p(const CountTable& p, int n, int d);
// y_{k+e+1}^k = sum_x C(k,x) c_e^x
Integer y_from_c(const CountTable& c, int k, int e);
// c_e^k = sum_j (-1)^(k+j) C(k,j) y_{e+j+1}^j
Integer c_from_y(const CountTable& y, int k, int e);
// d_e^x from the c table; 0 <= x <= 2e - ceil(e/2).
Integer d_from_c(const CountTable& c, int x, int e);
// c_e^{2e-x} from the d table; ceil(x/2) <= e.
Integer c_from_d(const CountTable& d, int x, int e);

// y_{k+e+1}^k for k > 2e from y_{j+e+1}^j, j = 0..2e.
Integer y_recurrence(const CountTable& y, int e, int k);
// c_e^{2e-x} for e > 2x from c_z^{2z-x}, z = ceil(x/2)..2x.
Integer c_recurrence(const CountTable& c, int x, int e);

// p_d^n for n <= 3 without search: 1, 1, integer partitions, plane partitions.
Integer p_low_dimension(int n, int d);

// Closed values for Y (k,d) and C (k,e) indices; nothing when no closed
// form applies.
std::optional<Integer> limit_values(TableKind kind, const Index& idx);

struct GammaCoefficients {
  int e = 0;
  std::vector<Integer> gamma;
};

// seed[j] = y_{j+e+2}^{j+1} for j = 0..2e-1. Checks the two linear
// identities on gamma and throws IntegrityError if either fails.
GammaCoefficients gamma_coefficients(int e, const std::vector<Integer>& seed);
// sum_k y_{k+2+e}^{k+1} t^k as a rational function.
RationalFunctionQ gen_Y(int e, const std::vector<Integer>& seed);
std::vector<Integer> y_seed(const CountTable& y, int e);

// Coefficients of C_x: for even x the diagonal c_{e+1}^{2e+2-x}, for odd x
// the diagonal c_e^{2e-x}, with e running from ceil(x/2).
std::vector<Integer> c_diagonal(const CountTable& c, int x, int count);
int c_seed_length(int x);   // diagonal entries the mu formulas read
int c_degree_bound(int x);  // 2x - ceil(x/2)
Rational c_denominator_exponent(int x);  // 3/2 + 2x - ceil(x/2)

struct MuCoefficients {
  int x = 0;
  std::vector<Rational> mu;
};

struct CSeries {
  MuCoefficients mu;
  PolynomialQ numerator;
  Rational denominator_exponent;  // Borel(C_x) = numerator / (1 - 2t)^this
  int verified_terms = 0;  // diagonal entries checked beyond the seed
};

MuCoefficients mu_coefficients(int x, const std::vector<Integer>& diagonal);
// Borel(C_x) = c_x(t) / (1 - 2t)^(...). Every diagonal entry beyond the seed
// is checked against the expansion; a mismatch throws IntegrityError.
CSeries gen_C(int x, const std::vector<Integer>& diagonal);

// Text for a C series: numerator and denominator lines.
std::string render(const CSeries& s);

}  // namespace hdp
