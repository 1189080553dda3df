// Exact integers, univariate integer polynomials and fraction-free linear algebra.
#pragma once

#include <gmpxx.h>

#include <climits>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace gyralab {

using BigInt = mpz_class;
using BigRat = mpq_class;

// Polynomial in t with big-integer coefficients; coeffs[k] multiplies t^k.
// Always stored without trailing zeros, so the zero polynomial has no coefficients.
class Poly {
 public:
  static constexpr int kDegreeZero = INT_MIN;  // degree of the zero polynomial

  Poly() = default;
  Poly(long c);  // NOLINT: constants convert implicitly
  Poly(const BigInt& c);  // NOLINT
  explicit Poly(std::vector<BigInt> coeffs);

  static Poly monomial(const BigInt& c, int k);
  static Poly t() { return monomial(1, 1); }

  const std::vector<BigInt>& coeffs() const { return c_; }
  bool is_zero() const { return c_.empty(); }
  int degree() const { return c_.empty() ? kDegreeZero : static_cast<int>(c_.size()) - 1; }
  int low_degree() const;  // index of the lowest nonzero coefficient
  BigInt coeff(int k) const;
  const BigInt& lead() const { return c_.back(); }
  bool is_monomial() const;

  BigInt eval(const BigInt& x) const;
  BigRat eval(const BigRat& x) const;
  Poly derivative() const;
  // t^d p(1/t); requires d >= degree().
  Poly reversed(int d) const;

  BigInt content() const;  // nonnegative gcd of the coefficients
  Poly primitive() const;  // divided by content, positive leading coefficient

  Poly operator-() const;
  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Poly& o);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

  std::string str() const;  // e.g. "1+2t+t^2"

 private:
  void trim();
  std::vector<BigInt> c_;
};

enum class PolyOp { Add, Sub, Mul };
Poly poly_arith(const Poly& a, const Poly& b, PolyOp op);

// Exact quotient a/b over Z[t]; throws std::domain_error when b does not divide a.
Poly divexact(const Poly& a, const Poly& b);
// Returns true and sets q when b divides a exactly over Z[t].
bool try_divexact(const Poly& a, const Poly& b, Poly& q);
// Pseudo-remainder of a by b: lc(b)^(deg a - deg b + 1) a mod b.
Poly pseudo_rem(const Poly& a, const Poly& b);
// Greatest common divisor over Z[t], positive leading coefficient (zero for gcd(0,0)).
Poly gcd(const Poly& a, const Poly& b);

using PolyVector = std::vector<Poly>;

struct Normalized {
  PolyVector v;
  Poly scale;
};
// Removes the common polynomial gcd (including integer content) and fixes the sign so the
// lowest-order nonzero coefficient of the first nonzero entry is positive. input == scale * v.
Normalized poly_content_normalize(const PolyVector& v);

class PolyMatrix {
 public:
  PolyMatrix() = default;
  PolyMatrix(int rows, int cols) : rows_(rows), cols_(cols) {}
  static PolyMatrix identity(int n);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  const std::map<std::pair<int, int>, Poly>& entries() const { return e_; }

  Poly get(int r, int c) const;
  void set(int r, int c, const Poly& p);
  void add(int r, int c, const Poly& p);

  PolyMatrix operator+(const PolyMatrix& o) const;
  PolyMatrix operator-(const PolyMatrix& o) const;
  PolyMatrix operator*(const PolyMatrix& o) const;
  PolyMatrix scaled(const Poly& p) const;
  PolyVector apply(const PolyVector& v) const;
  PolyMatrix derivative() const;
  PolyMatrix eval_at(const BigInt& x) const;  // constant matrix
  bool operator==(const PolyMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && e_ == o.e_;
  }

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::map<std::pair<int, int>, Poly> e_;
};

// Basis of the right nullspace over Q(t); each vector is denominator-free and normalized.
std::vector<PolyVector> nullspace_poly(const PolyMatrix& m);
// Determinant by fraction-free elimination.
Poly det_poly(std::vector<std::vector<Poly>> a);

BigInt binomial(long n, long k);
BigInt superfactorial(long n);  // prod_{k<n} k!

nlohmann::json poly_to_json(const Poly& p);
Poly poly_from_json(const nlohmann::json& j);
nlohmann::json bigint_to_json(const BigInt& x);

}  // namespace gyralab
