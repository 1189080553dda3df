#include "gyralab/exactmath.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace gyralab {

Poly::Poly(long c) {
  if (c != 0) c_.push_back(BigInt(c));
}

Poly::Poly(const BigInt& c) {
  if (c != 0) c_.push_back(c);
}

Poly::Poly(std::vector<BigInt> coeffs) : c_(std::move(coeffs)) { trim(); }

Poly Poly::monomial(const BigInt& c, int k) {
  if (c == 0) return {};
  std::vector<BigInt> v(static_cast<size_t>(k) + 1, BigInt(0));
  v.back() = c;
  return Poly(std::move(v));
}

void Poly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

int Poly::low_degree() const {
  for (size_t k = 0; k < c_.size(); ++k)
    if (c_[k] != 0) return static_cast<int>(k);
  return kDegreeZero;
}

BigInt Poly::coeff(int k) const {
  if (k < 0 || k >= static_cast<int>(c_.size())) return 0;
  return c_[static_cast<size_t>(k)];
}

bool Poly::is_monomial() const {
  return !c_.empty() && low_degree() == degree();
}

BigInt Poly::eval(const BigInt& x) const {
  BigInt r = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * x + *it;
  return r;
}

BigRat Poly::eval(const BigRat& x) const {
  BigRat r = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * x + BigRat(*it);
  r.canonicalize();
  return r;
}

Poly Poly::derivative() const {
  if (c_.size() <= 1) return {};
  std::vector<BigInt> d(c_.size() - 1);
  for (size_t k = 1; k < c_.size(); ++k) d[k - 1] = c_[k] * static_cast<long>(k);
  return Poly(std::move(d));
}

Poly Poly::reversed(int d) const {
  if (is_zero()) return {};
  if (d < degree()) throw std::invalid_argument("Poly::reversed: d below degree");
  std::vector<BigInt> r(static_cast<size_t>(d) + 1, BigInt(0));
  for (size_t k = 0; k < c_.size(); ++k) r[static_cast<size_t>(d) - k] = c_[k];
  return Poly(std::move(r));
}

BigInt Poly::content() const {
  BigInt g = 0;
  for (const auto& x : c_) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

Poly Poly::primitive() const {
  if (is_zero()) return {};
  BigInt g = content();
  if (lead() < 0) g = -g;
  std::vector<BigInt> r(c_);
  for (auto& x : r) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
  return Poly(std::move(r));
}

Poly Poly::operator-() const {
  Poly r(*this);
  for (auto& x : r.c_) x = -x;
  return r;
}

Poly& Poly::operator+=(const Poly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), BigInt(0));
  for (size_t k = 0; k < o.c_.size(); ++k) c_[k] += o.c_[k];
  trim();
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), BigInt(0));
  for (size_t k = 0; k < o.c_.size(); ++k) c_[k] -= o.c_[k];
  trim();
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<BigInt> r(a.c_.size() + b.c_.size() - 1, BigInt(0));
  for (size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i] == 0) continue;
    for (size_t j = 0; j < b.c_.size(); ++j) {
      mpz_addmul(r[i + j].get_mpz_t(), a.c_[i].get_mpz_t(), b.c_[j].get_mpz_t());
    }
  }
  return Poly(std::move(r));
}

Poly& Poly::operator*=(const Poly& o) {
  *this = *this * o;
  return *this;
}

std::string Poly::str() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (size_t k = 0; k < c_.size(); ++k) {
    const BigInt& x = c_[k];
    if (x == 0) continue;
    BigInt ax = abs(x);
    if (x < 0) os << "-";
    else if (!first) os << "+";
    if (k == 0 || ax != 1) os << ax;
    if (k >= 1) os << "t";
    if (k >= 2) os << "^" << k;
    first = false;
  }
  return os.str();
}

Poly poly_arith(const Poly& a, const Poly& b, PolyOp op) {
  switch (op) {
    case PolyOp::Add: return a + b;
    case PolyOp::Sub: return a - b;
    case PolyOp::Mul: return a * b;
  }
  return {};
}

bool try_divexact(const Poly& a, const Poly& b, Poly& q) {
  if (b.is_zero()) throw std::domain_error("division by zero polynomial");
  if (a.is_zero()) {
    q = Poly();
    return true;
  }
  if (a.degree() < b.degree()) return false;
  std::vector<BigInt> rem(a.coeffs());
  const auto& bc = b.coeffs();
  const int db = b.degree();
  std::vector<BigInt> quo(static_cast<size_t>(a.degree() - db) + 1, BigInt(0));
  for (int k = a.degree(); k >= db; --k) {
    BigInt& top = rem[static_cast<size_t>(k)];
    if (top == 0) continue;
    if (!mpz_divisible_p(top.get_mpz_t(), b.lead().get_mpz_t())) return false;
    BigInt f;
    mpz_divexact(f.get_mpz_t(), top.get_mpz_t(), b.lead().get_mpz_t());
    quo[static_cast<size_t>(k - db)] = f;
    for (int j = 0; j <= db; ++j) {
      mpz_submul(rem[static_cast<size_t>(k - db + j)].get_mpz_t(), f.get_mpz_t(),
                 bc[static_cast<size_t>(j)].get_mpz_t());
    }
  }
  for (int k = 0; k < db; ++k)
    if (rem[static_cast<size_t>(k)] != 0) return false;
  q = Poly(std::move(quo));
  return true;
}

Poly divexact(const Poly& a, const Poly& b) {
  Poly q;
  if (!try_divexact(a, b, q))
    throw std::domain_error("inexact polynomial division: (" + a.str() + ")/(" + b.str() + ")");
  return q;
}

Poly pseudo_rem(const Poly& a, const Poly& b) {
  if (b.is_zero()) throw std::domain_error("pseudo_rem by zero");
  if (a.degree() < b.degree()) return a;
  std::vector<BigInt> r(a.coeffs());
  const auto& bc = b.coeffs();
  const int db = b.degree();
  for (int k = a.degree(); k >= db; --k) {
    BigInt top = r[static_cast<size_t>(k)];
    for (auto& x : r) x *= b.lead();
    for (int j = 0; j <= db; ++j)
      r[static_cast<size_t>(k - db + j)] -= top * bc[static_cast<size_t>(j)];
  }
  return Poly(std::move(r));
}

Poly gcd(const Poly& a, const Poly& b) {
  if (a.is_zero() && b.is_zero()) return {};
  if (a.is_zero()) return b.content() * b.primitive();
  if (b.is_zero()) return a.content() * a.primitive();
  BigInt c;
  BigInt ca = a.content(), cb = b.content();
  mpz_gcd(c.get_mpz_t(), ca.get_mpz_t(), cb.get_mpz_t());
  Poly x = a.primitive(), y = b.primitive();
  if (x.degree() < y.degree()) std::swap(x, y);
  while (!y.is_zero()) {
    Poly r = pseudo_rem(x, y);
    x = std::move(y);
    y = r.primitive();
  }
  return Poly(c) * x.primitive();
}

Normalized poly_content_normalize(const PolyVector& v) {
  Poly g;
  for (const auto& p : v) {
    if (p.is_zero()) continue;
    g = gcd(g, p);
    if (g.degree() == 0 && g.lead() == 1) break;
  }
  if (g.is_zero()) throw std::invalid_argument("poly_content_normalize: all-zero vector");
  Normalized out;
  out.v.reserve(v.size());
  for (const auto& p : v) out.v.push_back(divexact(p, g));
  for (const auto& p : out.v) {
    if (p.is_zero()) continue;
    if (p.coeff(p.low_degree()) < 0) {
      for (auto& q : out.v) q = -q;
      g = -g;
    }
    break;
  }
  out.scale = g;
  return out;
}

PolyMatrix PolyMatrix::identity(int n) {
  PolyMatrix m(n, n);
  for (int i = 0; i < n; ++i) m.e_[{i, i}] = Poly(1);
  return m;
}

Poly PolyMatrix::get(int r, int c) const {
  auto it = e_.find({r, c});
  return it == e_.end() ? Poly() : it->second;
}

void PolyMatrix::set(int r, int c, const Poly& p) {
  if (p.is_zero()) e_.erase({r, c});
  else e_[{r, c}] = p;
}

void PolyMatrix::add(int r, int c, const Poly& p) {
  if (p.is_zero()) return;
  auto it = e_.find({r, c});
  if (it == e_.end()) {
    e_.emplace(std::make_pair(r, c), p);
    return;
  }
  it->second += p;
  if (it->second.is_zero()) e_.erase(it);
}

PolyMatrix PolyMatrix::operator+(const PolyMatrix& o) const {
  PolyMatrix r(*this);
  for (const auto& [k, p] : o.e_) r.add(k.first, k.second, p);
  return r;
}

PolyMatrix PolyMatrix::operator-(const PolyMatrix& o) const {
  PolyMatrix r(*this);
  for (const auto& [k, p] : o.e_) r.add(k.first, k.second, -p);
  return r;
}

PolyMatrix PolyMatrix::operator*(const PolyMatrix& o) const {
  if (cols_ != o.rows_) throw std::invalid_argument("PolyMatrix: shape mismatch");
  std::vector<std::vector<std::pair<int, const Poly*>>> orow(static_cast<size_t>(o.rows_));
  for (const auto& [k, p] : o.e_) orow[static_cast<size_t>(k.first)].push_back({k.second, &p});
  PolyMatrix r(rows_, o.cols_);
  for (const auto& [k, p] : e_)
    for (const auto& [c, q] : orow[static_cast<size_t>(k.second)]) r.add(k.first, c, p * *q);
  return r;
}

PolyMatrix PolyMatrix::scaled(const Poly& p) const {
  PolyMatrix r(rows_, cols_);
  for (const auto& [k, q] : e_) r.set(k.first, k.second, q * p);
  return r;
}

PolyVector PolyMatrix::apply(const PolyVector& v) const {
  if (static_cast<int>(v.size()) != cols_) throw std::invalid_argument("PolyMatrix::apply: size");
  PolyVector r(static_cast<size_t>(rows_));
  for (const auto& [k, p] : e_) {
    const Poly& x = v[static_cast<size_t>(k.second)];
    if (!x.is_zero()) r[static_cast<size_t>(k.first)] += p * x;
  }
  return r;
}

PolyMatrix PolyMatrix::derivative() const {
  PolyMatrix r(rows_, cols_);
  for (const auto& [k, p] : e_) r.set(k.first, k.second, p.derivative());
  return r;
}

PolyMatrix PolyMatrix::eval_at(const BigInt& x) const {
  PolyMatrix r(rows_, cols_);
  for (const auto& [k, p] : e_) r.set(k.first, k.second, Poly(p.eval(x)));
  return r;
}

namespace {

using Dense = std::vector<std::vector<Poly>>;

// Fraction-free forward elimination; returns pivot columns and leaves `a` in echelon form.
std::vector<int> bareiss_echelon(Dense& a, int cols, int* swaps) {
  const int rows = static_cast<int>(a.size());
  Poly prev(1);
  std::vector<int> pivots;
  int r = 0;
  if (swaps) *swaps = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int p = -1;
    for (int i = r; i < rows; ++i) {
      if (a[i][c].is_zero()) continue;
      if (p < 0 || a[i][c].degree() < a[p][c].degree()) p = i;
    }
    if (p < 0) continue;
    if (p != r) {
      std::swap(a[p], a[r]);
      if (swaps) ++*swaps;
    }
    const Poly piv = a[r][c];
    for (int i = r + 1; i < rows; ++i) {
      const Poly f = a[i][c];
      for (int j = c + 1; j < cols; ++j) {
        Poly x = piv * a[i][j];
        if (!f.is_zero()) x -= f * a[r][j];
        a[i][j] = divexact(x, prev);
      }
      a[i][c] = Poly();
    }
    prev = piv;
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace

std::vector<PolyVector> nullspace_poly(const PolyMatrix& m) {
  const int rows = m.rows(), cols = m.cols();
  Dense a(static_cast<size_t>(rows), std::vector<Poly>(static_cast<size_t>(cols)));
  for (const auto& [k, p] : m.entries()) a[k.first][k.second] = p;
  const std::vector<int> pivots = bareiss_echelon(a, cols, nullptr);
  std::vector<bool> is_pivot(static_cast<size_t>(cols), false);
  for (int c : pivots) is_pivot[c] = true;

  std::vector<PolyVector> basis;
  for (int f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    PolyVector x(static_cast<size_t>(cols));
    x[f] = Poly(1);
    for (int r = static_cast<int>(pivots.size()) - 1; r >= 0; --r) {
      const int pc = pivots[r];
      Poly s;
      for (int j = pc + 1; j < cols; ++j)
        if (!a[r][j].is_zero() && !x[j].is_zero()) s += a[r][j] * x[j];
      const Poly& piv = a[r][pc];
      // x[pc] = -s / piv: scale the partial solution so the division is exact.
      Poly g = gcd(s, piv);
      if (g.is_zero()) g = Poly(1);
      Poly mult = divexact(piv, g);
      if (!(mult.degree() == 0 && mult.lead() == 1))
        for (auto& xi : x) xi *= mult;
      x[pc] = -divexact(s * mult, piv);
      // keep sizes small
      Poly h;
      for (const auto& xi : x) h = gcd(h, xi);
      if (!h.is_zero() && !(h.degree() == 0 && h.lead() == 1))
        for (auto& xi : x) xi = divexact(xi, h);
    }
    basis.push_back(poly_content_normalize(x).v);
  }
  return basis;
}

Poly det_poly(std::vector<std::vector<Poly>> a) {
  const int n = static_cast<int>(a.size());
  if (n == 0) return Poly(1);
  for (const auto& row : a)
    if (static_cast<int>(row.size()) != n) throw std::invalid_argument("det_poly: not square");
  int swaps = 0;
  const std::vector<int> pivots = bareiss_echelon(a, n, &swaps);
  if (static_cast<int>(pivots.size()) < n) return {};
  Poly d = a[n - 1][n - 1];
  return swaps % 2 ? -d : d;
}

BigInt binomial(long n, long k) {
  if (n < 0) throw std::invalid_argument("binomial: negative n");
  if (k < 0 || k > n) return 0;
  BigInt r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

BigInt superfactorial(long n) {
  if (n < 0) throw std::invalid_argument("superfactorial: negative n");
  BigInt r = 1, f = 1;
  for (long k = 1; k < n; ++k) {
    f *= k;
    r *= f;
  }
  return r;
}

nlohmann::json bigint_to_json(const BigInt& x) { return x.get_str(); }

nlohmann::json poly_to_json(const Poly& p) {
  nlohmann::json c = nlohmann::json::array();
  for (const auto& x : p.coeffs()) c.push_back(x.get_str());
  return {{"coeffs", c}};
}

Poly poly_from_json(const nlohmann::json& j) {
  std::vector<BigInt> c;
  for (const auto& x : j.at("coeffs")) {
    if (x.is_string()) c.emplace_back(x.get<std::string>());
    else c.emplace_back(x.get<long>());
  }
  return Poly(std::move(c));
}

}  // namespace gyralab
