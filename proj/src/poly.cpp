#include "bfred/poly.hpp"

#include <algorithm>

namespace bfred {

UniPoly::UniPoly(std::vector<GaussianRational> coeffs) : coeffs_(std::move(coeffs)) { normalize(); }

void UniPoly::normalize() {
  while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

UniPoly UniPoly::from_laurent_shifted(const LaurentPoly& f) {
  if (f.is_zero()) return UniPoly();
  std::vector<GaussianRational> c(static_cast<std::size_t>(f.hi() - f.lo()) + 1);
  for (const auto& [deg, v] : f.terms()) c[static_cast<std::size_t>(deg - f.lo())] = v;
  return UniPoly(std::move(c));
}

GaussianRational UniPoly::coeff(long k) const {
  if (k < 0 || k >= static_cast<long>(coeffs_.size())) return GaussianRational();
  return coeffs_[static_cast<std::size_t>(k)];
}

const GaussianRational& UniPoly::lead() const {
  static const GaussianRational zero;
  return coeffs_.empty() ? zero : coeffs_.back();
}

GaussianRational UniPoly::eval(const GaussianRational& z) const {
  GaussianRational out;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) out = out * z + *it;
  return out;
}

UniPoly UniPoly::derivative() const {
  if (coeffs_.size() <= 1) return UniPoly();
  std::vector<GaussianRational> c(coeffs_.size() - 1);
  for (std::size_t k = 1; k < coeffs_.size(); ++k)
    c[k - 1] = coeffs_[k] * GaussianRational(Rational(static_cast<long>(k)));
  return UniPoly(std::move(c));
}

UniPoly UniPoly::monic() const {
  if (is_zero()) return *this;
  return scaled(lead().inv());
}

UniPoly UniPoly::reciprocal_conjugate() const {
  std::vector<GaussianRational> c(coeffs_.size());
  for (std::size_t k = 0; k < coeffs_.size(); ++k) c[k] = coeffs_[coeffs_.size() - 1 - k].conj();
  return UniPoly(std::move(c));
}

UniPoly UniPoly::mobius(const Rational& e) const {
  /* Accumulate a_k (z + e)^k (1 + e z)^{n-k} by Horner in (z + e) with a
   * running (1 + e z) correction, keeping everything polynomial. */
  long n = degree();
  if (n < 0) return UniPoly();
  UniPoly zp(std::vector<GaussianRational>{GaussianRational(e), GaussianRational(1)});
  UniPoly ez(std::vector<GaussianRational>{GaussianRational(1), GaussianRational(e)});
  UniPoly acc;
  for (long k = n; k >= 0; --k) {
    acc = acc * zp;
    if (!coeff(k).is_zero()) {
      UniPoly term(std::vector<GaussianRational>{coeff(k)});
      for (long j = 0; j < n - k; ++j) term = term * ez;
      acc = acc + term;
    }
  }
  return acc;
}

UniPoly operator+(const UniPoly& a, const UniPoly& b) {
  std::vector<GaussianRational> c(std::max(a.coeffs_.size(), b.coeffs_.size()));
  for (std::size_t k = 0; k < c.size(); ++k)
    c[k] = a.coeff(static_cast<long>(k)) + b.coeff(static_cast<long>(k));
  return UniPoly(std::move(c));
}

UniPoly operator-(const UniPoly& a, const UniPoly& b) {
  std::vector<GaussianRational> c(std::max(a.coeffs_.size(), b.coeffs_.size()));
  for (std::size_t k = 0; k < c.size(); ++k)
    c[k] = a.coeff(static_cast<long>(k)) - b.coeff(static_cast<long>(k));
  return UniPoly(std::move(c));
}

UniPoly operator*(const UniPoly& a, const UniPoly& b) {
  if (a.is_zero() || b.is_zero()) return UniPoly();
  std::vector<GaussianRational> c(a.coeffs_.size() + b.coeffs_.size() - 1);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
  return UniPoly(std::move(c));
}

UniPoly UniPoly::scaled(const GaussianRational& factor) const {
  std::vector<GaussianRational> c(coeffs_.size());
  for (std::size_t k = 0; k < coeffs_.size(); ++k) c[k] = coeffs_[k] * factor;
  return UniPoly(std::move(c));
}

void UniPoly::divmod(const UniPoly& a, const UniPoly& b, UniPoly& quot, UniPoly& rem) {
  if (b.is_zero()) fail("division_by_zero", "polynomial division by zero");
  std::vector<GaussianRational> r = a.coeffs_;
  long db = b.degree();
  std::vector<GaussianRational> q;
  if (a.degree() >= db) q.assign(static_cast<std::size_t>(a.degree() - db) + 1, GaussianRational());
  GaussianRational inv_lead = b.lead().inv();
  for (long k = a.degree(); k >= db; --k) {
    GaussianRational& top = r[static_cast<std::size_t>(k)];
    if (top.is_zero()) continue;
    GaussianRational f = top * inv_lead;
    q[static_cast<std::size_t>(k - db)] = f;
    for (long j = 0; j <= db; ++j) r[static_cast<std::size_t>(k - db + j)] -= f * b.coeff(j);
  }
  quot = UniPoly(std::move(q));
  rem = UniPoly(std::move(r));
}

UniPoly gcd_monic(UniPoly a, UniPoly b) {
  while (!b.is_zero()) {
    UniPoly q, r;
    UniPoly::divmod(a, b, q, r);
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

UniPoly squarefree_part(const UniPoly& p) {
  if (p.degree() <= 0) return p;
  UniPoly g = gcd_monic(p, p.derivative());
  if (g.degree() <= 0) return p;
  UniPoly q, r;
  UniPoly::divmod(p, g, q, r);
  return q;
}

RationalPoly::RationalPoly(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) { normalize(); }

void RationalPoly::normalize() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Rational RationalPoly::eval(const Rational& x) const {
  Rational out = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) out = out * x + *it;
  return out;
}

RationalPoly RationalPoly::derivative() const {
  if (coeffs_.size() <= 1) return RationalPoly();
  std::vector<Rational> c(coeffs_.size() - 1);
  for (std::size_t k = 1; k < coeffs_.size(); ++k) c[k - 1] = coeffs_[k] * static_cast<long>(k);
  return RationalPoly(std::move(c));
}

RationalPoly operator+(const RationalPoly& a, const RationalPoly& b) {
  std::vector<Rational> c(std::max(a.coeffs_.size(), b.coeffs_.size()), Rational(0));
  for (std::size_t k = 0; k < a.coeffs_.size(); ++k) c[k] += a.coeffs_[k];
  for (std::size_t k = 0; k < b.coeffs_.size(); ++k) c[k] += b.coeffs_[k];
  return RationalPoly(std::move(c));
}

RationalPoly operator-(const RationalPoly& a, const RationalPoly& b) {
  std::vector<Rational> c(std::max(a.coeffs_.size(), b.coeffs_.size()), Rational(0));
  for (std::size_t k = 0; k < a.coeffs_.size(); ++k) c[k] += a.coeffs_[k];
  for (std::size_t k = 0; k < b.coeffs_.size(); ++k) c[k] -= b.coeffs_[k];
  return RationalPoly(std::move(c));
}

RationalPoly operator*(const RationalPoly& a, const RationalPoly& b) {
  if (a.is_zero() || b.is_zero()) return RationalPoly();
  std::vector<Rational> c(a.coeffs_.size() + b.coeffs_.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
  return RationalPoly(std::move(c));
}

RationalPoly RationalPoly::scaled(const Rational& factor) const {
  std::vector<Rational> c(coeffs_.size());
  for (std::size_t k = 0; k < coeffs_.size(); ++k) c[k] = coeffs_[k] * factor;
  return RationalPoly(std::move(c));
}

RationalPoly RationalPoly::remainder(const RationalPoly& a, const RationalPoly& b) {
  if (b.is_zero()) fail("division_by_zero", "polynomial division by zero");
  std::vector<Rational> r = a.coeffs_;
  long db = b.degree();
  Rational inv_lead = 1 / b.coeffs_.back();
  for (long k = a.degree(); k >= db; --k) {
    Rational& top = r[static_cast<std::size_t>(k)];
    if (top == 0) continue;
    Rational f = top * inv_lead;
    for (long j = 0; j <= db; ++j)
      r[static_cast<std::size_t>(k - db + j)] -= f * b.coeffs_[static_cast<std::size_t>(j)];
  }
  return RationalPoly(std::move(r));
}

RationalPoly gcd_rational(RationalPoly a, RationalPoly b) {
  while (!b.is_zero()) {
    RationalPoly r = RationalPoly::remainder(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

namespace {

/* Sign changes in the Sturm chain evaluated at x (zeros skipped). */
long sign_changes_at(const std::vector<RationalPoly>& chain, const Rational& x, bool at_plus_inf,
                     bool at_minus_inf) {
  long changes = 0;
  int prev = 0;
  for (const RationalPoly& p : chain) {
    int s;
    if (at_plus_inf || at_minus_inf) {
      if (p.is_zero()) continue;
      s = sign_of(p.coeffs().back());
      if (at_minus_inf && p.degree() % 2 == 1) s = -s;
    } else {
      s = sign_of(p.eval(x));
    }
    if (s == 0) continue;
    if (prev != 0 && s != prev) ++changes;
    prev = s;
  }
  return changes;
}

}  // namespace

long distinct_real_roots(const RationalPoly& p) {
  if (p.is_zero()) fail("zero_polynomial", "root counting needs a nonzero polynomial");
  RationalPoly g = gcd_rational(p, p.derivative());
  RationalPoly sf = p;
  if (g.degree() > 0) {
    /* Divide out repeated factors; remainder is exactly zero by construction. */
    std::vector<Rational> q(static_cast<std::size_t>(p.degree() - g.degree()) + 1, Rational(0));
    std::vector<Rational> r = p.coeffs();
    Rational inv_lead = 1 / g.coeffs().back();
    for (long k = p.degree(); k >= g.degree(); --k) {
      Rational top = r[static_cast<std::size_t>(k)];
      if (top == 0) continue;
      Rational f = top * inv_lead;
      q[static_cast<std::size_t>(k - g.degree())] = f;
      for (long j = 0; j <= g.degree(); ++j)
        r[static_cast<std::size_t>(k - g.degree() + j)] -= f * g.coeffs()[static_cast<std::size_t>(j)];
    }
    sf = RationalPoly(std::move(q));
  }
  if (sf.degree() <= 0) return 0;
  std::vector<RationalPoly> chain{sf, sf.derivative()};
  while (!chain.back().is_zero() && chain.back().degree() > 0) {
    RationalPoly r = RationalPoly::remainder(chain[chain.size() - 2], chain.back());
    chain.push_back(r.scaled(-1));
  }
  return sign_changes_at(chain, 0, false, true) - sign_changes_at(chain, 0, true, false);
}

}  // namespace bfred
