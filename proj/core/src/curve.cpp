#include "arcjac/curve.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "arcjac/error.hpp"

namespace arcjac {

Polynomial::Polynomial(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Rational Polynomial::coeff(int k) const {
  if (k < 0 || k >= static_cast<int>(coeffs_.size())) return Rational(0);
  return coeffs_[k];
}

Rational Polynomial::leading() const {
  if (coeffs_.empty()) throw ValidationError("leading coefficient of the zero polynomial");
  return coeffs_.back();
}

Rational Polynomial::operator()(const Rational& x) const {
  Rational v(0);
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) v = v * x + *it;
  return v;
}

TruncatedSeries Polynomial::operator()(const TruncatedSeries& a) const {
  TruncatedSeries v(a.num_vars(), a.order());
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    v = v * a;
    if (*it != 0) v = v + TruncatedSeries::constant(a.num_vars(), a.order(), *it);
  }
  return v;
}

Polynomial operator+(const Polynomial& p, const Polynomial& q) {
  std::vector<Rational> c(std::max(p.coeffs().size(), q.coeffs().size()), Rational(0));
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = p.coeff(static_cast<int>(i)) + q.coeff(static_cast<int>(i));
  return Polynomial(std::move(c));
}

Polynomial operator-(const Polynomial& p, const Polynomial& q) {
  std::vector<Rational> c(std::max(p.coeffs().size(), q.coeffs().size()), Rational(0));
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = p.coeff(static_cast<int>(i)) - q.coeff(static_cast<int>(i));
  return Polynomial(std::move(c));
}

Polynomial operator*(const Polynomial& p, const Polynomial& q) {
  if (p.is_zero() || q.is_zero()) return Polynomial();
  std::vector<Rational> c(p.coeffs().size() + q.coeffs().size() - 1, Rational(0));
  for (std::size_t i = 0; i < p.coeffs().size(); ++i)
    for (std::size_t j = 0; j < q.coeffs().size(); ++j) c[i + j] += p.coeffs()[i] * q.coeffs()[j];
  return Polynomial(std::move(c));
}

Polynomial operator*(const Rational& c, const Polynomial& p) {
  std::vector<Rational> r(p.coeffs());
  for (Rational& v : r) v *= c;
  return Polynomial(std::move(r));
}

Polynomial poly_derivative(const Polynomial& p) {
  if (p.degree() < 1) return Polynomial();
  std::vector<Rational> c(p.degree());
  for (int k = 1; k <= p.degree(); ++k) c[k - 1] = Rational(k) * p.coeff(k);
  return Polynomial(std::move(c));
}

Polynomial poly_rem(const Polynomial& p, const Polynomial& q) {
  if (q.is_zero()) throw ValidationError("polynomial division by zero");
  std::vector<Rational> r(p.coeffs());
  int dq = q.degree();
  while (static_cast<int>(r.size()) - 1 >= dq) {
    Rational f = r.back() / q.leading();
    int shift = static_cast<int>(r.size()) - 1 - dq;
    for (int i = 0; i <= dq; ++i) r[shift + i] -= f * q.coeff(i);
    while (!r.empty() && r.back() == 0) r.pop_back();
    if (r.empty()) break;
  }
  return Polynomial(std::move(r));
}

Polynomial poly_gcd(Polynomial p, Polynomial q) {
  while (!q.is_zero()) {
    Polynomial r = poly_rem(p, q);
    p = std::move(q);
    q = std::move(r);
  }
  if (p.is_zero()) return p;
  return (Rational(1) / p.leading()) * p;
}

bool is_squarefree(const Polynomial& p) {
  if (p.degree() < 1) return !p.is_zero();
  return poly_gcd(p, poly_derivative(p)).degree() == 0;
}

Polynomial poly_shift(const Polynomial& p, const Rational& x0) {
  // Repeated Horner passes; afterwards a[k] is the u^k coefficient of p(x0 + u).
  std::vector<Rational> a(p.coeffs());
  int n = static_cast<int>(a.size());
  for (int k = 0; k < n; ++k)
    for (int i = n - 2; i >= k; --i) a[i] += x0 * a[i + 1];
  return Polynomial(std::move(a));
}

HyperellipticCurve make_curve(const std::vector<Rational>& s_coefficients) {
  Polynomial s(s_coefficients);
  int deg = s.degree();
  if (deg < 3 || deg % 2 == 0)
    throw ValidationError("curve polynomial must have odd degree >= 3");
  if (!is_squarefree(s)) throw ValidationError("curve polynomial must be squarefree");
  return HyperellipticCurve(std::move(s), (deg - 1) / 2);
}

HyperellipticCurve curve_through_points(const std::vector<AffinePoint>& points, int genus) {
  if (genus < 1) throw ValidationError("genus must be >= 1");
  int k = static_cast<int>(points.size());
  int deg = 2 * genus + 1;
  if (k < 1 || k > deg) throw ValidationError("need between 1 and 2g+1 points");
  for (int a = 0; a < k; ++a) {
    if (points[a].y == 0) throw ValidationError("base points must have nonzero y");
    for (int b = a + 1; b < k; ++b)
      if (points[a].x == points[b].x) throw ValidationError("duplicate x-values");
  }

  // Interpolate c_0..c_{k-1} with sum_i c_i x_l^i = y_l^2 - x_l^deg.
  Matrix<Rational> vand(k, k, Rational(0));
  std::vector<Rational> rhs(k, Rational(0));
  for (int l = 0; l < k; ++l) {
    Rational p(1);
    for (int i = 0; i < k; ++i) {
      vand.at(l, i) = p;
      p *= points[l].x;
    }
    Rational xd(1);
    for (int i = 0; i < deg; ++i) xd *= points[l].x;
    rhs[l] = points[l].y * points[l].y - xd;
  }
  std::vector<Rational> c = solve_linear(vand, rhs);

  std::vector<Rational> base(deg + 1, Rational(0));
  for (int i = 0; i < k; ++i) base[i] = c[i];
  base[deg] = 1;
  Polynomial s(base);

  // prod (x - x_l) vanishes at every base point, so adding multiples keeps
  // the interpolation conditions.
  Polynomial vanish({Rational(1)});
  for (int l = 0; l < k; ++l) vanish = vanish * Polynomial({-points[l].x, Rational(1)});

  const int budget = 32;
  for (int attempt = 0; attempt <= budget; ++attempt) {
    Polynomial cand = s + Rational(attempt) * vanish;
    if (cand.degree() != deg) continue;  // leading cancellation when k == 2g+1
    if (is_squarefree(cand)) {
      HyperellipticCurve curve = make_curve(cand.coeffs());
      for (const auto& p : points)
        if (!curve.contains(p)) throw ValidationError("interpolation failed to hit a base point");
      return curve;
    }
  }
  throw ExhaustionError("no squarefree interpolant within the retry budget", 0, budget);
}

TruncatedSeries local_expansion(const HyperellipticCurve& c, const AffinePoint& p, int order) {
  if (!c.contains(p)) throw ValidationError("point is not on the curve");
  if (p.y == 0) throw ValidationError("Weierstrass center: local square root needs y != 0");
  Polynomial shifted = poly_shift(c.s(), p.x);
  TruncatedSeries su(1, order);
  for (int k = 0; k <= shifted.degree() && k < order; ++k)
    su.add_term(Exponents{k}, shifted.coeff(k));
  return sqrt_unit(su, p.y);
}

TruncatedSeries FormalArc::x_series() const {
  return displacement +
         TruncatedSeries::constant(displacement.num_vars(), displacement.order(), center.x);
}

FormalArc make_arc(const HyperellipticCurve& c, const AffinePoint& center,
                   const TruncatedSeries& displacement) {
  if (displacement.constant_term() != 0)
    throw ValidationError("arc displacement must have zero constant term");
  TruncatedSeries y_local = local_expansion(c, center, displacement.order());
  // substitute is a ring homomorphism, so y^2 = s(x_c + u) turns into
  // y(xi)^2 = s(x_c + xi) exactly.
  TruncatedSeries y = substitute(y_local, displacement);
  return FormalArc{center, displacement, std::move(y)};
}

DifferentialForm pullback(const HyperellipticCurve& c, int j, const FormalArc& arc) {
  if (j < 1 || j > c.genus()) throw ValidationError("differential index out of range");
  if (!c.contains(arc.center)) throw ValidationError("arc center is not on the curve");
  TruncatedSeries coeff =
      pow(arc.x_series(), j - 1) * invert_unit(Rational(2) * arc.y_series);
  return normal_form(coeff * d(arc.displacement));
}

Matrix<TruncatedSeries> ratio_matrix(const HyperellipticCurve& c,
                                     const std::vector<AffinePoint>& points, int order) {
  int g = c.genus();
  if (static_cast<int>(points.size()) != g)
    throw ValidationError("ratio_matrix needs exactly genus points");
  Matrix<TruncatedSeries> m(g, g, TruncatedSeries(1, order));
  for (int l = 0; l < g; ++l) {
    TruncatedSeries y = local_expansion(c, points[l], order);  // checks the center
    TruncatedSeries inv2y = invert_unit(Rational(2) * y);
    TruncatedSeries xu = TruncatedSeries::constant(1, order, points[l].x) +
                         TruncatedSeries::variable(1, order, 0);
    TruncatedSeries power = TruncatedSeries::constant(1, order, 1);
    for (int i = 0; i < g; ++i) {
      m.at(i, l) = power * inv2y;
      power = power * xu;
    }
  }
  return m;
}

std::vector<AffinePoint> find_rational_points(const HyperellipticCurve& c, int bound) {
  std::vector<AffinePoint> out;
  int den_max = std::max(bound, 1);
  for (int den = 1; den <= den_max; ++den) {
    for (int num = -bound; num <= bound; ++num) {
      if (std::gcd(std::abs(num), den) != 1) continue;
      Rational x = Rational(num) / Rational(den);
      Rational v = c.s()(x);
      if (v == 0) continue;  // Weierstrass point, no valid arc center
      Rational y;
      if (!rational_sqrt(v, &y)) continue;
      out.push_back(AffinePoint{x, y});
      out.push_back(AffinePoint{x, -y});
    }
  }
  return out;
}

}  // namespace arcjac
