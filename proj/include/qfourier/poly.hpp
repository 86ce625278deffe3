#pragma once

#include <gmpxx.h>

#include <map>
#include <memory>
#include <string>
#include <vector>

namespace qfourier {

using Rational = mpq_class;
using Monomial = std::vector<int>;

std::string toString(const Rational& r);
/// Canonicalized a/b.
Rational frac(long a, long b);
Rational parseRational(const std::string& s);

/// Named generators with even cohomological degrees.
struct Vars {
  std::vector<std::string> names;
  std::vector<int> degrees;

  int size() const { return static_cast<int>(names.size()); }
  int index(const std::string& name) const;  // throws Input on unknown name
  int find(const std::string& name) const;   // -1 if absent
  bool operator==(const Vars& o) const { return names == o.names && degrees == o.degrees; }
};
using VarsPtr = std::shared_ptr<const Vars>;

/// Degrees default to 2 for every generator.
VarsPtr makeVars(std::vector<std::string> names, std::vector<int> degrees = {});
bool sameVars(const VarsPtr& a, const VarsPtr& b);

class Poly {
 public:
  using Terms = std::map<Monomial, Rational>;

  Poly() = default;
  explicit Poly(VarsPtr vars);
  Poly(VarsPtr vars, const Rational& c);

  static Poly var(VarsPtr vars, int i);
  static Poly var(VarsPtr vars, const std::string& name);
  static Poly monomial(VarsPtr vars, const Monomial& m, const Rational& c = 1);
  /// a·x + c for coefficient vector a.
  static Poly linear(VarsPtr vars, const std::vector<Rational>& a, const Rational& c = 0);

  const VarsPtr& vars() const { return vars_; }
  const Terms& terms() const { return terms_; }
  bool isZero() const { return terms_.empty(); }
  bool isConstant() const;
  Rational constantTerm() const;
  Rational coefficient(const Monomial& m) const;

  /// Cohomological degree of a monomial, and max / min over terms.
  int monomialDegree(const Monomial& m) const;
  int degree() const;
  int lowDegree() const;
  bool isHomogeneous() const;
  int degreeIn(int var) const;
  Poly homogeneousPart(int deg) const;

  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Poly& o);
  Poly& operator*=(const Rational& c);
  Poly operator-() const;
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(Poly a, const Rational& c) { return a *= c; }
  friend Poly operator*(const Rational& c, Poly a) { return a *= c; }
  bool operator==(const Poly& o) const;
  bool operator!=(const Poly& o) const { return !(*this == o); }

  Poly pow(unsigned k) const;
  Poly derivative(int var) const;
  /// Replace generator i by images[i]; images share a target variable set.
  Poly substitute(const std::vector<Poly>& images) const;
  /// Same polynomial over a larger variable set containing all names of vars().
  Poly embed(const VarsPtr& target) const;
  /// Coefficients of powers of one generator (polynomials in the others).
  std::vector<Poly> collect(int var) const;

  /// Exact division by a polynomial of degree one in var; false if not divisible.
  bool divideLinear(const Poly& linear, int var, Poly& quotient) const;

  std::string str() const;

 private:
  void addTerm(const Monomial& m, const Rational& c);
  friend class PolyBuilder;

  VarsPtr vars_;
  Terms terms_;
};

}  // namespace qfourier
