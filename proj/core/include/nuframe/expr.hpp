#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "nuframe/rational.hpp"

namespace nuframe {

enum class NodeKind {
  Rational,
  Real,
  ImaginaryUnit,
  Var,
  Sin,
  Cos,
  Sinc,
  Sqrt,
  Abs2,
  Conj,
  Indicator,
  Sum,
  Product,
  Negate,
  Scale,
  // Only produced by oep_normalize; absent from the text grammar.
  PositiveReciprocal,
};

struct IndicatorBounds {
  Rational lo;
  Rational hi;
  bool lo_closed = false;
  bool hi_closed = true;

  friend bool operator==(const IndicatorBounds&, const IndicatorBounds&) = default;
};

class FreqExpr;

namespace detail {
struct ExprNode;
}

/// Immutable closed-form function of the frequency variable g, evaluated in
/// complex double precision. Copies share the underlying tree.
class FreqExpr {
 public:
  /// The zero constant.
  FreqExpr();

  NodeKind kind() const noexcept;
  /// Literal value of a Rational node, or the coefficient of a Scale node.
  const Rational& rational() const;
  double real() const;
  const IndicatorBounds& bounds() const;
  std::span<const FreqExpr> args() const noexcept;
  std::size_t node_count() const noexcept;

  /// Pointwise value. Sinc(0) = 1; indicator brackets are honoured at the
  /// bounds. Throws NegativeSqrt / ThetaNotPositive on domain violations.
  std::complex<double> eval(double gamma) const;
  std::complex<double> operator()(double gamma) const { return eval(gamma); }

  /// Pointer identity of the shared tree.
  bool same_node(const FreqExpr& other) const noexcept { return node_ == other.node_; }

 private:
  friend struct ExprFactory;
  explicit FreqExpr(std::shared_ptr<const detail::ExprNode> node)
      : node_(std::move(node)) {}

  std::shared_ptr<const detail::ExprNode> node_;
};

/// Constructors for every node kind.
namespace fx {

FreqExpr constant(const Rational& q);
FreqExpr real_constant(double value);
FreqExpr imaginary_unit();
FreqExpr var();
FreqExpr sin(FreqExpr arg);
FreqExpr cos(FreqExpr arg);
FreqExpr sinc(FreqExpr arg);
FreqExpr sqrt(FreqExpr arg);
FreqExpr abs2(FreqExpr arg);
FreqExpr conj(FreqExpr arg);
/// Throws BadIndicatorBounds unless lo < hi.
FreqExpr chi(const Rational& lo, const Rational& hi, bool lo_closed, bool hi_closed);
FreqExpr sum(std::vector<FreqExpr> terms);
FreqExpr product(std::vector<FreqExpr> factors);
FreqExpr negate(FreqExpr arg);
FreqExpr scale(const Rational& factor, FreqExpr arg);
/// 1/arg for an arg that must evaluate real and strictly positive; any
/// other value raises ThetaNotPositive at evaluation time.
FreqExpr positive_reciprocal(FreqExpr arg);

}  // namespace fx

FreqExpr operator+(const FreqExpr& a, const FreqExpr& b);
FreqExpr operator-(const FreqExpr& a, const FreqExpr& b);
FreqExpr operator*(const FreqExpr& a, const FreqExpr& b);
FreqExpr operator-(const FreqExpr& a);

/// Structural equality with nested Sum/Product flattened; Scale(q, x) compares
/// as the product q * x. No other normalization is applied.
bool structurally_equal(const FreqExpr& a, const FreqExpr& b);

/// Text in the parser grammar. PositiveReciprocal renders as "recip(...)",
/// which the parser rejects.
std::string render(const FreqExpr& e);

/// e(s * g) as a new tree: the variable picks up a Scale(s) and indicator
/// bounds are divided by s (brackets swap when s < 0). s = 1 returns e.
FreqExpr dilate_arg(const FreqExpr& e, const Rational& s);

/// Max of |e| over the 2^grid_log2 midpoints of [a, b]. A lower estimate of
/// the essential supremum.
double essential_sup(const FreqExpr& e, const Rational& a, const Rational& b,
                     int grid_log2);

/// Conservative closed interval outside of which e is identically zero.
/// Missing bounds mean unbounded in that direction.
struct SupportBound {
  bool empty = false;
  std::optional<Rational> lo;
  std::optional<Rational> hi;

  static SupportBound none() { return {true, std::nullopt, std::nullopt}; }
  static SupportBound all() { return {}; }
  static SupportBound interval(Rational a, Rational b) { return {false, a, b}; }

  bool bounded() const { return empty || (lo && hi); }
  SupportBound intersect(const SupportBound& other) const;
  SupportBound hull(const SupportBound& other) const;
  /// {s * x : x in this} for s != 0.
  SupportBound scaled(const Rational& s) const;
  bool contained_in(const Rational& a, const Rational& b) const;
};

SupportBound support_bound(const FreqExpr& e);

namespace detail {

struct ExprNode {
  NodeKind kind = NodeKind::Rational;
  Rational q;             // Rational literal or Scale factor
  double value = 0.0;     // Real literal, or q as double
  IndicatorBounds bounds;
  double lo_d = 0.0;
  double hi_d = 0.0;
  std::vector<FreqExpr> args;
  std::size_t count = 1;
};

}  // namespace detail

}  // namespace nuframe
