#include "nuframe/expr.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

#include "nuframe/errors.hpp"

namespace nuframe {

using detail::ExprNode;
using cplx = std::complex<double>;

namespace {

constexpr double kSqrtImagTol = 1e-12;

}  // namespace

struct ExprFactory {
  static FreqExpr make(ExprNode node) {
    node.count = 1;
    for (const auto& a : node.args) node.count += a.node_count();
    return FreqExpr(std::make_shared<const ExprNode>(std::move(node)));
  }

  static const ExprNode& node(const FreqExpr& e) { return *e.node_; }
};

FreqExpr::FreqExpr() : FreqExpr(fx::constant(Rational(0))) {}

NodeKind FreqExpr::kind() const noexcept { return node_->kind; }

const Rational& FreqExpr::rational() const {
  if (node_->kind != NodeKind::Rational && node_->kind != NodeKind::Scale) {
    throw Error(ErrorCode::InvalidArgument, "node has no rational payload");
  }
  return node_->q;
}

double FreqExpr::real() const {
  if (node_->kind != NodeKind::Real) {
    throw Error(ErrorCode::InvalidArgument, "node is not a real literal");
  }
  return node_->value;
}

const IndicatorBounds& FreqExpr::bounds() const {
  if (node_->kind != NodeKind::Indicator) {
    throw Error(ErrorCode::InvalidArgument, "node is not an indicator");
  }
  return node_->bounds;
}

std::span<const FreqExpr> FreqExpr::args() const noexcept { return node_->args; }

std::size_t FreqExpr::node_count() const noexcept { return node_->count; }

namespace {

cplx eval_node(const ExprNode& n, double g);

cplx eval_arg(const FreqExpr& e, double g) { return eval_node(ExprFactory::node(e), g); }

cplx eval_node(const ExprNode& n, double g) {
  switch (n.kind) {
    case NodeKind::Rational:
    case NodeKind::Real:
      return {n.value, 0.0};
    case NodeKind::ImaginaryUnit:
      return {0.0, 1.0};
    case NodeKind::Var:
      return {g, 0.0};
    case NodeKind::Sin: {
      const cplx z = eval_arg(n.args[0], g);
      if (z.imag() == 0.0) return {std::sin(z.real()), 0.0};
      return std::sin(z);
    }
    case NodeKind::Cos: {
      const cplx z = eval_arg(n.args[0], g);
      if (z.imag() == 0.0) return {std::cos(z.real()), 0.0};
      return std::cos(z);
    }
    case NodeKind::Sinc: {
      const cplx z = eval_arg(n.args[0], g);
      if (z == cplx(0.0, 0.0)) return {1.0, 0.0};
      if (z.imag() == 0.0) return {std::sin(z.real()) / z.real(), 0.0};
      return std::sin(z) / z;
    }
    case NodeKind::Sqrt: {
      const cplx z = eval_arg(n.args[0], g);
      if (z.real() < -kSqrtImagTol || std::abs(z.imag()) > kSqrtImagTol) {
        throw Error(ErrorCode::NegativeSqrt,
                    "sqrt of (" + std::to_string(z.real()) + ", " +
                        std::to_string(z.imag()) + ") at g = " + std::to_string(g));
      }
      return {std::sqrt(std::max(z.real(), 0.0)), 0.0};
    }
    case NodeKind::Abs2:
      return {std::norm(eval_arg(n.args[0], g)), 0.0};
    case NodeKind::Conj:
      return std::conj(eval_arg(n.args[0], g));
    case NodeKind::Indicator: {
      const bool above = n.bounds.lo_closed ? g >= n.lo_d : g > n.lo_d;
      const bool below = n.bounds.hi_closed ? g <= n.hi_d : g < n.hi_d;
      return {(above && below) ? 1.0 : 0.0, 0.0};
    }
    case NodeKind::Sum: {
      cplx acc = 0.0;
      for (const auto& a : n.args) acc += eval_arg(a, g);
      return acc;
    }
    case NodeKind::Product: {
      cplx acc = 1.0;
      for (const auto& a : n.args) acc *= eval_arg(a, g);
      return acc;
    }
    case NodeKind::Negate:
      return -eval_arg(n.args[0], g);
    case NodeKind::Scale:
      return n.value * eval_arg(n.args[0], g);
    case NodeKind::PositiveReciprocal: {
      const cplx z = eval_arg(n.args[0], g);
      if (!(z.real() > 0.0) || std::abs(z.imag()) > kSqrtImagTol) {
        throw Error(ErrorCode::ThetaNotPositive,
                    "denominator " + std::to_string(z.real()) +
                        " not strictly positive at g = " + std::to_string(g));
      }
      return {1.0 / z.real(), 0.0};
    }
  }
  return {0.0, 0.0};
}

ExprNode unary(NodeKind kind, FreqExpr arg) {
  ExprNode n;
  n.kind = kind;
  n.args.push_back(std::move(arg));
  return n;
}

}  // namespace

cplx FreqExpr::eval(double gamma) const { return eval_node(*node_, gamma); }

namespace fx {

FreqExpr constant(const Rational& q) {
  ExprNode n;
  n.kind = NodeKind::Rational;
  n.q = q;
  n.value = q.to_double();
  return ExprFactory::make(std::move(n));
}

FreqExpr real_constant(double value) {
  if (!std::isfinite(value)) {
    throw Error(ErrorCode::InvalidArgument, "real constant must be finite");
  }
  ExprNode n;
  n.kind = NodeKind::Real;
  n.value = value;
  return ExprFactory::make(std::move(n));
}

FreqExpr imaginary_unit() {
  ExprNode n;
  n.kind = NodeKind::ImaginaryUnit;
  return ExprFactory::make(std::move(n));
}

FreqExpr var() {
  ExprNode n;
  n.kind = NodeKind::Var;
  return ExprFactory::make(std::move(n));
}

FreqExpr sin(FreqExpr arg) { return ExprFactory::make(unary(NodeKind::Sin, std::move(arg))); }
FreqExpr cos(FreqExpr arg) { return ExprFactory::make(unary(NodeKind::Cos, std::move(arg))); }
FreqExpr sinc(FreqExpr arg) { return ExprFactory::make(unary(NodeKind::Sinc, std::move(arg))); }
FreqExpr sqrt(FreqExpr arg) { return ExprFactory::make(unary(NodeKind::Sqrt, std::move(arg))); }
FreqExpr abs2(FreqExpr arg) { return ExprFactory::make(unary(NodeKind::Abs2, std::move(arg))); }
FreqExpr conj(FreqExpr arg) { return ExprFactory::make(unary(NodeKind::Conj, std::move(arg))); }
FreqExpr negate(FreqExpr arg) { return ExprFactory::make(unary(NodeKind::Negate, std::move(arg))); }

FreqExpr positive_reciprocal(FreqExpr arg) {
  return ExprFactory::make(unary(NodeKind::PositiveReciprocal, std::move(arg)));
}

FreqExpr chi(const Rational& lo, const Rational& hi, bool lo_closed, bool hi_closed) {
  if (!(lo < hi)) {
    throw Error(ErrorCode::BadIndicatorBounds,
                "indicator needs lo < hi, got " + lo.str() + ", " + hi.str());
  }
  ExprNode n;
  n.kind = NodeKind::Indicator;
  n.bounds = {lo, hi, lo_closed, hi_closed};
  n.lo_d = lo.to_double();
  n.hi_d = hi.to_double();
  return ExprFactory::make(std::move(n));
}

FreqExpr sum(std::vector<FreqExpr> terms) {
  if (terms.empty()) return constant(Rational(0));
  if (terms.size() == 1) return terms.front();
  ExprNode n;
  n.kind = NodeKind::Sum;
  n.args = std::move(terms);
  return ExprFactory::make(std::move(n));
}

FreqExpr product(std::vector<FreqExpr> factors) {
  if (factors.empty()) return constant(Rational(1));
  if (factors.size() == 1) return factors.front();
  ExprNode n;
  n.kind = NodeKind::Product;
  n.args = std::move(factors);
  return ExprFactory::make(std::move(n));
}

FreqExpr scale(const Rational& factor, FreqExpr arg) {
  ExprNode n = unary(NodeKind::Scale, std::move(arg));
  n.q = factor;
  n.value = factor.to_double();
  return ExprFactory::make(std::move(n));
}

}  // namespace fx

FreqExpr operator+(const FreqExpr& a, const FreqExpr& b) { return fx::sum({a, b}); }
FreqExpr operator-(const FreqExpr& a, const FreqExpr& b) { return fx::sum({a, fx::negate(b)}); }
FreqExpr operator*(const FreqExpr& a, const FreqExpr& b) { return fx::product({a, b}); }
FreqExpr operator-(const FreqExpr& a) { return fx::negate(a); }

namespace {

// Scale(q, x) flattens like the product q * x.
void flatten_into(const FreqExpr& e, NodeKind kind, std::vector<FreqExpr>& out) {
  if (e.kind() == kind) {
    for (const auto& a : e.args()) flatten_into(a, kind, out);
  } else if (kind == NodeKind::Product && e.kind() == NodeKind::Scale) {
    out.push_back(fx::constant(e.rational()));
    flatten_into(e.args().front(), kind, out);
  } else {
    out.push_back(e);
  }
}

bool product_like(NodeKind k) { return k == NodeKind::Product || k == NodeKind::Scale; }

}  // namespace

bool structurally_equal(const FreqExpr& a, const FreqExpr& b) {
  if (a.same_node(b)) return true;
  if (product_like(a.kind()) && product_like(b.kind()) && a.kind() != b.kind()) {
    std::vector<FreqExpr> fa;
    std::vector<FreqExpr> fb;
    flatten_into(a, NodeKind::Product, fa);
    flatten_into(b, NodeKind::Product, fb);
    if (fa.size() != fb.size()) return false;
    for (std::size_t i = 0; i < fa.size(); ++i) {
      if (!structurally_equal(fa[i], fb[i])) return false;
    }
    return true;
  }
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case NodeKind::Rational:
      return a.rational() == b.rational();
    case NodeKind::Real:
      return a.real() == b.real();
    case NodeKind::ImaginaryUnit:
    case NodeKind::Var:
      return true;
    case NodeKind::Indicator:
      return a.bounds() == b.bounds();
    case NodeKind::Scale:
      if (a.rational() != b.rational()) return false;
      break;
    case NodeKind::Sum:
    case NodeKind::Product: {
      std::vector<FreqExpr> fa;
      std::vector<FreqExpr> fb;
      flatten_into(a, a.kind(), fa);
      flatten_into(b, b.kind(), fb);
      if (fa.size() != fb.size()) return false;
      for (std::size_t i = 0; i < fa.size(); ++i) {
        if (!structurally_equal(fa[i], fb[i])) return false;
      }
      return true;
    }
    default:
      break;
  }
  const auto aa = a.args();
  const auto ba = b.args();
  if (aa.size() != ba.size()) return false;
  for (std::size_t i = 0; i < aa.size(); ++i) {
    if (!structurally_equal(aa[i], ba[i])) return false;
  }
  return true;
}

namespace {

std::string render_rational(const Rational& q) {
  if (q.sign() < 0) return "(-" + (-q).str() + ")";
  return q.str();
}

std::string render_real(double v) {
  char buf[512];
  const double mag = std::abs(v);
  auto res = std::to_chars(buf, buf + sizeof(buf), mag, std::chars_format::fixed);
  std::string digits(buf, res.ptr);
  if (digits.find('.') == std::string::npos) digits += ".0";
  return v < 0 ? "(-" + digits + ")" : digits;
}

void render_into(const FreqExpr& e, std::string& out) {
  auto wrap = [&](const char* name, const FreqExpr& arg) {
    out += name;
    out += '(';
    render_into(arg, out);
    out += ')';
  };
  switch (e.kind()) {
    case NodeKind::Rational:
      out += render_rational(e.rational());
      return;
    case NodeKind::Real:
      out += render_real(e.real());
      return;
    case NodeKind::ImaginaryUnit:
      out += 'i';
      return;
    case NodeKind::Var:
      out += 'g';
      return;
    case NodeKind::Sin: wrap("sin", e.args()[0]); return;
    case NodeKind::Cos: wrap("cos", e.args()[0]); return;
    case NodeKind::Sinc: wrap("sinc", e.args()[0]); return;
    case NodeKind::Sqrt: wrap("sqrt", e.args()[0]); return;
    case NodeKind::Abs2: wrap("abs2", e.args()[0]); return;
    case NodeKind::Conj: wrap("conj", e.args()[0]); return;
    case NodeKind::PositiveReciprocal: wrap("recip", e.args()[0]); return;
    case NodeKind::Indicator: {
      const auto& b = e.bounds();
      out += "chi";
      out += b.lo_closed ? '[' : '(';
      out += b.lo.sign() < 0 ? "-" + (-b.lo).str() : b.lo.str();
      out += ',';
      out += b.hi.sign() < 0 ? "-" + (-b.hi).str() : b.hi.str();
      out += b.hi_closed ? ']' : ')';
      return;
    }
    case NodeKind::Sum: {
      out += '(';
      bool first = true;
      for (const auto& a : e.args()) {
        if (a.kind() == NodeKind::Negate) {
          out += first ? "-(" : " - (";
          render_into(a.args()[0], out);
          out += ')';
        } else {
          if (!first) out += " + ";
          render_into(a, out);
        }
        first = false;
      }
      out += ')';
      return;
    }
    case NodeKind::Product: {
      out += '(';
      bool first = true;
      for (const auto& a : e.args()) {
        if (!first) out += '*';
        render_into(a, out);
        first = false;
      }
      out += ')';
      return;
    }
    case NodeKind::Negate:
      out += "-(";
      render_into(e.args()[0], out);
      out += ')';
      return;
    case NodeKind::Scale:
      out += '(';
      out += render_rational(e.rational());
      out += '*';
      render_into(e.args()[0], out);
      out += ')';
      return;
  }
}

}  // namespace

std::string render(const FreqExpr& e) {
  std::string out;
  render_into(e, out);
  return out;
}

namespace {

FreqExpr dilate_node(const FreqExpr& e, const Rational& s) {
  switch (e.kind()) {
    case NodeKind::Rational:
    case NodeKind::Real:
    case NodeKind::ImaginaryUnit:
      return e;
    case NodeKind::Var:
      return fx::scale(s, e);
    case NodeKind::Indicator: {
      const auto& b = e.bounds();
      if (s.sign() > 0) return fx::chi(b.lo / s, b.hi / s, b.lo_closed, b.hi_closed);
      return fx::chi(b.hi / s, b.lo / s, b.hi_closed, b.lo_closed);
    }
    case NodeKind::Scale: {
      const FreqExpr& inner = e.args()[0];
      if (inner.kind() == NodeKind::Var) return fx::scale(e.rational() * s, inner);
      return fx::scale(e.rational(), dilate_node(inner, s));
    }
    case NodeKind::Sum:
    case NodeKind::Product: {
      std::vector<FreqExpr> args;
      args.reserve(e.args().size());
      for (const auto& a : e.args()) args.push_back(dilate_node(a, s));
      return e.kind() == NodeKind::Sum ? fx::sum(std::move(args))
                                       : fx::product(std::move(args));
    }
    case NodeKind::Sin: return fx::sin(dilate_node(e.args()[0], s));
    case NodeKind::Cos: return fx::cos(dilate_node(e.args()[0], s));
    case NodeKind::Sinc: return fx::sinc(dilate_node(e.args()[0], s));
    case NodeKind::Sqrt: return fx::sqrt(dilate_node(e.args()[0], s));
    case NodeKind::Abs2: return fx::abs2(dilate_node(e.args()[0], s));
    case NodeKind::Conj: return fx::conj(dilate_node(e.args()[0], s));
    case NodeKind::Negate: return fx::negate(dilate_node(e.args()[0], s));
    case NodeKind::PositiveReciprocal:
      return fx::positive_reciprocal(dilate_node(e.args()[0], s));
  }
  return e;
}

}  // namespace

FreqExpr dilate_arg(const FreqExpr& e, const Rational& s) {
  if (s.is_zero()) throw Error(ErrorCode::ZeroScale, "dilation factor must be nonzero");
  if (s == Rational(1)) return e;
  return dilate_node(e, s);
}

double essential_sup(const FreqExpr& e, const Rational& a, const Rational& b,
                     int grid_log2) {
  if (!(a < b)) throw Error(ErrorCode::BadInterval, "essential_sup needs a < b");
  if (grid_log2 < 0 || grid_log2 > 30) {
    throw Error(ErrorCode::BadGrid, "grid_log2 out of range");
  }
  const std::size_t n = std::size_t{1} << grid_log2;
  const double lo = a.to_double();
  const double h = ((b - a) / Rational(static_cast<std::int64_t>(n))).to_double();
  double best = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double g = lo + (static_cast<double>(k) + 0.5) * h;
    best = std::max(best, std::abs(e.eval(g)));
  }
  return best;
}

SupportBound SupportBound::intersect(const SupportBound& o) const {
  if (empty || o.empty) return none();
  SupportBound r;
  r.lo = lo;
  if (o.lo && (!r.lo || *o.lo > *r.lo)) r.lo = o.lo;
  r.hi = hi;
  if (o.hi && (!r.hi || *o.hi < *r.hi)) r.hi = o.hi;
  if (r.lo && r.hi && *r.lo > *r.hi) return none();
  return r;
}

SupportBound SupportBound::hull(const SupportBound& o) const {
  if (empty) return o;
  if (o.empty) return *this;
  SupportBound r;
  if (lo && o.lo) r.lo = std::min(*lo, *o.lo);
  if (hi && o.hi) r.hi = std::max(*hi, *o.hi);
  return r;
}

SupportBound SupportBound::scaled(const Rational& s) const {
  if (empty) return none();
  if (s.is_zero()) throw Error(ErrorCode::ZeroScale, "support scale must be nonzero");
  SupportBound r;
  std::optional<Rational> a = lo ? std::optional<Rational>(*lo * s) : std::nullopt;
  std::optional<Rational> b = hi ? std::optional<Rational>(*hi * s) : std::nullopt;
  if (s.sign() > 0) {
    r.lo = a;
    r.hi = b;
  } else {
    r.lo = b;
    r.hi = a;
  }
  return r;
}

bool SupportBound::contained_in(const Rational& a, const Rational& b) const {
  if (empty) return true;
  return lo && hi && *lo >= a && *hi <= b;
}

SupportBound support_bound(const FreqExpr& e) {
  switch (e.kind()) {
    case NodeKind::Rational:
      return e.rational().is_zero() ? SupportBound::none() : SupportBound::all();
    case NodeKind::Real:
      return e.real() == 0.0 ? SupportBound::none() : SupportBound::all();
    case NodeKind::ImaginaryUnit:
    case NodeKind::Var:
    case NodeKind::Cos:
    case NodeKind::Sinc:
    case NodeKind::PositiveReciprocal:
      return SupportBound::all();
    case NodeKind::Indicator:
      return SupportBound::interval(e.bounds().lo, e.bounds().hi);
    case NodeKind::Sin:
    case NodeKind::Sqrt:
    case NodeKind::Abs2:
    case NodeKind::Conj:
    case NodeKind::Negate:
      return support_bound(e.args()[0]);
    case NodeKind::Scale:
      return e.rational().is_zero() ? SupportBound::none() : support_bound(e.args()[0]);
    case NodeKind::Sum: {
      SupportBound acc = SupportBound::none();
      for (const auto& a : e.args()) acc = acc.hull(support_bound(a));
      return acc;
    }
    case NodeKind::Product: {
      SupportBound acc = SupportBound::all();
      for (const auto& a : e.args()) acc = acc.intersect(support_bound(a));
      return acc;
    }
  }
  return SupportBound::all();
}

}  // namespace nuframe
