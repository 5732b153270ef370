#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "nuframe/expr.hpp"
#include "nuframe/rational.hpp"

namespace nuframe {

/// A test signal given by its Fourier transform and a declared support
/// [a, b] outside of which fhat vanishes.
struct SignalSpec {
  FreqExpr fhat;
  Rational a;
  Rational b;
  std::string label;
};

/// (1 - cos(2 pi (g - a) / (b - a))) / 2 on [a, b], zero elsewhere.
/// Continuous, with squared norm 3/8 (b - a).
SignalSpec hann_bump(const Rational& a, const Rational& b);

/// Indicator of (a, b]; squared norm b - a.
SignalSpec indicator_signal(const Rational& a, const Rational& b);

/// hann_bump(1/64, 1/16), hann_bump(9/64, 31/64), indicator_signal(1/8, 1/2),
/// hann_bump(1/4, 2), in that order.
std::vector<SignalSpec> catalog();

/// Max |fhat| over 64 midpoints on each side just outside [a, b] (each
/// probe band is as wide as the support). Zero for a sound declaration.
double support_probe_max(const SignalSpec& s);

/// "bump(a,b)", "ind(a,b)", or a raw expression whose support bound is
/// finite (used as the declared support). Throws UnsupportedSignal for raw
/// expressions without a bounded support.
SignalSpec signal_from_designator(std::string_view text);

}  // namespace nuframe
