#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/eigen.hpp>

#include <Eigen/Core>

#include <string>
#include <string_view>

namespace carpetq {

/// Exact fraction, always stored in lowest terms with a positive denominator.
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;
using BigInt = boost::multiprecision::cpp_int;

template <typename Scalar>
using Vec2 = Eigen::Matrix<Scalar, 2, 1>;

template <typename Scalar>
using Mat2 = Eigen::Matrix<Scalar, 2, 2>;

/// A point of the unit square with exact coordinates.
using Point = Vec2<Rational>;

inline Point make_point(const Rational& x, const Rational& y) { return Point(x, y); }

/// "p/q", or "p" when the denominator is 1.
std::string to_string(const Rational& r);

/// "(x, y)" with both coordinates formatted by to_string.
std::string to_string(const Point& p);

/// Accepts "p/q", "p", and signed forms. Throws ParseError otherwise.
Rational parse_rational(std::string_view text);

double to_double(const Rational& r);

Rational pow_rational(const Rational& base, unsigned exponent);

}  // namespace carpetq
