#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

#include "nuforge/words.hpp"

namespace nuforge::qfield {

// Describes the quadratic field Q(theta), theta the dominant root of
// x^2 - trace*x + det. When the discriminant is a perfect square theta is
// rational and every QNum is kept in pure rational canonical form.
struct FieldDesc {
  long trace = 0;
  long det = 0;
  bool rational = false;
  mpq_class rational_theta;  // set iff rational

  long discriminant() const { return trace * trace - 4 * det; }
  bool operator==(const FieldDesc& o) const {
    return trace == o.trace && det == o.det && rational == o.rational;
  }
};

// Element a + b*theta of Q(theta). Canonical form substitutes theta when the
// field is rational, so b == 0 there. Comparison is the real embedding at
// the dominant root, decided by rational arithmetic only.
class QNum {
 public:
  QNum(mpq_class a, mpq_class b, FieldDesc field);
  static QNum rational(mpq_class r, const FieldDesc& field);
  static QNum integer(long v, const FieldDesc& field);
  static QNum theta(const FieldDesc& field);

  const mpq_class& coeff_a() const { return a_; }
  const mpq_class& coeff_b() const { return b_; }
  const FieldDesc& field() const { return field_; }

  bool is_zero() const { return a_ == 0 && b_ == 0; }
  bool is_rational_value() const { return b_ == 0; }
  int sign() const;
  int cmp(const QNum& other) const;

  QNum operator-() const;
  QNum inverse() const;

  friend QNum operator+(const QNum& x, const QNum& y);
  friend QNum operator-(const QNum& x, const QNum& y);
  friend QNum operator*(const QNum& x, const QNum& y);
  friend QNum operator/(const QNum& x, const QNum& y);

  bool operator==(const QNum& o) const { return cmp(o) == 0; }
  bool operator!=(const QNum& o) const { return cmp(o) != 0; }
  bool operator<(const QNum& o) const { return cmp(o) < 0; }
  bool operator<=(const QNum& o) const { return cmp(o) <= 0; }
  bool operator>(const QNum& o) const { return cmp(o) > 0; }
  bool operator>=(const QNum& o) const { return cmp(o) >= 0; }

  double to_double() const;

  // "p/q" or "p/q + r/s·θ"; canonical, parseable back with the same field.
  std::string exact() const;
  // Fixed-point decimal at `digits` fractional digits, round-half-even.
  std::string decimal(int digits) const;

 private:
  void canonicalize();
  mpq_class a_, b_;
  FieldDesc field_;
};

enum class Tag { minus, neutral, plus };

std::string tag_suffix(Tag t);  // "-", "", "+"

// Point of the extended interval: a value plus a side tag for doubled
// points. For equal values minus sorts before plus.
struct ExtReal {
  QNum value;
  Tag tag = Tag::neutral;

  int cmp(const ExtReal& other) const;
  bool operator==(const ExtReal& o) const { return cmp(o) == 0; }
  bool operator<(const ExtReal& o) const { return cmp(o) < 0; }

  // Rendering: 0 and 1 print bare, otherwise the tag is appended.
  std::string exact() const;
  std::string decimal(int digits) const;
};

struct Interval {
  ExtReal lo;
  ExtReal hi;

  QNum length() const { return hi.value - lo.value; }
  bool contains_value(const QNum& x) const {
    return lo.value <= x && x <= hi.value;
  }
  std::string render() const;  // "[0, 1/2-]"
};

// Field of the dominant eigenvalue of a 2x2 occurrence matrix.
FieldDesc dominant_root(const words::IntMatrix& M);

// Exact eigenvector of M for the dominant eigenvalue, normalized to sum 1.
// Entries must be positive; the kernel must be one-dimensional.
std::vector<QNum> solve_frequencies(const words::IntMatrix& M,
                                    const FieldDesc& field);

}  // namespace nuforge::qfield
