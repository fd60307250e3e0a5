#include "nuforge/qfield.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "nuforge/errors.hpp"

namespace nuforge::qfield {

namespace {
constexpr const char* kStage = "qfield";

void require_same_field(const FieldDesc& x, const FieldDesc& y) {
  if (!(x == y)) throw_internal(kStage, "field mismatch");
}

long isqrt_ll(long v) {
  if (v < 0) return -1;
  long r = static_cast<long>(std::sqrt(static_cast<double>(v)));
  while (r > 0 && r * r > v) --r;
  while ((r + 1) * (r + 1) <= v) ++r;
  return r;
}
}  // namespace

QNum::QNum(mpq_class a, mpq_class b, FieldDesc field)
    : a_(std::move(a)), b_(std::move(b)), field_(std::move(field)) {
  canonicalize();
}

void QNum::canonicalize() {
  if (field_.rational && b_ != 0) {
    a_ += b_ * field_.rational_theta;
    b_ = 0;
  }
}

QNum QNum::rational(mpq_class r, const FieldDesc& field) {
  return QNum(std::move(r), mpq_class(0), field);
}

QNum QNum::integer(long v, const FieldDesc& field) {
  return QNum(mpq_class(v), mpq_class(0), field);
}

QNum QNum::theta(const FieldDesc& field) {
  return QNum(mpq_class(0), mpq_class(1), field);
}

int QNum::sign() const {
  if (b_ == 0) return sgn(a_);
  if (a_ == 0) return sgn(b_);  // theta > 0
  int sa = sgn(a_), sb = sgn(b_);
  if (sa == sb) return sa;
  // a and b oppose: sign(a + b*theta) = sign(b) * sign(theta - r), r = -a/b.
  mpq_class r = -a_ / b_;
  mpq_class pr = r * r - field_.trace * r + field_.det;
  int side;
  if (pr < 0) {
    side = 1;  // r strictly between the roots, theta > r
  } else if (pr > 0) {
    // r outside the root interval; the vertex trace/2 separates the sides.
    side = (2 * r < field_.trace) ? 1 : -1;
  } else {
    // A rational root of the minimal polynomial contradicts irrationality.
    throw_internal(kStage, "rational root in irrational field");
  }
  return sb * side;
}

int QNum::cmp(const QNum& other) const {
  require_same_field(field_, other.field_);
  return (*this - other).sign();
}

QNum QNum::operator-() const { return QNum(-a_, -b_, field_); }

QNum operator+(const QNum& x, const QNum& y) {
  require_same_field(x.field_, y.field_);
  return QNum(x.a_ + y.a_, x.b_ + y.b_, x.field_);
}

QNum operator-(const QNum& x, const QNum& y) {
  require_same_field(x.field_, y.field_);
  return QNum(x.a_ - y.a_, x.b_ - y.b_, x.field_);
}

QNum operator*(const QNum& x, const QNum& y) {
  require_same_field(x.field_, y.field_);
  // (a1 + b1 t)(a2 + b2 t) with t^2 = trace*t - det.
  mpq_class cross = x.b_ * y.b_;
  mpq_class a = x.a_ * y.a_ - mpq_class(x.field_.det) * cross;
  mpq_class b = x.a_ * y.b_ + x.b_ * y.a_ + mpq_class(x.field_.trace) * cross;
  return QNum(std::move(a), std::move(b), x.field_);
}

QNum QNum::inverse() const {
  if (is_zero()) throw_internal(kStage, "division by zero");
  if (b_ == 0) return QNum(1 / a_, mpq_class(0), field_);
  // 1/(a + b th) = (a + b*trace - b th) / (a^2 + a b trace + b^2 det).
  mpq_class norm = a_ * a_ + a_ * b_ * field_.trace + b_ * b_ * field_.det;
  if (norm == 0) throw_internal(kStage, "zero norm for nonzero element");
  return QNum((a_ + b_ * field_.trace) / norm, -b_ / norm, field_);
}

QNum operator/(const QNum& x, const QNum& y) { return x * y.inverse(); }

double QNum::to_double() const {
  mpf_class acc(a_, 192);
  if (b_ != 0) {
    mpf_class disc(field_.discriminant(), 192);
    mpf_class root(0, 192);
    mpf_sqrt(root.get_mpf_t(), disc.get_mpf_t());
    mpf_class theta = (mpf_class(field_.trace, 192) + root) / 2;
    acc += mpf_class(b_, 192) * theta;
  }
  return acc.get_d();
}

std::string QNum::exact() const {
  if (b_ == 0) return a_.get_str();
  std::string theta_part;
  mpq_class abs_b = abs(b_);
  if (abs_b == 1)
    theta_part = "θ";
  else
    theta_part = abs_b.get_str() + "·θ";
  if (a_ == 0) return (sgn(b_) < 0 ? "-" : "") + theta_part;
  return a_.get_str() + (sgn(b_) < 0 ? " - " : " + ") + theta_part;
}

std::string QNum::decimal(int digits) const {
  if (digits < 1) digits = 1;
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(digits));
  QNum scaled = *this * QNum::rational(mpq_class(scale), field_);

  // Seed with a float estimate, then settle exactly.
  mpz_class n;
  {
    std::size_t bits = 256;
    bits += mpz_sizeinbase(scaled.a_.get_num().get_mpz_t(), 2);
    bits += mpz_sizeinbase(scaled.a_.get_den().get_mpz_t(), 2);
    if (scaled.b_ != 0) {
      bits += mpz_sizeinbase(scaled.b_.get_num().get_mpz_t(), 2);
      bits += mpz_sizeinbase(scaled.b_.get_den().get_mpz_t(), 2);
    }
    mpf_class acc(scaled.a_, bits);
    if (scaled.b_ != 0) {
      mpf_class disc(field_.discriminant(), bits);
      mpf_class root(0, bits);
      mpf_sqrt(root.get_mpf_t(), disc.get_mpf_t());
      mpf_class theta = (mpf_class(field_.trace, bits) + root) / 2;
      acc += mpf_class(scaled.b_, bits) * theta;
    }
    mpf_class shifted = acc + mpf_class(0.5, bits);
    mpf_class fl(0, bits);
    mpf_floor(fl.get_mpf_t(), shifted.get_mpf_t());
    n = mpz_class(fl);
  }

  auto cmp_half = [&](const mpz_class& center, int dir) {
    // compare scaled with center + dir/2 exactly
    mpq_class edge = mpq_class(center) + mpq_class(dir, 2);
    return scaled.cmp(QNum::rational(edge, field_));
  };
  int guard = 0;
  while (cmp_half(n, +1) > 0) {
    ++n;
    if (++guard > 8) throw_internal(kStage, "decimal rounding did not settle");
  }
  while (cmp_half(n, -1) < 0) {
    --n;
    if (++guard > 16) throw_internal(kStage, "decimal rounding did not settle");
  }
  if (cmp_half(n, -1) == 0 && mpz_odd_p(n.get_mpz_t())) --n;
  if (cmp_half(n, +1) == 0 && mpz_odd_p(n.get_mpz_t())) ++n;

  bool negative = n < 0;
  mpz_class mag = abs(n);
  mpz_class ip = mag / scale;
  mpz_class fp = mag % scale;
  std::string frac = fp.get_str();
  frac.insert(frac.begin(), static_cast<std::size_t>(digits) - frac.size(), '0');
  return (negative ? "-" : "") + ip.get_str() + "." + frac;
}

std::string tag_suffix(Tag t) {
  switch (t) {
    case Tag::minus: return "-";
    case Tag::neutral: return "";
    case Tag::plus: return "+";
  }
  return "";
}

namespace {
int tag_rank(Tag t) {
  switch (t) {
    case Tag::minus: return 0;
    case Tag::neutral: return 1;
    case Tag::plus: return 2;
  }
  return 1;
}

bool prints_bare(const QNum& v) {
  return v.is_rational_value() &&
         (v.coeff_a() == 0 || v.coeff_a() == 1);
}
}  // namespace

int ExtReal::cmp(const ExtReal& other) const {
  int c = value.cmp(other.value);
  if (c != 0) return c;
  return tag_rank(tag) - tag_rank(other.tag);
}

std::string ExtReal::exact() const {
  if (prints_bare(value)) return value.exact();
  return value.exact() + tag_suffix(tag);
}

std::string ExtReal::decimal(int digits) const { return value.decimal(digits); }

std::string Interval::render() const {
  return "[" + lo.exact() + ", " + hi.exact() + "]";
}

FieldDesc dominant_root(const words::IntMatrix& M) {
  if (M.q != 2) throw_internal(kStage, "dominant_root expects a 2x2 matrix");
  long t = static_cast<long>(M.trace());
  long d = static_cast<long>(M.det2());
  long disc = t * t - 4 * d;
  if (disc < 0) throw_internal(kStage, "negative discriminant");
  long s = isqrt_ll(disc);
  FieldDesc f;
  f.trace = t;
  f.det = d;
  if (s * s == disc) {
    f.rational = true;
    f.rational_theta = mpq_class(t + s, 2);
    f.rational_theta.canonicalize();
    if (f.rational_theta <= 1)
      throw_internal(kStage, "dominant root not greater than 1");
  } else {
    f.rational = false;
    // theta = (t + sqrt(disc))/2 > 1  <=>  sqrt(disc) > 2 - t.
    bool gt1 = t >= 2 || (2 - t) * (2 - t) < disc;
    if (!gt1) throw_internal(kStage, "dominant root not greater than 1");
  }
  return f;
}

std::vector<QNum> solve_frequencies(const words::IntMatrix& M,
                                    const FieldDesc& field) {
  const int q = M.q;
  const QNum theta = field.rational
                         ? QNum::rational(field.rational_theta, field)
                         : QNum::theta(field);
  const QNum zero = QNum::integer(0, field);
  const QNum one = QNum::integer(1, field);

  // Row-reduce A = M - theta*I over Q(theta).
  std::vector<std::vector<QNum>> A;
  A.reserve(static_cast<std::size_t>(q));
  for (int i = 0; i < q; ++i) {
    std::vector<QNum> row;
    row.reserve(static_cast<std::size_t>(q));
    for (int j = 0; j < q; ++j) {
      QNum v = QNum::integer(static_cast<long>(M.at(i, j)), field);
      if (i == j) v = v - theta;
      row.push_back(std::move(v));
    }
    A.push_back(std::move(row));
  }

  std::vector<int> pivot_of_col(static_cast<std::size_t>(q), -1);
  int rank = 0;
  for (int col = 0; col < q && rank < q; ++col) {
    int pr = -1;
    for (int r = rank; r < q; ++r)
      if (!A[std::size_t(r)][std::size_t(col)].is_zero()) {
        pr = r;
        break;
      }
    if (pr < 0) continue;
    std::swap(A[std::size_t(pr)], A[std::size_t(rank)]);
    QNum inv = A[std::size_t(rank)][std::size_t(col)].inverse();
    for (int j = 0; j < q; ++j)
      A[std::size_t(rank)][std::size_t(j)] =
          A[std::size_t(rank)][std::size_t(j)] * inv;
    for (int r = 0; r < q; ++r) {
      if (r == rank) continue;
      QNum factor = A[std::size_t(r)][std::size_t(col)];
      if (factor.is_zero()) continue;
      for (int j = 0; j < q; ++j)
        A[std::size_t(r)][std::size_t(j)] =
            A[std::size_t(r)][std::size_t(j)] -
            factor * A[std::size_t(rank)][std::size_t(j)];
    }
    pivot_of_col[std::size_t(col)] = rank;
    ++rank;
  }

  std::vector<int> free_cols;
  for (int col = 0; col < q; ++col)
    if (pivot_of_col[std::size_t(col)] < 0) free_cols.push_back(col);
  if (free_cols.empty())
    throw_internal(kStage, "eigenvector solve found zero kernel");
  if (free_cols.size() > 1)
    throw_internal(kStage, "dominant eigenvalue kernel is not 1-dimensional");

  int fc = free_cols.front();
  std::vector<QNum> v(static_cast<std::size_t>(q), zero);
  v[std::size_t(fc)] = one;
  for (int col = 0; col < q; ++col) {
    int pr = pivot_of_col[std::size_t(col)];
    if (pr < 0) continue;
    v[std::size_t(col)] = -A[std::size_t(pr)][std::size_t(fc)];
  }

  QNum sum = zero;
  for (const QNum& x : v) sum = sum + x;
  if (sum.is_zero()) throw_internal(kStage, "eigenvector has zero sum");
  QNum inv_sum = sum.inverse();
  for (QNum& x : v) x = x * inv_sum;

  for (const QNum& x : v)
    if (x.sign() <= 0)
      throw_internal(kStage, "frequency vector is not entrywise positive");

  // Exact residual check: M v == theta v.
  for (int i = 0; i < q; ++i) {
    QNum acc = zero;
    for (int j = 0; j < q; ++j)
      acc = acc + QNum::integer(static_cast<long>(M.at(i, j)), field) *
                      v[std::size_t(j)];
    if (acc.cmp(theta * v[std::size_t(i)]) != 0)
      throw_internal(kStage, "eigenvector residual is nonzero");
  }
  return v;
}

}  // namespace nuforge::qfield
