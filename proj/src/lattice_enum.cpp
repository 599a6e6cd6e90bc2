#include "toricsr/lattice_enum.hpp"

#include <omp.h>

#include <algorithm>
#include <atomic>

namespace toricsr {

namespace {

template <class T> struct Num;

template <> struct Num<std::int64_t> {
  using T = std::int64_t;
  static T from(const Int &x) { return to_int64(x); }
  static Int to(T x) { return from_int64(x); }
  static T fdiv(T c, T a) {
    T q = c / a;
    if (c % a != 0 && ((c < 0) != (a < 0)))
      --q;
    return q;
  }
  static T cdiv(T c, T a) {
    T q = c / a;
    if (c % a != 0 && ((c < 0) == (a < 0)))
      ++q;
    return q;
  }
};

template <> struct Num<Int> {
  using T = Int;
  static T from(const Int &x) { return x; }
  static Int to(const T &x) { return x; }
  static T fdiv(const T &c, const T &a) {
    T q;
    mpz_fdiv_q(q.get_mpz_t(), c.get_mpz_t(), a.get_mpz_t());
    return q;
  }
  static T cdiv(const T &c, const T &a) {
    T q;
    mpz_cdiv_q(q.get_mpz_t(), c.get_mpz_t(), a.get_mpz_t());
    return q;
  }
};

template <class T> struct Prepared {
  std::size_t n = 0, m = 0;
  std::vector<std::vector<T>> a;
  std::vector<T> b, lo, hi;
  std::vector<std::vector<T>> rest; // rest[j][k]: max of sum_{i >= k} a_ji x_i over the box
};

template <class T> Prepared<T> prepare(const EnumerationProblem &p) {
  Prepared<T> P;
  P.n = p.lower.size();
  P.m = p.normals.size();
  for (std::size_t i = 0; i < P.n; ++i) {
    P.lo.push_back(Num<T>::from(p.lower[i]));
    P.hi.push_back(Num<T>::from(p.upper[i]));
  }
  for (std::size_t j = 0; j < P.m; ++j) {
    std::vector<T> row;
    for (const Int &x : p.normals[j])
      row.push_back(Num<T>::from(x));
    P.a.push_back(std::move(row));
    P.b.push_back(Num<T>::from(p.offsets[j]));
    std::vector<T> r(P.n + 1, T(0));
    for (std::size_t k = P.n; k-- > 0;) {
      T u = P.a[j][k] * P.lo[k];
      T v = P.a[j][k] * P.hi[k];
      r[k] = r[k + 1] + (u > v ? u : v);
    }
    P.rest.push_back(std::move(r));
  }
  return P;
}

bool fits_small(const EnumerationProblem &p) {
  static const Int cap = Int(1) << 62;
  Int box = 0;
  for (std::size_t i = 0; i < p.lower.size(); ++i) {
    box = std::max(box, Int(abs(p.lower[i])));
    box = std::max(box, Int(abs(p.upper[i])));
  }
  if (box >= cap)
    return false;
  for (std::size_t j = 0; j < p.normals.size(); ++j) {
    Int s = abs(p.offsets[j]);
    for (const Int &x : p.normals[j])
      s += abs(x) * box;
    if (s >= cap)
      return false;
  }
  return true;
}

template <class T> class Walker {
public:
  Walker(const Prepared<T> &P, std::size_t limit, std::atomic<std::size_t> &count,
         std::atomic<bool> &overflow)
      : P_(P), limit_(limit), count_(count), overflow_(overflow), x_(P.n),
        ps_(P.n + 1, std::vector<T>(P.m, T(0))) {}

  // Feasible range of coordinate k given the partial sums at level k.
  bool range(std::size_t k, T &L, T &H) const {
    L = P_.lo[k];
    H = P_.hi[k];
    for (std::size_t j = 0; j < P_.m; ++j) {
      T c = P_.b[j] - ps_[k][j] - P_.rest[j][k + 1];
      const T &a = P_.a[j][k];
      if (a > 0) {
        T t = Num<T>::cdiv(c, a);
        if (t > L)
          L = t;
      } else if (a < 0) {
        T t = Num<T>::fdiv(c, a);
        if (t < H)
          H = t;
      } else if (c > 0) {
        return false;
      }
    }
    return L <= H;
  }

  void fix(std::size_t k, const T &v) {
    x_[k] = v;
    for (std::size_t j = 0; j < P_.m; ++j)
      ps_[k + 1][j] = ps_[k][j] + P_.a[j][k] * v;
  }

  // Returns false once the walk should stop.
  bool walk(std::size_t k, std::vector<IntVector> *out, bool stop_at_first) {
    if (k == P_.n) {
      if (out) {
        IntVector p(P_.n);
        for (std::size_t i = 0; i < P_.n; ++i)
          p[i] = Num<T>::to(x_[i]);
        out->push_back(std::move(p));
      }
      if (count_.fetch_add(1) + 1 > limit_) {
        overflow_ = true;
        return false;
      }
      return !stop_at_first;
    }
    T L, H;
    if (!range(k, L, H))
      return true;
    for (T v = L; v <= H; ++v) {
      if (overflow_)
        return false;
      fix(k, v);
      if (!walk(k + 1, out, stop_at_first))
        return false;
    }
    return true;
  }

private:
  const Prepared<T> &P_;
  std::size_t limit_;
  std::atomic<std::size_t> &count_;
  std::atomic<bool> &overflow_;
  std::vector<T> x_;
  std::vector<std::vector<T>> ps_;
};

template <class T>
std::vector<IntVector> run(const EnumerationProblem &prob, std::size_t limit, Exec exec) {
  Prepared<T> P = prepare<T>(prob);
  std::atomic<std::size_t> count{0};
  std::atomic<bool> overflow{false};
  std::vector<IntVector> out;
  if (P.n == 0) {
    Walker<T> w(P, limit, count, overflow);
    w.walk(0, &out, false);
  } else if (exec == Exec::Serial) {
    Walker<T> w(P, limit, count, overflow);
    w.walk(0, &out, false);
  } else {
    Walker<T> root(P, limit, count, overflow);
    T L, H;
    if (root.range(0, L, H)) {
      std::vector<T> values;
      for (T v = L; v <= H; ++v)
        values.push_back(v);
      std::vector<std::vector<IntVector>> parts(values.size());
      const long nv = static_cast<long>(values.size());
#pragma omp parallel for schedule(dynamic, 1)
      for (long i = 0; i < nv; ++i) {
        if (overflow)
          continue;
        Walker<T> w(P, limit, count, overflow);
        w.fix(0, values[static_cast<std::size_t>(i)]);
        w.walk(1, &parts[static_cast<std::size_t>(i)], false);
      }
      for (auto &part : parts)
        for (auto &p : part)
          out.push_back(std::move(p));
    }
  }
  if (overflow)
    throw ResourceLimitExceeded("lattice point enumeration exceeds the limit of " +
                                std::to_string(limit) + " points");
  return out;
}

void check_shape(const EnumerationProblem &prob) {
  const std::size_t n = prob.lower.size();
  if (prob.upper.size() != n || prob.normals.size() != prob.offsets.size())
    throw DimensionMismatch("malformed enumeration problem");
  for (const IntVector &a : prob.normals)
    if (a.size() != n)
      throw DimensionMismatch("halfspace normal of wrong length");
}

} // namespace

std::vector<IntVector> enumerate_box_reference(const EnumerationProblem &prob, std::size_t limit) {
  check_shape(prob);
  const std::size_t n = prob.lower.size();
  std::vector<IntVector> out;
  for (std::size_t i = 0; i < n; ++i)
    if (prob.lower[i] > prob.upper[i])
      return out;
  IntVector x = prob.lower;
  for (;;) {
    bool inside = true;
    for (std::size_t j = 0; j < prob.normals.size() && inside; ++j)
      if (dot(prob.normals[j], x) < prob.offsets[j])
        inside = false;
    if (inside) {
      out.push_back(x);
      if (out.size() > limit)
        throw ResourceLimitExceeded("lattice point enumeration exceeds the limit");
    }
    bool done = true;
    for (std::size_t k = n; k-- > 0;) {
      if (x[k] < prob.upper[k]) {
        ++x[k];
        done = false;
        break;
      }
      x[k] = prob.lower[k];
    }
    if (done)
      break;
  }
  return out;
}

std::vector<IntVector> enumerate_lattice_points(const EnumerationProblem &prob, std::size_t limit,
                                                Exec exec) {
  check_shape(prob);
  if (fits_small(prob))
    return run<std::int64_t>(prob, limit, exec);
  return run<Int>(prob, limit, exec);
}

bool has_lattice_point(const EnumerationProblem &prob) {
  check_shape(prob);
  auto probe = [&](auto tag) {
    using T = decltype(tag);
    Prepared<T> P = prepare<T>(prob);
    std::atomic<std::size_t> count{0};
    std::atomic<bool> overflow{false};
    Walker<T> w(P, static_cast<std::size_t>(-1), count, overflow);
    w.walk(0, nullptr, true);
    return count.load() > 0;
  };
  if (fits_small(prob))
    return probe(std::int64_t{0});
  return probe(Int(0));
}

} // namespace toricsr
