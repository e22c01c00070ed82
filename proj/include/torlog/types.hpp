#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <vector>

namespace torlog {

using Int = mpz_class;
using Rat = mpq_class;
using VecZ = std::vector<Int>;
using VecQ = std::vector<Rat>;

class Error : public std::runtime_error {
public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

class NotSharpError : public Error {
public:
  explicit NotSharpError(const std::string& msg) : Error(msg) {}
};

class NotSaturatedError : public Error {
public:
  explicit NotSaturatedError(const std::string& msg) : Error(msg) {}
};

class NotFaceError : public Error {
public:
  explicit NotFaceError(const std::string& msg) : Error(msg) {}
};

class NotFacetError : public Error {
public:
  explicit NotFacetError(const std::string& msg) : Error(msg) {}
};

class IncompleteFlagError : public Error {
public:
  explicit IncompleteFlagError(const std::string& msg) : Error(msg) {}
};

class DegreeNotPresentError : public Error {
public:
  explicit DegreeNotPresentError(const std::string& msg) : Error(msg) {}
};

class BoundExceededError : public Error {
public:
  explicit BoundExceededError(const std::string& msg) : Error(msg) {}
};

class ValidationError : public Error {
public:
  explicit ValidationError(const std::string& msg) : Error(msg) {}
};

class ParseError : public Error {
public:
  ParseError(int line, const std::string& msg)
      : Error("line " + std::to_string(line) + ": " + msg), line(line) {}
  int line;
};

inline Int dot(const VecZ& a, const VecZ& b) {
  Int s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline VecZ vec_add(const VecZ& a, const VecZ& b) {
  VecZ r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

inline VecZ vec_sub(const VecZ& a, const VecZ& b) {
  VecZ r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

inline VecZ vec_neg(const VecZ& a) {
  VecZ r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = -a[i];
  return r;
}

inline VecZ vec_scale(const Int& c, const VecZ& a) {
  VecZ r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = c * a[i];
  return r;
}

inline bool is_zero(const VecZ& a) {
  for (const auto& x : a)
    if (x != 0) return false;
  return true;
}

// divides v by the gcd of its entries; sign untouched; zero vector unchanged
inline void make_primitive(VecZ& v) {
  Int g = 0;
  for (const auto& x : v) g = gcd(g, x);
  if (g > 1)
    for (auto& x : v) x /= g;
}

// flips sign so the first nonzero entry is positive
inline void normalize_sign(VecZ& v) {
  for (const auto& x : v) {
    if (x > 0) return;
    if (x < 0) {
      for (auto& y : v) y = -y;
      return;
    }
  }
}

std::string vec_to_string(const VecZ& v);

}  // namespace torlog
