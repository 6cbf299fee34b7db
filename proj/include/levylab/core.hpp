#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

#include <fmt/format.h>

namespace levylab {

inline constexpr std::string_view version = "0.1.0";

inline constexpr double pi = 3.141592653589793238462643383279502884;
inline constexpr double two_pi = 2.0 * pi;
inline constexpr double e_const = 2.718281828459045235360287471352662498;

class error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Group or algebra parameters outside the supported range.
class invalid_spec_error : public error {
 public:
  using error::error;
};

/// Dense storage guard tripped.
class size_error : public error {
 public:
  using error::error;
};

class basis_corruption_error : public error {
 public:
  using error::error;
};

/// Killing matrix is not proportional to the identity.
class non_simple_error : public error {
 public:
  using error::error;
};

/// Argument outside the domain of an operation (point off a sphere, epsilon out of range, ...).
class domain_violation : public error {
 public:
  using error::error;
};

class resolution_error : public error {
 public:
  using error::error;
};

class insufficient_data_error : public error {
 public:
  using error::error;
};

/// Ricci lower bound is not positive, so the Gromov-Milman criterion does not apply.
class criterion_inapplicable_error : public error {
 public:
  using error::error;
};

class io_error : public error {
 public:
  using error::error;
};

}  // namespace levylab
