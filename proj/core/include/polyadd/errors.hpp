#pragma once

#include <stdexcept>
#include <string>

namespace polyadd {

// Mathematical-domain failures: x <= 0, non-finite input, exp(t) not representable.
class DomainError : public std::domain_error {
 public:
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

// Contract failures on knobs and parameters: bad order, bad tolerance, bad config.
class ArgumentError : public std::invalid_argument {
 public:
  explicit ArgumentError(const std::string& what) : std::invalid_argument(what) {}
};

// |psi^(k)(x)| exceeds double range. The leading term k!/x^(k+1) is the diagnosis;
// it is carried in log space because the overflowed value itself is not representable.
class EvalOverflow : public std::overflow_error {
 public:
  EvalOverflow(int order, double point, double log_leading_term, const std::string& what)
      : std::overflow_error(what),
        order_(order),
        point_(point),
        log_leading_term_(log_leading_term) {}

  int order() const noexcept { return order_; }
  double point() const noexcept { return point_; }
  // Natural log of k!/x^(k+1), the term that pushed the result out of range.
  double log_leading_term() const noexcept { return log_leading_term_; }

 private:
  int order_;
  double point_;
  double log_leading_term_;
};

// Threshold solver could not produce a usable bracket (annotated with the failing order).
class SolverError : public std::runtime_error {
 public:
  SolverError(int order, const std::string& what)
      : std::runtime_error(what), order_(order) {}

  int order() const noexcept { return order_; }

 private:
  int order_;
};

}  // namespace polyadd
