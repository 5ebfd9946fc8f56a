#ifndef PLIFT_SCALAR_HPP
#define PLIFT_SCALAR_HPP

#include <gmpxx.h>
#include <stdexcept>
#include <string>

namespace plift {

// Exact rational scalar. mpq_class keeps the canonical form (positive
// denominator, reduced) after every arithmetic operation.
using Scalar = mpq_class;

enum class ErrorKind { structural, arithmetic, parse, usage };

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, std::string msg) : std::runtime_error(std::move(msg)), kind_(kind) {}
    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

inline Error structural_error(const std::string& msg) { return Error(ErrorKind::structural, msg); }
inline Error arithmetic_error(const std::string& msg) { return Error(ErrorKind::arithmetic, msg); }
inline Error parse_error(const std::string& msg) { return Error(ErrorKind::parse, msg); }
inline Error usage_error(const std::string& msg) { return Error(ErrorKind::usage, msg); }

inline std::string to_string(const Scalar& q) { return q.get_str(); }

inline bool is_zero(const Scalar& q) { return sgn(q) == 0; }

} // namespace plift

#endif
