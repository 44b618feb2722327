#ifndef GRAZE_ERRORS_HPP
#define GRAZE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace graze {

struct GrazeError : std::runtime_error {
    explicit GrazeError(const std::string& what) : std::runtime_error(what) {}
};

// Angular cross-section for momentum transfer diverges (e.g. nu >= 2 without cutoff).
struct NonIntegrableError : GrazeError {
    explicit NonIntegrableError(const std::string& what) : GrazeError(what) {}
};

// Successive quadrature refinements disagree beyond the requested tolerance.
struct QuadratureNotConvergedError : GrazeError {
    explicit QuadratureNotConvergedError(const std::string& what) : GrazeError(what) {}
};

struct DomainError : GrazeError {
    explicit DomainError(const std::string& what) : GrazeError(what) {}
};

struct SupportViolationError : GrazeError {
    explicit SupportViolationError(const std::string& what) : GrazeError(what) {}
};

struct DimensionMismatchError : GrazeError {
    explicit DimensionMismatchError(const std::string& what) : GrazeError(what) {}
};

struct BlowupError : GrazeError {
    BlowupError(const std::string& what, double at_time) : GrazeError(what), time(at_time) {}
    double time;
};

struct ConfigError : GrazeError {
    explicit ConfigError(const std::string& what) : GrazeError(what) {}
};

struct CacheError : GrazeError {
    explicit CacheError(const std::string& what) : GrazeError(what) {}
};

} // namespace graze

#endif
