#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qgi {

/// Base of every error raised by the engines. `name()` is the stable
/// identifier written into reports (e.g. "NonClosableError").
class Error : public std::runtime_error {
public:
    Error(std::string_view name, const std::string& what)
        : std::runtime_error(what), name_(name) {}

    const std::string& name() const noexcept { return name_; }

private:
    std::string name_;
};

#define QGI_DEFINE_ERROR(Type)                                              \
    class Type : public Error {                                             \
    public:                                                                 \
        explicit Type(const std::string& what) : Error(#Type, what) {}      \
    }

QGI_DEFINE_ERROR(InvalidParameterError);
QGI_DEFINE_ERROR(NonClosableError);
QGI_DEFINE_ERROR(ClosureRequiredError);
QGI_DEFINE_ERROR(OutOfSpanError);
QGI_DEFINE_ERROR(ZeroTimeError);
QGI_DEFINE_ERROR(DomainError);
QGI_DEFINE_ERROR(GridTooCoarseError);
QGI_DEFINE_ERROR(PacketOutOfBoundsError);
QGI_DEFINE_ERROR(AliasingError);
QGI_DEFINE_ERROR(LowContrastError);

#undef QGI_DEFINE_ERROR

/// Raised when a packet's predicted support leaves the grid during evolution.
class BoundaryEscapeError : public Error {
public:
    BoundaryEscapeError(double time, const std::string& what)
        : Error("BoundaryEscapeError", what), time_(time) {}

    /// Evolution time (signed, relative to the start) of the first violation.
    double time() const noexcept { return time_; }

private:
    double time_;
};

}  // namespace qgi
