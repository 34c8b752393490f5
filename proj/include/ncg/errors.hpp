#pragma once

#include <stdexcept>
#include <string>

namespace ncg {

/// Broad failure class; the CLI maps each to an exit code.
enum class ErrorKind {
    validation,  ///< input is well-formed but violates a mathematical precondition
    io,          ///< file or parse failure
    usage,       ///< caller passed an out-of-range parameter
};

/// Base of all library errors. `name()` is the stable identifier reported by the CLI.
class Error : public std::runtime_error {
public:
    Error(std::string name, ErrorKind kind, const std::string& what)
        : std::runtime_error(name + ": " + what), name_(std::move(name)), kind_(kind) {}

    const std::string& name() const noexcept { return name_; }
    ErrorKind kind() const noexcept { return kind_; }

private:
    std::string name_;
    ErrorKind kind_;
};

#define NCG_DEFINE_ERROR(Type, Kind)                                        \
    class Type : public Error {                                             \
    public:                                                                 \
        explicit Type(const std::string& what) : Error(#Type, Kind, what) {} \
    }

NCG_DEFINE_ERROR(ShapeError, ErrorKind::validation);
NCG_DEFINE_ERROR(IndexError, ErrorKind::usage);
NCG_DEFINE_ERROR(ParameterError, ErrorKind::usage);
NCG_DEFINE_ERROR(TracelessViolation, ErrorKind::validation);
NCG_DEFINE_ERROR(DependentBasis, ErrorKind::validation);
NCG_DEFINE_ERROR(ConditioningError, ErrorKind::validation);
NCG_DEFINE_ERROR(DependentRelations, ErrorKind::validation);
NCG_DEFINE_ERROR(InvalidRelation, ErrorKind::validation);
NCG_DEFINE_ERROR(DegreeError, ErrorKind::usage);
NCG_DEFINE_ERROR(SingularTransform, ErrorKind::validation);
NCG_DEFINE_ERROR(ConfigError, ErrorKind::validation);
NCG_DEFINE_ERROR(ParseError, ErrorKind::io);
NCG_DEFINE_ERROR(IoError, ErrorKind::io);

#undef NCG_DEFINE_ERROR

}  // namespace ncg
