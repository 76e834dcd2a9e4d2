#pragma once

#include <stdexcept>
#include <string>

namespace tourn
{
    /// Malformed upper-triangle code. line() is 0 when the text did not come from a numbered input.
    class FormatError : public std::runtime_error
    {
        int line_;

    public:
        explicit FormatError(const std::string & what, int line = 0) :
            std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
            line_(line)
        {
        }

        [[nodiscard]] auto line() const -> int { return line_; }
    };

    /// An operation was called outside its documented domain (vertex out of range, size limit, ...).
    class PreconditionError : public std::invalid_argument
    {
    public:
        using std::invalid_argument::invalid_argument;
    };

    /// A structural fact that must hold for every tournament was found broken. Always an internal bug.
    class StructureViolation : public std::logic_error
    {
    public:
        using std::logic_error::logic_error;
    };
}
