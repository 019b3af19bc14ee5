// error.hh -- exception types shared by all hoca modules

#ifndef HOCA_ERROR_HH
#define HOCA_ERROR_HH

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hoca {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed textual input. `position` is a byte offset or a line number,
/// depending on the parser that raised it.
class SyntaxError : public Error {
public:
    SyntaxError(const std::string& what, std::size_t position)
        : Error(what + " (at " + std::to_string(position) + ")"), position_(position) {}
    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

class UnknownSymbol : public Error {
public:
    explicit UnknownSymbol(const std::string& symbol)
        : Error("unknown symbol '" + symbol + "'"), symbol_(symbol) {}
    const std::string& symbol() const noexcept { return symbol_; }

private:
    std::string symbol_;
};

class UnknownState : public Error {
public:
    explicit UnknownState(const std::string& state) : Error("unknown state '" + state + "'") {}
};

class IllTyped : public Error {
public:
    using Error::Error;
};

/// An operation outside the restricted instruction set of a pass.
class UnsupportedOp : public Error {
public:
    UnsupportedOp(const std::string& op, std::size_t line)
        : Error("unsupported operation '" + op + "' on line " + std::to_string(line) +
                " (run the normalization pass first)"),
          op_(op), line_(line) {}
    const std::string& op() const noexcept { return op_; }
    std::size_t line() const noexcept { return line_; }

private:
    std::string op_;
    std::size_t line_;
};

class InvalidTrace : public Error {
public:
    using Error::Error;
};

class InvalidEncoding : public Error {
public:
    InvalidEncoding(const std::string& what, const std::string& position)
        : Error(what + " at node '" + (position.empty() ? std::string("root") : position) + "'"),
          position_(position) {}
    /// Path from the root as a string over {0,1}.
    const std::string& position() const noexcept { return position_; }

private:
    std::string position_;
};

class IllFormedTable : public Error {
public:
    using Error::Error;
};

} // namespace hoca

#endif
