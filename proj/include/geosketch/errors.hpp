#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace geosketch {

// Error category drives the CLI exit code: usage -> 2, data -> 3, budget -> 4.
enum class ErrorKind { Usage, Data, Budget };

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& msg) : std::runtime_error(msg), kind_(kind) {}
    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

class ParseError : public Error {
public:
    ParseError(std::size_t line, const std::string& reason)
        : Error(ErrorKind::Data, "parse error at line " + std::to_string(line) + ": " + reason),
          line_(line) {}
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

class RangeError : public Error {
public:
    RangeError(std::size_t line, const std::string& reason)
        : Error(ErrorKind::Data, "range error at line " + std::to_string(line) + ": " + reason),
          line_(line) {}
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

class PassBudgetExceeded : public Error {
public:
    explicit PassBudgetExceeded(int passes)
        : Error(ErrorKind::Data,
                "multipass stopping rule did not fire within " + std::to_string(passes) +
                    " passes (optimum near 0 or broken solver)") {}
};

class DimensionMismatch : public Error {
public:
    DimensionMismatch(int expected, int got)
        : Error(ErrorKind::Data, "dimension mismatch: expected d=" + std::to_string(expected) +
                                     ", got d=" + std::to_string(got)) {}
};

class FatnessViolation : public Error {
public:
    FatnessViolation(double side, double delta)
        : Error(ErrorKind::Data, "rectangle side " + std::to_string(side) +
                                     " below fatness delta=" + std::to_string(delta)) {}
};

class UniverseTooLarge : public Error {
public:
    explicit UniverseTooLarge(const std::string& msg) : Error(ErrorKind::Data, msg) {}
};

class NonIntegerCorner : public Error {
public:
    explicit NonIntegerCorner(double coord)
        : Error(ErrorKind::Data, "rectangle corner " + std::to_string(coord) + " is not an integer") {}
};

class EmptyInput : public Error {
public:
    explicit EmptyInput(const std::string& what_op)
        : Error(ErrorKind::Data, what_op + ": empty input") {}
};

class EmptySketch : public Error {
public:
    EmptySketch() : Error(ErrorKind::Data, "sketch holds no insertions") {}
};

class ErodedEmpty : public Error {
public:
    ErodedEmpty() : Error(ErrorKind::Data, "inward shift emptied the polygon (body too thin for this epsilon)") {}
};

class Infeasible : public Error {
public:
    Infeasible() : Error(ErrorKind::Data, "constraint set is infeasible") {}
};

class BudgetExceeded : public Error {
public:
    explicit BudgetExceeded(const std::string& msg) : Error(ErrorKind::Budget, msg) {}
};

class UnsortedInput : public Error {
public:
    explicit UnsortedInput(std::size_t position)
        : Error(ErrorKind::Data, "input not sorted at item " + std::to_string(position)),
          position_(position) {}
    std::size_t position() const { return position_; }

private:
    std::size_t position_;
};

class LengthMismatch : public Error {
public:
    LengthMismatch() : Error(ErrorKind::Data, "bit vectors must have equal nonzero length") {}
};

class IndexOutOfRange : public Error {
public:
    IndexOutOfRange(std::size_t j, std::size_t n)
        : Error(ErrorKind::Data, "index " + std::to_string(j) + " outside [1," + std::to_string(n) + "]") {}
};

class UsageError : public Error {
public:
    explicit UsageError(const std::string& msg) : Error(ErrorKind::Usage, msg) {}
};

}  // namespace geosketch
