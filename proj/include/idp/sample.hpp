#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace idp {

/// Raised when an argument violates an operation's precondition.
class ArgumentError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Raised when an input is too large for the requested method.
class SizeError : public std::length_error {
public:
    using std::length_error::length_error;
};

/// How a pair (X_j, Y_k) with X_j == Y_k contributes to the win count.
enum class TieMode {
    Strict,   ///< indicator I(X < Y): ties count 0
    Midrank,  ///< Heaviside H(Y - X): ties count 1/2
};

/// Observations drawn from one population. Non-empty, every value finite.
class Sample {
public:
    explicit Sample(std::vector<double> values);
    Sample(std::initializer_list<double> values);

    std::size_t size() const noexcept { return values_.size(); }
    std::span<const double> values() const noexcept { return values_; }
    double operator[](std::size_t i) const { return values_[i]; }

    auto begin() const noexcept { return values_.begin(); }
    auto end() const noexcept { return values_.end(); }

private:
    std::vector<double> values_;
};

std::string to_string(TieMode ties);
TieMode parse_tie_mode(const std::string& name);

}  // namespace idp
