#ifndef HCF_ERROR_HPP
#define HCF_ERROR_HPP

#include <stdexcept>
#include <string>

namespace hcf {

/// Invalid scenario or run configuration.
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// An operation was called on a user or architecture it does not apply to.
class MisuseError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Argument outside the mathematical domain of a function.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

}  // namespace hcf

#endif  // HCF_ERROR_HPP
