#ifndef WIDTHFORGE_ERROR_HPP
#define WIDTHFORGE_ERROR_HPP

#include <stdexcept>
#include <string>

namespace widthforge {

/// Raised when an input violates a structural precondition (bad cut, label
/// mismatch, malformed instance, unparsable file).
class validation_error : public std::invalid_argument {
public:
    explicit validation_error(const std::string& what) : std::invalid_argument(what) {}
};

}  // namespace widthforge

#endif
