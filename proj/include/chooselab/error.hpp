#pragma once

#include <stdexcept>
#include <string>

namespace chooselab {

// Every failure raised by the library carries a stable machine-readable kind
// (e.g. "AsymmetricRotation") next to the human message.
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& detail)
        : std::runtime_error(kind + ": " + detail), kind_(std::move(kind)) {}

    const std::string& kind() const noexcept { return kind_; }

private:
    std::string kind_;
};

}  // namespace chooselab
