#pragma once

#include <stdexcept>

namespace rrap {

/// Invalid run or experiment configuration, raised before any work starts.
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

}  // namespace rrap
