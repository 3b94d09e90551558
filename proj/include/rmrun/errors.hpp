#pragma once

#include <stdexcept>
#include <string>

namespace rmrun {

struct InvalidParameter : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct InvalidFormat : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ResourceLimit : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct UnsupportedParameter : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct ChannelDegenerate : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace rmrun
