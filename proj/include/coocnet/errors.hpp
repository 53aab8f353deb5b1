#pragma once

#include <stdexcept>
#include <string>

namespace coocnet {

// Error classes map 1:1 onto CLI exit codes.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace coocnet
