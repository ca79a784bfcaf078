#pragma once
// Error taxonomy shared by all modules. The CLI maps these to exit codes:
// validation_error -> 1, io_error -> 2, numeric_error -> 3.

#include <stdexcept>
#include <string>

namespace csada {

struct validation_error : std::runtime_error {
    explicit validation_error(const std::string& msg) : std::runtime_error(msg) {}
};

struct io_error : std::runtime_error {
    explicit io_error(const std::string& msg) : std::runtime_error(msg) {}
};

struct numeric_error : std::runtime_error {
    explicit numeric_error(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace csada
