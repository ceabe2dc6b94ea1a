#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace tagnet {

// Base class for all library failures.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Unusable input: missing files, undecodable streams, schema violations.
struct InputError : Error {
    using Error::Error;
};

// Failure inside a named pipeline stage; carries the stage name.
struct StageError : Error {
    StageError(std::string stage_name, const std::string& cause)
        : Error(stage_name + ": " + cause), stage(std::move(stage_name)) {}
    std::string stage;
};

}  // namespace tagnet
