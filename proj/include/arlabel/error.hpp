#pragma once

#include <stdexcept>
#include <string>

namespace arlabel {

struct ArlabelError : std::runtime_error {
    explicit ArlabelError(const std::string& msg) : std::runtime_error(msg) {}
};

struct IoError : ArlabelError {
    explicit IoError(const std::string& msg) : ArlabelError("io error: " + msg) {}
};

struct DimensionMismatch : ArlabelError {
    explicit DimensionMismatch(const std::string& msg)
        : ArlabelError("dimension mismatch: " + msg) {}
};

struct DegenerateRect : ArlabelError {
    explicit DegenerateRect(const std::string& msg) : ArlabelError("degenerate rect: " + msg) {}
};

struct DegeneratePrior : ArlabelError {
    explicit DegeneratePrior(const std::string& msg) : ArlabelError("degenerate prior: " + msg) {}
};

struct ManifestError : ArlabelError {
    explicit ManifestError(const std::string& msg) : ArlabelError("manifest error: " + msg) {}
};

struct NoFeasiblePlacement : ArlabelError {
    explicit NoFeasiblePlacement(const std::string& msg)
        : ArlabelError("no feasible placement: " + msg) {}
};

}  // namespace arlabel
