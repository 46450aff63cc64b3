#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace stosep {

// Named failure modes. Every precondition violation carries the violated
// condition in the message so CLI diagnostics can surface it verbatim.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct DegenerateInput : Error {
    using Error::Error;
};
struct DimensionMismatch : Error {
    using Error::Error;
};
struct SingularComponent : Error {
    using Error::Error;
};
struct InvalidThreshold : Error {
    using Error::Error;
};
struct InapplicableBound : Error {
    using Error::Error;
};

// Row-major sample container: m points by d coordinates.
struct DataMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> values;

    DataMatrix() = default;
    DataMatrix(std::size_t m, std::size_t d) : rows(m), cols(d), values(m * d, 0.0) {}
    DataMatrix(std::size_t m, std::size_t d, std::vector<double> v)
        : rows(m), cols(d), values(std::move(v)) {
        if (values.size() != m * d)
            throw DimensionMismatch("DataMatrix: values size does not equal rows*cols");
    }

    double* row(std::size_t i) { return values.data() + i * cols; }
    const double* row(std::size_t i) const { return values.data() + i * cols; }
    double& at(std::size_t i, std::size_t j) { return values[i * cols + j]; }
    double at(std::size_t i, std::size_t j) const { return values[i * cols + j]; }

    // m >= 1, d >= 1, all entries finite.
    void validate(const char* who) const {
        if (rows < 1 || cols < 1)
            throw DegenerateInput(std::string(who) + ": need rows >= 1 and cols >= 1");
        if (values.size() != rows * cols)
            throw DimensionMismatch(std::string(who) + ": values size does not equal rows*cols");
        for (double v : values)
            if (!std::isfinite(v))
                throw DegenerateInput(std::string(who) + ": non-finite entry");
    }
};

inline constexpr const char* kSchemaVersion = "1";
inline constexpr const char* kToolName = "stosep";
inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace stosep
