#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace qfall {

enum class Errc {
    BadParams,
    BadGrid,
    BadSigma,
    GridOverflow,
    GridMismatch,
    NegativeTime,
    BadSchedule,
    TooLarge,
    NotHermitian,
    NotUnitary,
    DegenerateInterval,
    SuperluminalPath,
    BadQuadrature,
    BadInput,
    PhaseAliasing,
    SchemeMismatch,
};

std::string_view to_string(Errc code);

/// Every library failure is reported as an Error carrying a machine-readable
/// code. `segment` is set when the failure happened inside one segment of an
/// acceleration schedule.
class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what, std::optional<std::size_t> segment = std::nullopt)
        : std::runtime_error(std::string(to_string(code)) + ": " + what),
          code_(code), segment_(segment) {}

    Errc code() const noexcept { return code_; }
    std::optional<std::size_t> segment() const noexcept { return segment_; }

private:
    Errc code_;
    std::optional<std::size_t> segment_;
};

} // namespace qfall
