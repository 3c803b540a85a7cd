#pragma once

#include <stdexcept>
#include <string>

namespace equidec {

enum class errc {
    not_minimal,
    not_primitive,
    weight_mismatch,
    class_mismatch,
    denominator_mismatch,
    precondition_violated,
    not_invertible_mod_d,
    level_mismatch,
    interpolation_mismatch,
    not_adjacent,
    not_parallelogram,
    invalid_pairing,
    cap_exceeded,
    truncated,
    path_invalid,
    compatibility_violated,
    not_unimodular,
    invalid_polygon,
    parse_error,
};

inline const char* errc_name(errc k) {
    switch (k) {
        case errc::not_minimal: return "NotMinimal";
        case errc::not_primitive: return "NotPrimitive";
        case errc::weight_mismatch: return "WeightMismatch";
        case errc::class_mismatch: return "ClassMismatch";
        case errc::denominator_mismatch: return "DenominatorMismatch";
        case errc::precondition_violated: return "PreconditionViolated";
        case errc::not_invertible_mod_d: return "NotInvertibleModD";
        case errc::level_mismatch: return "LevelMismatch";
        case errc::interpolation_mismatch: return "InterpolationMismatch";
        case errc::not_adjacent: return "NotAdjacent";
        case errc::not_parallelogram: return "NotParallelogram";
        case errc::invalid_pairing: return "InvalidPairing";
        case errc::cap_exceeded: return "CapExceeded";
        case errc::truncated: return "Truncated";
        case errc::path_invalid: return "PathInvalid";
        case errc::compatibility_violated: return "CompatibilityViolated";
        case errc::not_unimodular: return "NotUnimodular";
        case errc::invalid_polygon: return "InvalidPolygon";
        case errc::parse_error: return "ParseError";
    }
    return "Unknown";
}

/// Library exception carrying a machine-checkable error kind.
class error : public std::runtime_error {
public:
    error(errc kind, const std::string& what)
        : std::runtime_error(std::string(errc_name(kind)) + ": " + what), kind_(kind) {}

    errc kind() const { return kind_; }

private:
    errc kind_;
};

[[noreturn]] inline void fail(errc kind, const std::string& what) { throw error(kind, what); }

} // namespace equidec
