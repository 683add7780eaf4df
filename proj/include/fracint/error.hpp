#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fracint {

enum class errc {
    syntax,
    unknown_identifier,
    arity_mismatch,
    domain,
    non_monotone_partition,
    scale_out_of_range,
    base_endpoint_mismatch,
    length_mismatch,
    out_of_domain,
    spec_mismatch,
    not_affine,
    no_convergence,
    quadrature_non_convergence,
    invalid_config,
    invalid_argument,
};

inline const char* to_string(errc code) noexcept
{
    switch (code) {
    case errc::syntax: return "SyntaxError";
    case errc::unknown_identifier: return "UnknownIdentifier";
    case errc::arity_mismatch: return "ArityMismatch";
    case errc::domain: return "DomainError";
    case errc::non_monotone_partition: return "NonMonotonePartition";
    case errc::scale_out_of_range: return "ScaleOutOfRange";
    case errc::base_endpoint_mismatch: return "BaseEndpointMismatch";
    case errc::length_mismatch: return "LengthMismatch";
    case errc::out_of_domain: return "OutOfDomain";
    case errc::spec_mismatch: return "SpecMismatch";
    case errc::not_affine: return "NotAffine";
    case errc::no_convergence: return "NoConvergence";
    case errc::quadrature_non_convergence: return "QuadratureNonConvergence";
    case errc::invalid_config: return "InvalidConfig";
    case errc::invalid_argument: return "InvalidArgument";
    }
    return "Unknown";
}

/// Every failure raised by the library. `code()` identifies the category;
/// `offset()` is the byte position for parse errors and npos otherwise.
class error : public std::runtime_error {
public:
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

    error(errc code, const std::string& what, std::size_t offset = npos)
        : std::runtime_error(std::string(to_string(code)) + ": " + what)
        , code_(code)
        , offset_(offset)
    {
    }

    errc code() const noexcept { return code_; }
    std::size_t offset() const noexcept { return offset_; }

private:
    errc code_;
    std::size_t offset_;
};

} // namespace fracint
