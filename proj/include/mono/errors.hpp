#pragma once

#include <stdexcept>
#include <string>

namespace mono {

// Domain errors carry a stable machine-readable name so the CLI can
// surface them verbatim ("not-divisible", "depth", ...).
class Error : public std::runtime_error {
public:
    Error(std::string name, const std::string& what)
        : std::runtime_error(what), name_(std::move(name)) {}

    const std::string& name() const { return name_; }

private:
    std::string name_;
};

inline Error dimension_error(const std::string& what) { return Error("dimension", what); }
inline Error not_divisible_error(const std::string& what) { return Error("not-divisible", what); }
inline Error not_a_unit_error(const std::string& what) { return Error("not-a-unit", what); }
inline Error undefined_normality_error(const std::string& what) { return Error("undefined-normality", what); }
inline Error regularity_error(const std::string& what) { return Error("regularity", what); }
inline Error depth_error(const std::string& what) { return Error("depth", what); }
inline Error inconclusive_error(const std::string& what) { return Error("inconclusive", what); }
inline Error uncovered_point_error(const std::string& what) { return Error("uncovered-point", what); }
inline Error missing_certificate_error(const std::string& what) { return Error("missing-certificate", what); }
inline Error bound_too_small_error(const std::string& what) { return Error("bound-too-small", what); }
inline Error rank_deficiency_error(const std::string& what) { return Error("rank-deficiency", what); }
inline Error stratify_first_error(const std::string& what) { return Error("stratify-first", what); }
inline Error frame_error(const std::string& what) { return Error("frame", what); }
inline Error precondition_error(const std::string& what) { return Error("precondition", what); }
inline Error schema_error(const std::string& what) { return Error("schema", what); }

} // namespace mono
