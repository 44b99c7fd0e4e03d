#ifndef DDFEM_ERRORS_HPP
#define DDFEM_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace ddfem {

struct SegmentNotOnGrid : std::runtime_error {
    explicit SegmentNotOnGrid(const std::string& what) : std::runtime_error(what) {}
};

struct UnknownTag : std::runtime_error {
    explicit UnknownTag(const std::string& what) : std::runtime_error(what) {}
};

struct DegenerateCell : std::runtime_error {
    explicit DegenerateCell(const std::string& what) : std::runtime_error(what) {}
};

// The constitutive model leaves its admissible range when 1 + beta*tr(eps)
// approaches zero; this is a model breakdown, not a numerical issue to clamp.
struct SingularDensityFactor : std::runtime_error {
    explicit SingularDensityFactor(const std::string& what) : std::runtime_error(what) {}
};

struct SingularInversion : std::runtime_error {
    explicit SingularInversion(const std::string& what) : std::runtime_error(what) {}
};

struct NonphysicalCompaction : std::runtime_error {
    explicit NonphysicalCompaction(const std::string& what) : std::runtime_error(what) {}
};

struct SingularMatrix : std::runtime_error {
    explicit SingularMatrix(const std::string& what) : std::runtime_error(what) {}
};

struct ParseError : std::runtime_error {
    int line;
    ParseError(int line_, const std::string& what)
        : std::runtime_error("line " + std::to_string(line_) + ": " + what), line(line_) {}
};

struct ValidationError : std::runtime_error {
    std::string field;
    ValidationError(std::string field_, const std::string& what)
        : std::runtime_error(field_ + ": " + what), field(std::move(field_)) {}
};

struct IoError : std::runtime_error {
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace ddfem

#endif
