#pragma once

#include <stdexcept>
#include <string>

namespace pforms {

// Every failure the library can signal. Codes in the `input` group mean the
// caller handed us something outside an operation's contract; codes in the
// `internal` group mean a structural assertion made by the reduction pipeline
// failed and the result cannot be trusted.
enum class errc {
    // input errors
    dimension_mismatch,
    index_out_of_range,
    singular_matrix,
    zero_input,
    not_closed,
    not_homogeneous,
    not_degree_one,
    not_decomposable,
    euler_condition_fails,
    vanishes_in_codim_one,
    degree_not_one,
    class_zero,
    bad_argument,
    parse_error,
    // internal assertion failures
    nonzero_pure_z_block,
    no_coupling,
    zeta_not_reduced,
    internal_error,
};

inline const char* errc_name(errc c) {
    switch (c) {
        case errc::dimension_mismatch: return "DimensionMismatch";
        case errc::index_out_of_range: return "IndexOutOfRange";
        case errc::singular_matrix: return "SingularMatrix";
        case errc::zero_input: return "ZeroInput";
        case errc::not_closed: return "NotClosed";
        case errc::not_homogeneous: return "NotHomogeneous";
        case errc::not_degree_one: return "NotDegreeOne";
        case errc::not_decomposable: return "NotDecomposable";
        case errc::euler_condition_fails: return "EulerConditionFails";
        case errc::vanishes_in_codim_one: return "VanishesInCodimOne";
        case errc::degree_not_one: return "DegreeNotOne";
        case errc::class_zero: return "ClassZero";
        case errc::bad_argument: return "BadArgument";
        case errc::parse_error: return "ParseError";
        case errc::nonzero_pure_z_block: return "NonzeroPureZBlock";
        case errc::no_coupling: return "NoCoupling";
        case errc::zeta_not_reduced: return "ZetaNotReduced";
        case errc::internal_error: return "InternalError";
    }
    return "UnknownError";
}

// True for failures that indicate a broken invariant rather than bad input.
inline bool is_internal(errc c) {
    return c == errc::nonzero_pure_z_block || c == errc::no_coupling ||
           c == errc::zeta_not_reduced || c == errc::internal_error;
}

class Error : public std::runtime_error {
public:
    Error(errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

    errc code() const { return code_; }

private:
    errc code_;
};

// Syntax errors carry a 1-based source position.
class ParseError : public Error {
public:
    ParseError(const std::string& what, int line, int column)
        : Error(errc::parse_error,
                what + " (line " + std::to_string(line) + ", column " + std::to_string(column) + ")"),
          line_(line), column_(column) {}

    int line() const { return line_; }
    int column() const { return column_; }

private:
    int line_;
    int column_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) { throw Error(code, what); }

} // namespace pforms
