#pragma once

#include <stdexcept>
#include <string>

namespace pfcorr {

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct InvertNonUnit : Error {
    explicit InvertNonUnit(const std::string& msg = "inversion of non-unit element") : Error(msg) {}
};
struct NonSquare : Error {
    explicit NonSquare(const std::string& msg = "matrix is not square") : Error(msg) {}
};
struct NotAntisymmetric : Error {
    explicit NotAntisymmetric(const std::string& msg = "matrix is not antisymmetric") : Error(msg) {}
};
struct SingularConstantTerm : Error {
    explicit SingularConstantTerm(const std::string& msg = "constant term of determinant is zero") : Error(msg) {}
};
struct IndexOutOfRange : Error {
    explicit IndexOutOfRange(const std::string& msg = "index out of range") : Error(msg) {}
};
struct DuplicateIndex : Error {
    explicit DuplicateIndex(const std::string& msg = "duplicate index") : Error(msg) {}
};
struct SingularGram : Error {
    explicit SingularGram(const std::string& msg = "gram matrix is singular") : Error(msg) {}
};
struct OverlappingSets : Error {
    explicit OverlappingSets(const std::string& msg = "point sets overlap") : Error(msg) {}
};
struct UnsupportedClass : Error {
    explicit UnsupportedClass(const std::string& msg = "unsupported symmetry class") : Error(msg) {}
};
struct SingularSection : Error {
    explicit SingularSection(const std::string& msg = "matrix section is singular") : Error(msg) {}
};
struct ParseError : Error {
    explicit ParseError(const std::string& msg) : Error(msg) {}
};

}  // namespace pfcorr
