#pragma once

#include <stdexcept>
#include <string>

namespace mlpoly {

enum class ErrorKind {
    Parse,
    Unbounded,
    NotSimple,
    EmptyFacet,
    EmptyPolytope,
    NoLatticeSection,
    OutsideChamber,
    NotMassLinear,
    AsymmetricFaceRequested,
    EmptyFace,
    NotEquivalent,
    SingletonClass,
    DimensionUnsupported,
    NotSmooth,
    InvalidTwist,
    EpsilonTooLarge,
    UnknownTheorem,
    InvalidArgument,
};

inline const char* kind_name(ErrorKind k) {
    switch (k) {
        case ErrorKind::Parse: return "Parse";
        case ErrorKind::Unbounded: return "Unbounded";
        case ErrorKind::NotSimple: return "NotSimple";
        case ErrorKind::EmptyFacet: return "EmptyFacet";
        case ErrorKind::EmptyPolytope: return "EmptyPolytope";
        case ErrorKind::NoLatticeSection: return "NoLatticeSection";
        case ErrorKind::OutsideChamber: return "OutsideChamber";
        case ErrorKind::NotMassLinear: return "NotMassLinear";
        case ErrorKind::AsymmetricFaceRequested: return "AsymmetricFaceRequested";
        case ErrorKind::EmptyFace: return "EmptyFace";
        case ErrorKind::NotEquivalent: return "NotEquivalent";
        case ErrorKind::SingletonClass: return "SingletonClass";
        case ErrorKind::DimensionUnsupported: return "DimensionUnsupported";
        case ErrorKind::NotSmooth: return "NotSmooth";
        case ErrorKind::InvalidTwist: return "InvalidTwist";
        case ErrorKind::EpsilonTooLarge: return "EpsilonTooLarge";
        case ErrorKind::UnknownTheorem: return "UnknownTheorem";
        case ErrorKind::InvalidArgument: return "InvalidArgument";
    }
    return "Unknown";
}

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(kind_name(kind)) + ": " + what), kind_(kind) {}
    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace mlpoly
