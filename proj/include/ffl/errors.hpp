#ifndef FFL_ERRORS_HPP
#define FFL_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace ffl {

// Failure conditions with a stable machine-readable kind. The CLI maps these
// to exit codes; tests match on the kind rather than the message text.
enum class ErrorKind {
    DivisionByZero,
    InvalidAutomorphism,
    NotInvertibleSeries,
    NotNormalized,
    ReconstructionFailed,
    InvalidField,
    BadReductionOfFunction,
    SingularModel,
    UnsupportedCharacteristic,
    NotMinimal,
    BadReductionPlace,
    ImprimitiveCharacter,
    UnsupportedRamificationOverlap,
    IncompleteLocalData,
    IncomparableSeries,
    PoleAtCenter,
};

inline const char* error_kind_name(ErrorKind k) {
    switch (k) {
        case ErrorKind::DivisionByZero: return "DivisionByZero";
        case ErrorKind::InvalidAutomorphism: return "InvalidAutomorphism";
        case ErrorKind::NotInvertibleSeries: return "NotInvertibleSeries";
        case ErrorKind::NotNormalized: return "NotNormalized";
        case ErrorKind::ReconstructionFailed: return "ReconstructionFailed";
        case ErrorKind::InvalidField: return "InvalidField";
        case ErrorKind::BadReductionOfFunction: return "BadReductionOfFunction";
        case ErrorKind::SingularModel: return "SingularModel";
        case ErrorKind::UnsupportedCharacteristic: return "UnsupportedCharacteristic";
        case ErrorKind::NotMinimal: return "NotMinimal";
        case ErrorKind::BadReductionPlace: return "BadReductionPlace";
        case ErrorKind::ImprimitiveCharacter: return "ImprimitiveCharacter";
        case ErrorKind::UnsupportedRamificationOverlap: return "UnsupportedRamificationOverlap";
        case ErrorKind::IncompleteLocalData: return "IncompleteLocalData";
        case ErrorKind::IncomparableSeries: return "IncomparableSeries";
        case ErrorKind::PoleAtCenter: return "PoleAtCenter";
    }
    return "Unknown";
}

class Error : public std::runtime_error {
  public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(error_kind_name(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const { return kind_; }
    const char* kind_name() const { return error_kind_name(kind_); }

  private:
    ErrorKind kind_;
};

} // namespace ffl

#endif
