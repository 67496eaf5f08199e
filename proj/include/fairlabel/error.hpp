#pragma once

#include <stdexcept>
#include <string>

namespace fairlabel {

struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

#define FAIRLABEL_DEFINE_ERROR(Name)                                     \
    struct Name : Error {                                                \
        explicit Name(const std::string& what) : Error(#Name ": " + what) {} \
    }

FAIRLABEL_DEFINE_ERROR(EmptyGroup);
FAIRLABEL_DEFINE_ERROR(InvalidFraction);
FAIRLABEL_DEFINE_ERROR(SchemaMismatch);
FAIRLABEL_DEFINE_ERROR(DuplicateRowId);
FAIRLABEL_DEFINE_ERROR(UnknownRowId);
FAIRLABEL_DEFINE_ERROR(DirectionMismatch);
FAIRLABEL_DEFINE_ERROR(DegenerateTraining);
FAIRLABEL_DEFINE_ERROR(DimensionMismatch);
FAIRLABEL_DEFINE_ERROR(InvalidSpec);
FAIRLABEL_DEFINE_ERROR(NoEligibleRows);
FAIRLABEL_DEFINE_ERROR(EmptyInjectedLog);
FAIRLABEL_DEFINE_ERROR(LengthMismatch);
FAIRLABEL_DEFINE_ERROR(ZeroMajorityRate);
FAIRLABEL_DEFINE_ERROR(FileNotFound);
FAIRLABEL_DEFINE_ERROR(SchemaError);
FAIRLABEL_DEFINE_ERROR(EmptyAfterCleaning);
FAIRLABEL_DEFINE_ERROR(IoError);

#undef FAIRLABEL_DEFINE_ERROR

}  // namespace fairlabel
