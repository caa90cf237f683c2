#pragma once

#include <stdexcept>
#include <string>

namespace sysid {

// Precondition violations on arguments.
struct NonFinite : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct NonSquare : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct BadRank : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct BadHorizon : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct BadPartition : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct BadMass : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct BadDelta : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct SizeMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct TooShort : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct UnknownName : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Domain conditions detected on otherwise well-formed inputs.
struct Unstable : std::domain_error {
    using std::domain_error::domain_error;
};
struct Marginal : std::domain_error {
    using std::domain_error::domain_error;
};
struct RankDeficient : std::domain_error {
    using std::domain_error::domain_error;
};
struct DegenerateHankel : std::domain_error {
    using std::domain_error::domain_error;
};
struct Diverging : std::domain_error {
    using std::domain_error::domain_error;
};

// Environment failures.
struct IoFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace sysid
