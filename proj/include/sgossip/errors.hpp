#pragma once

#include <stdexcept>
#include <string>

namespace sgossip {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// signed_graph
class InvalidGraphError : public Error { using Error::Error; };
class OverlapError : public Error { using Error::Error; };
class StochasticityError : public Error { using Error::Error; };
class SelfLoopError : public Error { using Error::Error; };
class InvalidPairError : public Error { using Error::Error; };
class NotRingEdgeError : public Error { using Error::Error; };

// spectral
class NotSymmetricError : public Error { using Error::Error; };
class NoConvergenceError : public Error { using Error::Error; };
class DimensionError : public Error { using Error::Error; };

// expectation / meansquare / simulator
class GainRangeError : public Error { using Error::Error; };
class HypothesisError : public Error { using Error::Error; };
class EmptyRepulsiveError : public Error { using Error::Error; };
class NotCompleteUniformError : public Error { using Error::Error; };
class OverflowError : public Error { using Error::Error; };

}  // namespace sgossip
