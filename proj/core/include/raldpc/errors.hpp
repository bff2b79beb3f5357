#pragma once

#include <stdexcept>
#include <string>

namespace raldpc {

// Base for all domain errors raised by this library. Argument validation
// failures (bad dimensions, out-of-range indices) throw std::invalid_argument
// instead; these types cover conditions that depend on the data, not the call.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// A protograph has an all-zero column: some variable type would receive no
// edges and the ensemble is not decodable.
class Unconnected : public Error {
public:
    explicit Unconnected(const std::string& what) : Error(what) {}
};

// A lifted matrix does not respect the contiguous type-block layout required
// of it (rows of one check type must be consecutive, same for columns).
class NotTypeConsistent : public Error {
public:
    explicit NotTypeConsistent(const std::string& what) : Error(what) {}
};

// Circle merging found a row with no remaining merge partner of disjoint
// support, so the current pairing cannot be completed.
class NoDisjointCandidate : public Error {
public:
    explicit NoDisjointCandidate(const std::string& what) : Error(what) {}
};

// An intermediate-protograph enumeration produced no candidates under the
// requested constraints.
class EmptyFamily : public Error {
public:
    explicit EmptyFamily(const std::string& what) : Error(what) {}
};

// Graph construction ran out of placements (e.g. a protograph entry exceeds
// the lifting factor, or an edge cannot be placed without multi-edges).
class Infeasible : public Error {
public:
    explicit Infeasible(const std::string& what) : Error(what) {}
};

// Channel parameter outside the open interval where log-likelihood ratios
// are finite.
class DegenerateChannel : public Error {
public:
    explicit DegenerateChannel(const std::string& what) : Error(what) {}
};

// A source/side-information couple that no rate on the grid can decode,
// not even the full mother syndrome.
class NeverDecodes : public Error {
public:
    explicit NeverDecodes(const std::string& what) : Error(what) {}
};

// A requested compression rate is not on the ladder's rate grid.
class RateOffGrid : public Error {
public:
    explicit RateOffGrid(const std::string& what) : Error(what) {}
};

// File could not be opened, or its contents do not parse as the expected
// format.
class IoError : public Error {
public:
    explicit IoError(const std::string& what) : Error(what) {}
};

} // namespace raldpc
