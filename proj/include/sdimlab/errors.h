#pragma once

#include <stdexcept>
#include <string>

namespace sdimlab {

/// Base of every library error. `tag()` is the machine-readable name printed
/// by the CLI on stderr.
class Error : public std::runtime_error {
public:
    Error(std::string tag, const std::string& what)
        : std::runtime_error(what), tag_(std::move(tag)) {}

    const std::string& tag() const noexcept { return tag_; }

private:
    std::string tag_;
};

#define SDIMLAB_DEFINE_ERROR(Name)                                       \
    class Name : public Error {                                          \
    public:                                                              \
        explicit Name(const std::string& what) : Error(#Name, what) {}   \
    };

SDIMLAB_DEFINE_ERROR(ParseError)
SDIMLAB_DEFINE_ERROR(InvalidArgument)
SDIMLAB_DEFINE_ERROR(DisconnectedInput)
SDIMLAB_DEFINE_ERROR(OverlapError)
SDIMLAB_DEFINE_ERROR(ImproperGraph)
SDIMLAB_DEFINE_ERROR(EmptySubset)
SDIMLAB_DEFINE_ERROR(CrossingAssertionFailure)
SDIMLAB_DEFINE_ERROR(HostMismatch)
SDIMLAB_DEFINE_ERROR(TooLarge)
SDIMLAB_DEFINE_ERROR(SizeLimit)
SDIMLAB_DEFINE_ERROR(BudgetExceeded)
SDIMLAB_DEFINE_ERROR(TooFewScales)
SDIMLAB_DEFINE_ERROR(DomainError)

#undef SDIMLAB_DEFINE_ERROR

}  // namespace sdimlab
