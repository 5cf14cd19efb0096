#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace fundgraph {

// Domain errors carry a stable kind tag; the CLI maps any DomainError to
// exit code 1 with a single "error: <kind>: <message>" line.
class DomainError : public std::runtime_error {
 public:
  DomainError(std::string kind, const std::string& message)
      : std::runtime_error(message), kind_(std::move(kind)) {}

  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

#define FUNDGRAPH_DEFINE_ERROR(Name)                          \
  class Name : public DomainError {                           \
   public:                                                    \
    explicit Name(const std::string& message)                 \
        : DomainError(#Name, message) {}                      \
  }

FUNDGRAPH_DEFINE_ERROR(MalformedEvent);
FUNDGRAPH_DEFINE_ERROR(CorruptSnapshot);
FUNDGRAPH_DEFINE_ERROR(UnsupportedVersion);
FUNDGRAPH_DEFINE_ERROR(NonConvergence);
FUNDGRAPH_DEFINE_ERROR(UnknownMetric);
FUNDGRAPH_DEFINE_ERROR(SingularDesign);
FUNDGRAPH_DEFINE_ERROR(IdentityConflict);
FUNDGRAPH_DEFINE_ERROR(UnknownNode);
FUNDGRAPH_DEFINE_ERROR(UnknownCompanyId);
FUNDGRAPH_DEFINE_ERROR(UnknownTopicId);
FUNDGRAPH_DEFINE_ERROR(UnknownIndustry);
FUNDGRAPH_DEFINE_ERROR(InvalidTimeline);
FUNDGRAPH_DEFINE_ERROR(InvalidInput);

#undef FUNDGRAPH_DEFINE_ERROR

}  // namespace fundgraph
