#pragma once

#include <stdexcept>

namespace coxassoc {

struct InvalidMatrix : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NonFinite : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SystemMismatch : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NotCoxeterWord : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NotReduced : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SingularGram : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct UnboundedOrDegenerate : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct LabelGeometryMismatch : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DegenerateInput : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NotReducible : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InvalidConfig : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace coxassoc
