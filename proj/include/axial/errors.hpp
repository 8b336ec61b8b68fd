#pragma once

#include <stdexcept>
#include <string>

namespace axial {

// Malformed input document (GeoJSON / WKT / report JSON).
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A scene failed validation. Carries the violated invariant and the
// offending feature index (0 = outer boundary, 1.. = holes, -1 = whole scene).
struct ValidationError : std::runtime_error {
  ValidationError(std::string inv, int feat, const std::string& detail)
      : std::runtime_error("validation failed [" + inv + ", feature " +
                           std::to_string(feat) + "]: " + detail),
        invariant(std::move(inv)),
        feature(feat) {}
  std::string invariant;
  int feature;
};

// Features touch or coincide; no usable clearance.
struct DegenerateScene : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Bad synthetic scene parameters.
struct InvalidSpec : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Base for failures inside the generation pipeline (exit code 3 in the CLI).
struct PipelineError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct OriginOutside : PipelineError {
  using PipelineError::PipelineError;
};

struct SeedOutside : PipelineError {
  using PipelineError::PipelineError;
};

// Boundary sampling would exceed the sample cap.
struct StepTooSmall : PipelineError {
  using PipelineError::PipelineError;
};

struct EmptyGraph : PipelineError {
  using PipelineError::PipelineError;
};

// A ray crossing point has no medial vertex within association range.
struct AssociationFailure : PipelineError {
  using PipelineError::PipelineError;
};

struct EmptyInput : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct InsufficientData : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

}  // namespace axial
