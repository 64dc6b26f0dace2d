#include "dagmatch/error.hpp"

namespace dagmatch {

const char* errc_name(Errc c) {
  switch (c) {
    case Errc::malformed_header: return "MalformedHeader";
    case Errc::label_length_mismatch: return "LabelLengthMismatch";
    case Errc::vertex_out_of_range: return "VertexOutOfRange";
    case Errc::self_loop: return "SelfLoop";
    case Errc::duplicate_edge: return "DuplicateEdge";
    case Errc::cycle_detected: return "CycleDetected";
    case Errc::edge_not_present: return "EdgeNotPresent";
    case Errc::empty_pattern: return "EmptyPattern";
    case Errc::class_violation: return "ClassViolation";
    case Errc::not_in_class: return "NotInClass";
    case Errc::overflow: return "Overflow";
    case Errc::invalid_spec: return "InvalidSpec";
    case Errc::ps_limit: return "PsLimit";
  }
  return "Unknown";
}

Error::Error(Errc code, const std::string& msg)
    : std::runtime_error(std::string(errc_name(code)) + ": " + msg),
      code_(code) {}

void fail(Errc code, const std::string& msg) { throw Error(code, msg); }

}  // namespace dagmatch
