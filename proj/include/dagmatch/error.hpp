#pragma once

#include <stdexcept>
#include <string>

namespace dagmatch {

enum class Errc {
  malformed_header,
  label_length_mismatch,
  vertex_out_of_range,
  self_loop,
  duplicate_edge,
  cycle_detected,
  edge_not_present,
  empty_pattern,
  class_violation,
  not_in_class,
  overflow,
  invalid_spec,
  ps_limit,
};

// Stable name used in error messages and CLI diagnostics.
const char* errc_name(Errc c);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& msg);
  Errc code() const { return code_; }

 private:
  Errc code_;
};

[[noreturn]] void fail(Errc code, const std::string& msg);

}  // namespace dagmatch
