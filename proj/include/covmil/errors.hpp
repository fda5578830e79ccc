#ifndef COVMIL_ERRORS_HPP
#define COVMIL_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace covmil {

enum class Errc {
  parameter_mismatch,
  non_invertible,
  missing_assignment,
  truncation_exceeded,
  parse_error,
  rewrite_error,
  malformed_diagram,
  internal_consistency,
  evenness_violation,
  composition_error,
  invalid_index,
  hypothesis_violation,
  unsupported_size,
  unknown_component,
  bad_config,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
public:
  Error(Errc c, const std::string& msg)
      : std::runtime_error(std::string(errc_name(c)) + ": " + msg), code_(c) {}
  Errc code() const { return code_; }

private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc c, const std::string& msg) { throw Error(c, msg); }

inline const char* errc_name(Errc c) {
  switch (c) {
    case Errc::parameter_mismatch: return "parameter mismatch";
    case Errc::non_invertible: return "non-invertible";
    case Errc::missing_assignment: return "missing assignment";
    case Errc::truncation_exceeded: return "truncation exceeded";
    case Errc::parse_error: return "parse error";
    case Errc::rewrite_error: return "rewrite error";
    case Errc::malformed_diagram: return "malformed diagram";
    case Errc::internal_consistency: return "internal consistency";
    case Errc::evenness_violation: return "evenness violation";
    case Errc::composition_error: return "composition error";
    case Errc::invalid_index: return "invalid index";
    case Errc::hypothesis_violation: return "hypothesis violation";
    case Errc::unsupported_size: return "unsupported size";
    case Errc::unknown_component: return "unknown component";
    case Errc::bad_config: return "bad config";
  }
  return "error";
}

}  // namespace covmil

#endif
