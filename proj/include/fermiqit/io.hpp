// io.hpp
// JSON artifact files for states, operators, channels and dilations.
//
// Layout: {"modes": N, "kind": "state|operator|channel|dilation",
// "basis": "canonical", "entries": [{"row": bitstring, "col": bitstring,
// "re": x, "im": y}, ...]}. States omit "col"; channels carry "kraus" (a
// list of entry blocks); dilations carry "K", "env_state" and "unitary".
// Bitstrings have one character per mode, leftmost = mode 1. Serialization
// is canonical: keys sorted, entries ordered by (row, col), zeros dropped,
// doubles in shortest round-trip form.

#pragma once

#include <optional>
#include <string>

#include "fermiqit/channels.hpp"
#include "fermiqit/fock.hpp"
#include "fermiqit/types.hpp"

namespace fermiqit {

class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

enum class ArtifactKind { State, Operator, Channel, Dilation };

struct Artifact {
  ArtifactKind kind = ArtifactKind::State;
  std::string comment;  // optional free-text field, empty when absent
  std::optional<FockState> state;
  std::optional<FockOperator> op;
  std::optional<KrausChannel> channel;
  std::optional<StinespringDilation> dilation;
};

Artifact make_artifact(FockState state, std::string comment = "");
Artifact make_artifact(FockOperator op, std::string comment = "");
Artifact make_artifact(KrausChannel channel, std::string comment = "");
Artifact make_artifact(StinespringDilation dilation, std::string comment = "");

// Throws ParseError for structural problems; SsrError may escape from
// channel/dilation reconstruction.
Artifact parse_artifact(const std::string& text);
Artifact load_artifact(const std::string& path);

std::string serialize_artifact(const Artifact& artifact);
void save_artifact(const Artifact& artifact, const std::string& path);

}  // namespace fermiqit
