#include "fermiqit/io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace fermiqit {

using nlohmann::json;

namespace {

ModeList iota_modes(int first, int count) {
  ModeList modes(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i)
    modes[static_cast<std::size_t>(i)] = first + i;
  return modes;
}

std::uint32_t parse_bitstring(const json& j, const char* field, int modes) {
  if (!j.is_string())
    throw ParseError(std::string(field) + " must be a bitstring");
  const std::string s = j.get<std::string>();
  if (static_cast<int>(s.size()) != modes)
    throw ParseError("bitstring '" + s + "' does not have " +
                     std::to_string(modes) + " characters");
  try {
    return static_cast<std::uint32_t>(
        pattern_index(OccPattern::from_string(s)));
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
}

double parse_part(const json& entry, const char* field) {
  if (!entry.contains(field) || !entry[field].is_number())
    throw ParseError(std::string("entry is missing numeric '") + field + "'");
  return entry[field].get<double>();
}

Vector parse_state_entries(const json& list, int modes) {
  Vector amps = Vector::Zero(std::int64_t{1} << modes);
  std::vector<bool> seen(static_cast<std::size_t>(amps.size()), false);
  for (const json& entry : list) {
    const std::uint32_t row = parse_bitstring(entry.at("row"), "row", modes);
    if (seen[row]) throw ParseError("duplicate row entry");
    seen[row] = true;
    amps[row] = Complex(parse_part(entry, "re"), parse_part(entry, "im"));
  }
  return amps;
}

Matrix parse_operator_entries(const json& list, int modes) {
  const auto d = std::int64_t{1} << modes;
  Matrix m = Matrix::Zero(d, d);
  std::vector<bool> seen(static_cast<std::size_t>(d * d), false);
  for (const json& entry : list) {
    const std::uint32_t row = parse_bitstring(entry.at("row"), "row", modes);
    if (!entry.contains("col"))
      throw ParseError("operator entry is missing 'col'");
    const std::uint32_t col = parse_bitstring(entry["col"], "col", modes);
    const std::size_t flat = static_cast<std::size_t>(row) *
                                 static_cast<std::size_t>(d) + col;
    if (seen[flat]) throw ParseError("duplicate (row, col) entry");
    seen[flat] = true;
    m(row, col) = Complex(parse_part(entry, "re"), parse_part(entry, "im"));
  }
  return m;
}

json state_entries_json(const Vector& amps, int modes) {
  json list = json::array();
  for (std::int64_t i = 0; i < amps.size(); ++i) {
    if (amps[i] == Complex{}) continue;
    json entry;
    entry["row"] = index_pattern(static_cast<std::size_t>(i), modes).to_string();
    entry["re"] = amps[i].real();
    entry["im"] = amps[i].imag();
    list.push_back(std::move(entry));
  }
  return list;
}

json operator_entries_json(const Matrix& m, int modes) {
  json list = json::array();
  for (std::int64_t r = 0; r < m.rows(); ++r)
    for (std::int64_t c = 0; c < m.cols(); ++c) {
      if (m(r, c) == Complex{}) continue;
      json entry;
      entry["row"] = index_pattern(static_cast<std::size_t>(r), modes).to_string();
      entry["col"] = index_pattern(static_cast<std::size_t>(c), modes).to_string();
      entry["re"] = m(r, c).real();
      entry["im"] = m(r, c).imag();
      list.push_back(std::move(entry));
    }
  return list;
}

const json& require(const json& j, const char* field) {
  if (!j.contains(field))
    throw ParseError(std::string("missing field '") + field + "'");
  return j[field];
}

}  // namespace

Artifact make_artifact(FockState state, std::string comment) {
  Artifact a;
  a.kind = ArtifactKind::State;
  a.comment = std::move(comment);
  a.state = std::move(state);
  return a;
}

Artifact make_artifact(FockOperator op, std::string comment) {
  Artifact a;
  a.kind = ArtifactKind::Operator;
  a.comment = std::move(comment);
  a.op = std::move(op);
  return a;
}

Artifact make_artifact(KrausChannel channel, std::string comment) {
  Artifact a;
  a.kind = ArtifactKind::Channel;
  a.comment = std::move(comment);
  a.channel = std::move(channel);
  return a;
}

Artifact make_artifact(StinespringDilation dilation, std::string comment) {
  Artifact a;
  a.kind = ArtifactKind::Dilation;
  a.comment = std::move(comment);
  a.dilation = std::move(dilation);
  return a;
}

Artifact parse_artifact(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ParseError("artifact must be a JSON object");

  const json& modes_field = require(j, "modes");
  if (!modes_field.is_number_integer())
    throw ParseError("'modes' must be an integer");
  const int modes = modes_field.get<int>();
  if (modes < 0 || modes > max_modes())
    throw ParseError("'modes' outside [0, " + std::to_string(max_modes()) + "]");
  if (j.contains("basis") && j["basis"].get<std::string>() != "canonical")
    throw ParseError("only the canonical basis is supported in files");

  const std::string kind = require(j, "kind").get<std::string>();
  Artifact a;
  if (j.contains("comment")) a.comment = j["comment"].get<std::string>();

  if (kind == "state") {
    a.kind = ArtifactKind::State;
    a.state = FockState(iota_modes(1, modes),
                        parse_state_entries(require(j, "entries"), modes));
  } else if (kind == "operator") {
    a.kind = ArtifactKind::Operator;
    a.op = FockOperator(iota_modes(1, modes),
                        parse_operator_entries(require(j, "entries"), modes));
  } else if (kind == "channel") {
    a.kind = ArtifactKind::Channel;
    const json& blocks = require(j, "kraus");
    if (!blocks.is_array() || blocks.empty())
      throw ParseError("'kraus' must be a nonempty list");
    std::vector<Matrix> kraus;
    for (const json& block : blocks)
      kraus.push_back(parse_operator_entries(require(block, "entries"), modes));
    a.channel = KrausChannel(modes, std::move(kraus));
  } else if (kind == "dilation") {
    a.kind = ArtifactKind::Dilation;
    const json& k_field = require(j, "K");
    if (!k_field.is_number_integer())
      throw ParseError("'K' must be an integer");
    const int k = k_field.get<int>();
    if (k < 1 || modes + k > max_modes())
      throw ParseError("environment mode count out of range");
    StinespringDilation d;
    d.n_modes = modes;
    d.env_modes = k;
    d.env_state =
        FockState(iota_modes(modes + 1, k),
                  parse_state_entries(require(require(j, "env_state"),
                                              "entries"), k));
    d.unitary = FockOperator(
        iota_modes(1, modes + k),
        parse_operator_entries(require(require(j, "unitary"), "entries"),
                               modes + k));
    a.dilation = std::move(d);
  } else {
    throw ParseError("unknown artifact kind '" + kind + "'");
  }
  return a;
}

Artifact load_artifact(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_artifact(buffer.str());
}

std::string serialize_artifact(const Artifact& artifact) {
  json j;
  j["basis"] = "canonical";
  if (!artifact.comment.empty()) j["comment"] = artifact.comment;
  switch (artifact.kind) {
    case ArtifactKind::State: {
      const FockState& st = *artifact.state;
      j["kind"] = "state";
      j["modes"] = st.mode_count();
      j["entries"] = state_entries_json(st.amps, st.mode_count());
      break;
    }
    case ArtifactKind::Operator: {
      const FockOperator& op = *artifact.op;
      j["kind"] = "operator";
      j["modes"] = op.mode_count();
      j["entries"] = operator_entries_json(op.entries, op.mode_count());
      break;
    }
    case ArtifactKind::Channel: {
      const KrausChannel& ch = *artifact.channel;
      j["kind"] = "channel";
      j["modes"] = ch.mode_count();
      json blocks = json::array();
      for (const Matrix& e : ch.kraus()) {
        json block;
        block["entries"] = operator_entries_json(e, ch.mode_count());
        blocks.push_back(std::move(block));
      }
      j["kraus"] = std::move(blocks);
      break;
    }
    case ArtifactKind::Dilation: {
      const StinespringDilation& d = *artifact.dilation;
      j["kind"] = "dilation";
      j["modes"] = d.n_modes;
      j["K"] = d.env_modes;
      json env;
      env["entries"] = state_entries_json(d.env_state.amps, d.env_modes);
      j["env_state"] = std::move(env);
      json uni;
      uni["entries"] =
          operator_entries_json(d.unitary.entries, d.n_modes + d.env_modes);
      j["unitary"] = std::move(uni);
      break;
    }
  }
  return j.dump(2) + "\n";
}

void save_artifact(const Artifact& artifact, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write file: " + path);
  out << serialize_artifact(artifact);
}

}  // namespace fermiqit
