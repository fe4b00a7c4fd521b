#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "credal/channels.hpp"
#include "credal/core.hpp"

namespace credal {

/// A channel definition file: the channel itself plus the state and symbol
/// name tables used to resolve external labels (labels live only at this
/// layer; the core works with indices).
struct ChannelSpecFile {
  Channel channel{identity_channel(2)};
  std::vector<std::string> states;
  std::vector<std::string> symbols;  // empty for Gaussian channels
};

/// Parses a channel file. Format, one directive per line:
///   kind: discrete | identity | gaussian
///   emission: <symbol names...>          (discrete; then one row per state:
///                                         <state> <p_1> ... <p_m>)
///   states: <state names...>             (identity)
///   gaussian:                            (then one line per state:
///                                         <state> <mu> <sigma>)
/// Blank lines and lines starting with '#' are ignored.
ChannelSpecFile parse_channel_file(const std::string& path);

/// Parses a dataset file: header line `#kind: discrete|continuous`, then one
/// observation per line (a symbol name resolved through the channel table,
/// or a decimal literal).
ManifestDataset parse_dataset_file(const std::string& path,
                                   const ChannelSpecFile& channel);

void write_dataset_file(const std::string& path, const ManifestDataset& data,
                        const std::vector<std::string>& symbols);

/// Shortest fixed-format float serialization used everywhere in reports:
/// 17 significant digits, round-trip exact.
std::string format_double(double v);

/// Streaming JSON writer with caller-controlled field order and %.17g floats,
/// so identical inputs serialize to identical bytes.
class JsonWriter {
 public:
  JsonWriter& begin_object();
  JsonWriter& end_object();
  JsonWriter& begin_array();
  JsonWriter& end_array();
  JsonWriter& key(std::string_view k);
  JsonWriter& value(std::string_view s);
  JsonWriter& value(const char* s) { return value(std::string_view(s)); }
  JsonWriter& value(double v);
  JsonWriter& value(std::int64_t v);
  JsonWriter& value(int v) { return value(static_cast<std::int64_t>(v)); }
  JsonWriter& value(bool b);
  JsonWriter& null();

  const std::string& str() const { return out_; }

 private:
  void separate();

  std::string out_;
  std::vector<bool> first_in_scope_{true};
  bool after_key_ = false;
};

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace credal
