#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "topicdx/matrix.hpp"

namespace topicdx::corpus {

enum class Split { Train, Dev, Test };
enum class Speaker { Interviewer, Participant };
enum class StreamKind { Covarep, Formant, ActionUnits };

std::string_view to_string(Split split);
Split parse_split(std::string_view text);

struct SessionMeta {
  std::string session_id;
  int gender = 0;  // 0 or 1
  int phq8 = 0;    // 0..24
  Split split = Split::Train;
};

struct Utterance {
  double start = 0.0;
  double stop = 0.0;
  Speaker speaker = Speaker::Interviewer;
  std::string text;

  friend bool operator==(const Utterance&, const Utterance&) = default;
};

using Transcript = std::vector<Utterance>;

/// Time-stamped frame-level features of one stream.
struct FrameSeries {
  std::vector<double> timestamps;
  Matrix channels;  // frames x channel-count
  std::vector<std::string> channel_names;

  std::size_t frame_count() const noexcept { return timestamps.size(); }
  std::size_t channel_count() const noexcept { return channels.cols(); }
};

constexpr std::size_t kCovarepChannels = 74;
constexpr std::size_t kFormantChannels = 5;
constexpr std::size_t kActionUnitChannels = 20;
constexpr double kAudioFrameStep = 0.010;

std::size_t channel_count(StreamKind kind);

/// The 20 action-unit columns read from an AU file, in slot order.
const std::vector<std::string>& action_unit_names();

struct Session {
  SessionMeta meta;
  Transcript transcript;
  FrameSeries covarep;
  FrameSeries formant;
  FrameSeries aus;
};

struct Dataset {
  std::vector<Session> sessions;
};

/// Parses a transcript with a `start_time, stop_time, speaker, value` header
/// (any column order; tab or comma delimited, detected from the header line).
Transcript parse_transcript(std::string_view raw);

/// Tab-separated serialization readable by parse_transcript.
std::string format_transcript(const Transcript& transcript);

/// COVAREP and formant files are headerless with either exactly the channel
/// count (implicit 10 ms clock) or one extra leading timestamp column. AU files
/// carry a header with a `timestamp` column and the AU columns by name.
FrameSeries load_frame_series(std::string_view raw, StreamKind kind);

/// Frames with t0 <= timestamp < t1.
FrameSeries slice_frames(const FrameSeries& series, double t0, double t1);

/// Rows of `series` whose timestamps fall into any of the half-open windows,
/// in time order.
Matrix gather_windows(const FrameSeries& series,
                      const std::vector<std::pair<double, double>>& windows);

struct ManifestEntry {
  SessionMeta meta;
  std::filesystem::path transcript_path;
  std::filesystem::path covarep_path;
  std::filesystem::path formant_path;
  std::filesystem::path au_path;
};

/// Parses a JSON manifest; relative paths resolve against `base_dir`.
std::vector<ManifestEntry> parse_manifest(std::string_view json_text,
                                          const std::filesystem::path& base_dir);

Dataset load_dataset(const std::filesystem::path& manifest_path);

}  // namespace topicdx::corpus
