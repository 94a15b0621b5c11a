#include "topicdx/corpus.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <set>

#include "json.hpp"
#include "topicdx/error.hpp"
#include "topicdx/parallel.hpp"
#include "topicdx/textio.hpp"
#include "topicdx/topic.hpp"

namespace topicdx::corpus {

namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::string row_label(std::size_t line) { return "row " + std::to_string(line); }

// Cell splitter over a string_view, no allocation per cell.
template <typename Fn>
std::size_t for_each_cell(std::string_view line, char delim, Fn&& fn) {
  std::size_t col = 0;
  std::size_t pos = 0;
  while (true) {
    std::size_t end = line.find(delim, pos);
    if (end == std::string_view::npos) end = line.size();
    fn(col, line.substr(pos, end - pos));
    ++col;
    if (end == line.size()) break;
    pos = end + 1;
  }
  return col;
}

char detect_numeric_delim(std::string_view line) {
  if (line.find(',') != std::string_view::npos) return ',';
  if (line.find('\t') != std::string_view::npos) return '\t';
  return ' ';
}

}  // namespace

std::string_view to_string(Split split) {
  switch (split) {
    case Split::Train: return "train";
    case Split::Dev: return "dev";
    case Split::Test: return "test";
  }
  return "train";
}

Split parse_split(std::string_view text) {
  const std::string s = lower(textio::trim(text));
  if (s == "train") return Split::Train;
  if (s == "dev" || s == "development") return Split::Dev;
  if (s == "test") return Split::Test;
  throw Error(ErrorCode::BadFormat, "unknown split '" + std::string(text) + "'");
}

std::size_t channel_count(StreamKind kind) {
  switch (kind) {
    case StreamKind::Covarep: return kCovarepChannels;
    case StreamKind::Formant: return kFormantChannels;
    case StreamKind::ActionUnits: return kActionUnitChannels;
  }
  return 0;
}

const std::vector<std::string>& action_unit_names() {
  static const std::vector<std::string> names = {
      "AU01_r", "AU02_r", "AU04_r", "AU05_r", "AU06_r", "AU09_r", "AU10_r",
      "AU12_r", "AU14_r", "AU15_r", "AU17_r", "AU20_r", "AU25_r", "AU26_r",
      "AU04_c", "AU12_c", "AU15_c", "AU23_c", "AU28_c", "AU45_c"};
  return names;
}

Transcript parse_transcript(std::string_view raw) {
  const auto lines = textio::split_lines(raw);
  std::size_t header_line = 0;
  while (header_line < lines.size() && textio::trim(lines[header_line]).empty()) ++header_line;
  if (header_line == lines.size()) {
    throw Error(ErrorCode::MissingColumn, "start_time (transcript has no header)");
  }
  const std::string_view header = lines[header_line];
  const char delim = header.find('\t') != std::string_view::npos ? '\t' : ',';
  const bool quoted = delim == ',';

  const auto columns = textio::split_fields(header, delim, quoted);
  auto find_column = [&](std::string_view name) {
    for (std::size_t i = 0; i < columns.size(); ++i) {
      if (lower(textio::trim(columns[i])) == name) return i;
    }
    throw Error(ErrorCode::MissingColumn, std::string(name));
  };
  const std::size_t start_col = find_column("start_time");
  const std::size_t stop_col = find_column("stop_time");
  const std::size_t speaker_col = find_column("speaker");
  const std::size_t value_col = find_column("value");
  const bool value_last = value_col + 1 == columns.size();

  Transcript out;
  for (std::size_t li = header_line + 1; li < lines.size(); ++li) {
    if (textio::trim(lines[li]).empty()) continue;
    auto fields = textio::split_fields(lines[li], delim, quoted);
    if (fields.size() > columns.size() && value_last) {
      // Unquoted delimiters inside the trailing text column.
      std::string joined = fields[value_col];
      for (std::size_t k = value_col + 1; k < fields.size(); ++k) {
        joined.push_back(delim);
        joined += fields[k];
      }
      fields.resize(value_col + 1);
      fields[value_col] = std::move(joined);
    }
    const std::size_t needed = std::max({start_col, stop_col, speaker_col, value_col}) + 1;
    if (fields.size() < needed) {
      throw Error(ErrorCode::BadFormat, row_label(li + 1) + ": expected " +
                                            std::to_string(columns.size()) + " fields");
    }
    const auto start = textio::parse_double(fields[start_col]);
    const auto stop = textio::parse_double(fields[stop_col]);
    if (!start || !stop || !std::isfinite(*start) || !std::isfinite(*stop) || *stop < *start) {
      throw Error(ErrorCode::BadTimestamp, row_label(li + 1));
    }
    const std::string speaker_label(textio::trim(fields[speaker_col]));
    const std::string speaker = lower(speaker_label);
    Utterance u;
    u.start = *start;
    u.stop = *stop;
    if (speaker == "ellie" || speaker == "interviewer") {
      u.speaker = Speaker::Interviewer;
    } else if (speaker == "participant") {
      u.speaker = Speaker::Participant;
    } else {
      throw Error(ErrorCode::UnknownSpeaker, row_label(li + 1) + ", label '" + speaker_label + "'");
    }
    u.text = std::string(textio::trim(fields[value_col]));
    if (topic::normalize_sentence(u.text).empty()) continue;
    out.push_back(std::move(u));
  }
  return out;
}

std::string format_transcript(const Transcript& transcript) {
  std::string out = "start_time\tstop_time\tspeaker\tvalue\n";
  for (const auto& u : transcript) {
    textio::append_double(out, u.start);
    out.push_back('\t');
    textio::append_double(out, u.stop);
    out.push_back('\t');
    out += u.speaker == Speaker::Interviewer ? "Ellie" : "Participant";
    out.push_back('\t');
    for (char c : u.text) out.push_back(c == '\t' || c == '\n' || c == '\r' ? ' ' : c);
    out.push_back('\n');
  }
  return out;
}

namespace {

FrameSeries load_headerless(std::string_view raw, StreamKind kind) {
  const std::size_t channels = channel_count(kind);
  FrameSeries series;
  series.channels = Matrix(0, channels);
  for (std::size_t c = 0; c < channels; ++c) {
    char name[8];
    std::snprintf(name, sizeof(name), "ch%02zu", c);
    series.channel_names.emplace_back(name);
  }
  const auto lines = textio::split_lines(raw);
  std::vector<double> row(channels);
  int layout = -1;  // 0 implicit clock, 1 leading timestamp column
  char delim = ',';
  std::size_t frame = 0;
  for (std::size_t li = 0; li < lines.size(); ++li) {
    const std::string_view line = lines[li];
    if (textio::trim(line).empty()) continue;
    if (layout < 0) delim = detect_numeric_delim(line);
    const std::size_t cells = for_each_cell(line, delim, [](std::size_t, std::string_view) {});
    const int this_layout = cells == channels ? 0 : cells == channels + 1 ? 1 : -1;
    if (this_layout < 0 || (layout >= 0 && this_layout != layout)) {
      throw Error(ErrorCode::ColumnCountMismatch,
                  row_label(li + 1) + ": " + std::to_string(cells) + " columns, expected " +
                      std::to_string(channels) + " (or " + std::to_string(channels + 1) +
                      " with a timestamp column)");
    }
    layout = this_layout;
    double timestamp = static_cast<double>(frame) * kAudioFrameStep;
    for_each_cell(line, delim, [&](std::size_t col, std::string_view cell) {
      const auto value = textio::parse_double(cell);
      if (!value) {
        throw Error(ErrorCode::NonNumericCell,
                    row_label(li + 1) + ", column " + std::to_string(col + 1));
      }
      if (layout == 1 && col == 0) {
        timestamp = *value;
      } else {
        row[col - static_cast<std::size_t>(layout)] = *value;
      }
    });
    if (!std::isfinite(timestamp) ||
        (!series.timestamps.empty() && timestamp <= series.timestamps.back())) {
      throw Error(ErrorCode::NonMonotonicTimestamps, row_label(li + 1));
    }
    series.timestamps.push_back(timestamp);
    series.channels.append_row(row);
    ++frame;
  }
  return series;
}

FrameSeries load_action_units(std::string_view raw) {
  const auto& names = action_unit_names();
  FrameSeries series;
  series.channels = Matrix(0, names.size());
  series.channel_names = names;
  const auto lines = textio::split_lines(raw);
  std::size_t li = 0;
  while (li < lines.size() && textio::trim(lines[li]).empty()) ++li;
  if (li == lines.size()) return series;

  const char delim = detect_numeric_delim(lines[li]);
  std::vector<std::string> header;
  for_each_cell(lines[li], delim, [&](std::size_t, std::string_view cell) {
    header.emplace_back(textio::trim(cell));
  });
  auto find = [&](std::string_view name) {
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (lower(header[i]) == lower(name)) return i;
    }
    throw Error(ErrorCode::MissingColumn, std::string(name));
  };
  const std::size_t ts_col = find("timestamp");
  // column -> slot, or npos for ignored columns
  std::vector<std::size_t> slot_of(header.size(), std::string::npos);
  for (std::size_t s = 0; s < names.size(); ++s) slot_of[find(names[s])] = s;

  std::vector<double> row(names.size());
  for (++li; li < lines.size(); ++li) {
    const std::string_view line = lines[li];
    if (textio::trim(line).empty()) continue;
    double timestamp = 0.0;
    const std::size_t cells = for_each_cell(line, delim, [&](std::size_t col, std::string_view cell) {
      if (col >= header.size()) return;
      if (col != ts_col && slot_of[col] == std::string::npos) return;
      const auto value = textio::parse_double(cell);
      if (!value) {
        throw Error(ErrorCode::NonNumericCell,
                    row_label(li + 1) + ", column " + std::to_string(col + 1));
      }
      if (col == ts_col) {
        timestamp = *value;
      } else {
        row[slot_of[col]] = *value;
      }
    });
    if (cells != header.size()) {
      throw Error(ErrorCode::ColumnCountMismatch, row_label(li + 1) + ": " +
                                                      std::to_string(cells) + " columns, header has " +
                                                      std::to_string(header.size()));
    }
    if (!std::isfinite(timestamp) ||
        (!series.timestamps.empty() && timestamp <= series.timestamps.back())) {
      throw Error(ErrorCode::NonMonotonicTimestamps, row_label(li + 1));
    }
    series.timestamps.push_back(timestamp);
    series.channels.append_row(row);
  }
  return series;
}

}  // namespace

FrameSeries load_frame_series(std::string_view raw, StreamKind kind) {
  if (kind == StreamKind::ActionUnits) return load_action_units(raw);
  return load_headerless(raw, kind);
}

FrameSeries slice_frames(const FrameSeries& series, double t0, double t1) {
  if (t0 > t1) {
    throw Error(ErrorCode::InvalidWindow,
                "[" + textio::format_double(t0) + ", " + textio::format_double(t1) + ")");
  }
  const auto& ts = series.timestamps;
  const auto first = static_cast<std::size_t>(std::lower_bound(ts.begin(), ts.end(), t0) - ts.begin());
  const auto last = static_cast<std::size_t>(std::lower_bound(ts.begin(), ts.end(), t1) - ts.begin());
  FrameSeries out;
  out.channel_names = series.channel_names;
  out.channels = Matrix(0, series.channel_count());
  for (std::size_t i = first; i < last; ++i) {
    out.timestamps.push_back(ts[i]);
    out.channels.append_row(series.channels.row(i));
  }
  return out;
}

Matrix gather_windows(const FrameSeries& series,
                      const std::vector<std::pair<double, double>>& windows) {
  const auto& ts = series.timestamps;
  std::vector<std::pair<std::size_t, std::size_t>> ranges;
  for (const auto& [t0, t1] : windows) {
    if (t0 > t1) {
      throw Error(ErrorCode::InvalidWindow,
                  "[" + textio::format_double(t0) + ", " + textio::format_double(t1) + ")");
    }
    const auto a = static_cast<std::size_t>(std::lower_bound(ts.begin(), ts.end(), t0) - ts.begin());
    const auto b = static_cast<std::size_t>(std::lower_bound(ts.begin(), ts.end(), t1) - ts.begin());
    if (a < b) ranges.emplace_back(a, b);
  }
  std::sort(ranges.begin(), ranges.end());
  Matrix out(0, series.channel_count());
  std::size_t next = 0;
  for (const auto& [a, b] : ranges) {
    for (std::size_t i = std::max(a, next); i < b; ++i) out.append_row(series.channels.row(i));
    next = std::max(next, b);
  }
  return out;
}

std::vector<ManifestEntry> parse_manifest(std::string_view json_text,
                                          const std::filesystem::path& base_dir) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::BadFormat, std::string("manifest: ") + e.what());
  }
  if (!doc.contains("sessions") || !doc["sessions"].is_array()) {
    throw Error(ErrorCode::BadFormat, "manifest: missing 'sessions' array");
  }
  auto resolve = [&](const std::string& p) {
    std::filesystem::path path(p);
    return path.is_absolute() ? path : base_dir / path;
  };
  std::vector<ManifestEntry> entries;
  std::set<std::string> seen;
  for (const auto& s : doc["sessions"]) {
    ManifestEntry e;
    try {
      e.meta.session_id = s.at("id").get<std::string>();
      e.transcript_path = resolve(s.at("transcript_path").get<std::string>());
      e.covarep_path = resolve(s.at("covarep_path").get<std::string>());
      e.formant_path = resolve(s.at("formant_path").get<std::string>());
      e.au_path = resolve(s.at("au_path").get<std::string>());
      e.meta.gender = s.at("gender").get<int>();
      e.meta.phq8 = s.at("phq8").get<int>();
      e.meta.split = parse_split(s.at("split").get<std::string>());
    } catch (const nlohmann::json::exception& ex) {
      throw Error(ErrorCode::BadFormat, std::string("manifest session: ") + ex.what());
    }
    if (e.meta.gender != 0 && e.meta.gender != 1) {
      throw Error(ErrorCode::BadFormat, e.meta.session_id + ": gender must be 0 or 1");
    }
    if (e.meta.phq8 < 0 || e.meta.phq8 > 24) {
      throw Error(ErrorCode::BadFormat, e.meta.session_id + ": phq8 outside [0, 24]");
    }
    if (!seen.insert(e.meta.session_id).second) {
      throw Error(ErrorCode::BadFormat, "duplicate session id " + e.meta.session_id);
    }
    entries.push_back(std::move(e));
  }
  return entries;
}

Dataset load_dataset(const std::filesystem::path& manifest_path) {
  const auto entries = parse_manifest(textio::read_file(manifest_path),
                                      manifest_path.parent_path());
  Dataset dataset;
  dataset.sessions.resize(entries.size());
  parallel_for(entries.size(), [&](std::size_t i) {
    const auto& e = entries[i];
    Session& s = dataset.sessions[i];
    s.meta = e.meta;
    try {
      s.transcript = parse_transcript(textio::read_file(e.transcript_path));
      s.covarep = load_frame_series(textio::read_file(e.covarep_path), StreamKind::Covarep);
      s.formant = load_frame_series(textio::read_file(e.formant_path), StreamKind::Formant);
      s.aus = load_frame_series(textio::read_file(e.au_path), StreamKind::ActionUnits);
    } catch (const Error& err) {
      throw Error(err.code(), "session " + e.meta.session_id + ": " + err.what());
    }
  });
  return dataset;
}

}  // namespace topicdx::corpus
