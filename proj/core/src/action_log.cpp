#include "socsim/action_log.h"

#include <cctype>

namespace socsim {

namespace {

bool parse_int(const std::string& text, std::size_t& pos, int& out) {
  if (pos >= text.size() || !std::isdigit(static_cast<unsigned char>(text[pos])))
    return false;
  long value = 0;
  while (pos < text.size() &&
         std::isdigit(static_cast<unsigned char>(text[pos]))) {
    value = value * 10 + (text[pos] - '0');
    if (value > 1000000000L) return false;
    ++pos;
  }
  out = static_cast<int>(value);
  return true;
}

}  // namespace

std::string encode_action_log(const std::vector<Event>& events) {
  std::string out;
  std::size_t count = std::min(events.size(),
                               static_cast<std::size_t>(kActionLogCap));
  for (std::size_t i = 0; i < count; ++i) {
    const Event& e = events[i];
    if (!out.empty()) out += "\n";
    out += "T" + std::to_string(e.turn) + ":P" + std::to_string(e.agent) +
           "-" + e.code + ":" + e.arg;
  }
  if (events.size() > count) {
    if (!out.empty()) out += "\n";
    out += "#truncated:" + std::to_string(events.size() - count);
  }
  return out;
}

std::vector<Event> decode_action_log(const std::string& text) {
  std::vector<Event> events;
  std::size_t line_start = 0;
  while (line_start < text.size()) {
    std::size_t line_end = text.find('\n', line_start);
    if (line_end == std::string::npos) line_end = text.size();
    std::string line = text.substr(line_start, line_end - line_start);

    if (!line.empty() && line[0] == '#') {
      if (line.rfind("#truncated:", 0) != 0)
        throw DecodeError(line_start, "unknown marker line");
      line_start = line_end + 1;
      continue;
    }
    if (line.empty()) {
      line_start = line_end + 1;
      continue;
    }

    std::size_t pos = 0;
    Event event;
    if (line[pos] != 'T')
      throw DecodeError(line_start, "expected 'T' at line start");
    ++pos;
    if (!parse_int(line, pos, event.turn))
      throw DecodeError(line_start, "bad turn number");
    if (pos >= line.size() || line[pos] != ':')
      throw DecodeError(line_start, "expected ':' after turn");
    ++pos;
    if (pos >= line.size() || line[pos] != 'P')
      throw DecodeError(line_start, "expected 'P' before agent");
    ++pos;
    if (!parse_int(line, pos, event.agent))
      throw DecodeError(line_start, "bad agent number");
    if (pos >= line.size() || line[pos] != '-')
      throw DecodeError(line_start, "expected '-' after agent");
    ++pos;
    std::size_t code_end = line.find(':', pos);
    if (code_end == std::string::npos)
      throw DecodeError(line_start, "expected ':' after action code");
    event.code = line.substr(pos, code_end - pos);
    if (event.code.empty())
      throw DecodeError(line_start, "empty action code");
    event.arg = line.substr(code_end + 1);
    events.push_back(std::move(event));

    line_start = line_end + 1;
  }
  return events;
}

}  // namespace socsim
