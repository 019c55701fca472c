#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "socsim/sim.h"

namespace socsim {

inline constexpr int kActionLogCap = 400;

class DecodeError : public SimError {
 public:
  DecodeError(std::size_t offset, const std::string& what)
      : SimError("DecodeError at offset " + std::to_string(offset) + ": " +
                 what),
        offset(offset) {}
  std::size_t offset;
};

// One line per event, `T{turn}:P{agent}-{CODE}:{arg}`, newline separated.
// Logs longer than 400 events keep the earliest 400 and end with a
// `#truncated:{omitted}` marker line.
std::string encode_action_log(const std::vector<Event>& events);

// Inverse of encode for untruncated logs; a truncation marker is accepted
// and the surviving events are returned. Throws DecodeError (with the byte
// offset of the offending line) on malformed input.
std::vector<Event> decode_action_log(const std::string& text);

}  // namespace socsim
