#pragma once

#include <string>

namespace sigma {

// Replays the four-element toy universe end to end: the undifferentiated
// start, the first binary distinction, a commuting second distinction and a
// non-commuting one, closing with a summary table. Byte-stable.
std::string toy_transcript();

}  // namespace sigma
