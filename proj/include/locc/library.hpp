// library.hpp
// Fixed collection of (protocol, ensemble) pairs exercised by the consistency and
// Monte-Carlo checks.

#pragma once

#include <string>
#include <vector>

#include "locc/ensembles.hpp"
#include "locc/protocol.hpp"

namespace locc {

struct LibraryEntry {
    std::string name;
    LoccProtocol protocol;
    StateEnsemble ensemble;
};

std::vector<LibraryEntry> protocol_library();

} // namespace locc
