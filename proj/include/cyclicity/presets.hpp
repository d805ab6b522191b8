#ifndef CYCLICITY_PRESETS_HPP
#define CYCLICITY_PRESETS_HPP

#include <string>
#include <vector>

#include "cyclicity/expr.hpp"

namespace cyc {

// Named benchmark systems shipped with the tool.
struct Preset {
    std::string name;
    std::string system_text;
    Bindings params;        // default parameter values
    std::string v0_text;    // inverse-integrating-factor candidate, may be empty
    std::string notes;
};

const std::vector<Preset>& presets();
const Preset& preset(const std::string& name); // throws ParseError on unknown names

} // namespace cyc

#endif
