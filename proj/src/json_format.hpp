/*
   Copyright 2026 The isocrystal authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

// Indented JSON with arrays of scalars kept on one line, so vertex lists and
// slope pairs read as [[0,0],[1,0]].

#ifndef ISOCRYSTAL_JSON_FORMAT_HPP
#define ISOCRYSTAL_JSON_FORMAT_HPP

#include <string>

#include "json.hpp"

namespace isoc {

inline bool json_is_flat(const nlohmann::ordered_json& j) {
    if (!j.is_array()) return !j.is_object();
    for (const auto& x : j)
        if (!json_is_flat(x)) return false;
    return true;
}

inline void dump_json(const nlohmann::ordered_json& j, int indent, std::string& out) {
    const std::string pad(static_cast<std::size_t>(indent + 2), ' ');
    if (json_is_flat(j)) {
        out += j.dump();
    } else if (j.is_object()) {
        if (j.empty()) {
            out += "{}";
            return;
        }
        out += "{\n";
        bool first = true;
        for (const auto& [k, v] : j.items()) {
            if (!first) out += ",\n";
            first = false;
            out += pad + nlohmann::ordered_json(k).dump() + ": ";
            dump_json(v, indent + 2, out);
        }
        out += "\n" + std::string(static_cast<std::size_t>(indent), ' ') + "}";
    } else {
        out += "[\n";
        for (std::size_t i = 0; i < j.size(); ++i) {
            if (i) out += ",\n";
            out += pad;
            dump_json(j[i], indent + 2, out);
        }
        out += "\n" + std::string(static_cast<std::size_t>(indent), ' ') + "]";
    }
}

inline std::string dump_json(const nlohmann::ordered_json& j) {
    std::string out;
    dump_json(j, 0, out);
    return out;
}

}  // namespace isoc

#endif
