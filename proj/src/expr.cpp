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

#include "isocrystal/expr.hpp"

#include <cctype>

namespace isoc {

std::vector<Token> tokenize_expression(const std::string& text) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < text.size()) {
        char c = text[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        std::size_t start = i;
        if (std::isdigit(static_cast<unsigned char>(c))) {
            while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
            out.push_back({Token::number, text.substr(start, i - start), start});
        } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            while (i < text.size() && (std::isalnum(static_cast<unsigned char>(text[i])) || text[i] == '_')) ++i;
            out.push_back({Token::ident, text.substr(start, i - start), start});
        } else if (c == '+' || c == '-' || c == '*' || c == '/' || c == '^') {
            out.push_back({Token::op, std::string(1, c), start});
            ++i;
        } else if (c == '(') {
            out.push_back({Token::lparen, "(", start});
            ++i;
        } else if (c == ')') {
            out.push_back({Token::rparen, ")", start});
            ++i;
        } else {
            throw ParseError("unexpected character '" + std::string(1, c) + "' at position " + std::to_string(start) + " in '" + text + "'");
        }
    }
    out.push_back({Token::end, "", text.size()});
    return out;
}

}  // namespace isoc
