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

// Command dispatch behind the C API: each command turns a job document into
// a JSON result and a table.

#ifndef ISOCRYSTAL_SERVICE_HPP
#define ISOCRYSTAL_SERVICE_HPP

#include <string>
#include <vector>

namespace isoc {

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

struct CommandResult {
    std::string json;
    Table table;
    int assertions_failed = 0;
};

/// Throws isoc::Error for parse and domain problems.
CommandResult run_command(const std::string& command, const std::string& job_json, int jobs);

std::string render_table(const Table& t);
std::string render_csv(const Table& t);

}  // namespace isoc

#endif
