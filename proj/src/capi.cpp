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

#include "isocrystal/isocrystal.h"

#include <new>
#include <string>

#include "isocrystal/errors.hpp"
#include "service.hpp"

struct isoc_result {
    std::string json;
    std::string table;
    std::string csv;
    int assertions_failed = 0;
};

namespace {

thread_local std::string last_error;

isoc_status status_of(isoc::ErrorKind k) {
    switch (k) {
        case isoc::ErrorKind::parse: return ISOC_ERR_PARSE;
        case isoc::ErrorKind::domain: return ISOC_ERR_DOMAIN;
        case isoc::ErrorKind::not_implemented_place: return ISOC_ERR_PLACE_NOT_IMPLEMENTED;
        case isoc::ErrorKind::non_unit: return ISOC_ERR_NON_UNIT;
        case isoc::ErrorKind::singular_matrix: return ISOC_ERR_SINGULAR;
        case isoc::ErrorKind::precision_exhausted: return ISOC_ERR_PRECISION;
        case isoc::ErrorKind::non_stabilizing: return ISOC_ERR_NON_STABILIZING;
        case isoc::ErrorKind::descent_failure: return ISOC_ERR_DESCENT;
    }
    return ISOC_ERR_INTERNAL;
}

isoc_status fail(isoc_status s, const std::string& msg) {
    last_error = msg;
    return s;
}

}  // namespace

extern "C" {

isoc_status isoc_run(const char* command, const char* job_json, int jobs, isoc_result** out) {
    if (!out) return fail(ISOC_ERR_INVALID_ARGUMENT, "output handle pointer is null");
    *out = nullptr;
    if (!command || !job_json) return fail(ISOC_ERR_INVALID_ARGUMENT, "command and job must be non-null");
    if (jobs < 1) return fail(ISOC_ERR_INVALID_ARGUMENT, "jobs must be at least 1");
    try {
        auto res = isoc::run_command(command, job_json, jobs);
        auto* r = new isoc_result{std::move(res.json), isoc::render_table(res.table), isoc::render_csv(res.table), res.assertions_failed};
        r->json += "\n";
        *out = r;
        last_error.clear();
        return ISOC_OK;
    } catch (const isoc::Error& e) {
        return fail(status_of(e.kind()), e.what());
    } catch (const std::bad_alloc&) {
        return fail(ISOC_ERR_INTERNAL, "out of memory");
    } catch (const std::exception& e) {
        return fail(ISOC_ERR_INTERNAL, std::string("internal error: ") + e.what());
    }
}

const char* isoc_result_json(const isoc_result* r) { return r ? r->json.c_str() : ""; }
const char* isoc_result_table(const isoc_result* r) { return r ? r->table.c_str() : ""; }
const char* isoc_result_csv(const isoc_result* r) { return r ? r->csv.c_str() : ""; }
int isoc_result_assertions_failed(const isoc_result* r) { return r ? r->assertions_failed : 0; }
void isoc_result_free(isoc_result* r) { delete r; }
const char* isoc_last_error(void) { return last_error.c_str(); }
const char* isoc_version(void) { return "0.1.0"; }

}
