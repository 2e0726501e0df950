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

/* C interface of the isocrystal library. Results are opaque handles owned by
   the caller; strings returned from a handle live as long as the handle. */

#ifndef ISOCRYSTAL_ISOCRYSTAL_H
#define ISOCRYSTAL_ISOCRYSTAL_H

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define ISOC_API __declspec(dllexport)
#else
#define ISOC_API __attribute__((visibility("default")))
#endif

typedef enum isoc_status {
    ISOC_OK = 0,
    ISOC_ERR_PARSE = 1,
    ISOC_ERR_DOMAIN = 2,
    ISOC_ERR_PLACE_NOT_IMPLEMENTED = 3,
    ISOC_ERR_NON_UNIT = 4,
    ISOC_ERR_SINGULAR = 5,
    ISOC_ERR_PRECISION = 6,
    ISOC_ERR_NON_STABILIZING = 7,
    ISOC_ERR_DESCENT = 8,
    ISOC_ERR_INVALID_ARGUMENT = 9,
    ISOC_ERR_INTERNAL = 10
} isoc_status;

typedef struct isoc_result isoc_result;

/* Runs one command (charpoly, newton, slopes, filtration, factor, drinfeld,
   compat) on a JSON job document. jobs bounds the worker threads of the
   compat sweep. On failure *out is NULL and isoc_last_error() describes it. */
ISOC_API isoc_status isoc_run(const char* command, const char* job_json, int jobs, isoc_result** out);

ISOC_API const char* isoc_result_json(const isoc_result* r);
ISOC_API const char* isoc_result_table(const isoc_result* r);
ISOC_API const char* isoc_result_csv(const isoc_result* r);
/* Number of failed checks (prediction mismatches, integrality, ...). */
ISOC_API int isoc_result_assertions_failed(const isoc_result* r);
ISOC_API void isoc_result_free(isoc_result* r);

/* Message of the last failed call on this thread, "" if none. */
ISOC_API const char* isoc_last_error(void);
ISOC_API const char* isoc_version(void);

#ifdef __cplusplus
}
#endif

#endif
