/*
 * Copyright (c) 2026 The lpbound authors.
 * Licensed under the Apache License, Version 2.0 (the "License"); you may not
 * use this file except in compliance with the License. You may obtain a copy
 * of the License at http://www.apache.org/licenses/LICENSE-2.0
 *
 * C interface to lpbound: output-size bounds for conjunctive queries from
 * l_p-norm degree statistics.
 *
 * Every function returns an lpb_status. On failure, lpb_last_error() holds a
 * message for the calling thread. Strings returned through char** outputs
 * are owned by the caller and released with lpb_string_free().
 */
#ifndef LPBOUND_H
#define LPBOUND_H

#include <stdint.h>

#if defined(LPBOUND_BUILDING)
#define LPB_API __attribute__((visibility("default")))
#else
#define LPB_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum lpb_status {
  LPB_OK = 0,
  LPB_ERR_PARSE = 1,
  LPB_ERR_INVALID = 2,
  LPB_ERR_IO = 3,
  LPB_ERR_RESOURCE = 4,
  LPB_ERR_NOT_FOUND = 5,
  LPB_ERR_VIOLATED = 6,
  LPB_ERR_INTERNAL = 7
} lpb_status;

typedef struct lpb_query lpb_query;
typedef struct lpb_database lpb_database;

LPB_API const char* lpb_version(void);
LPB_API const char* lpb_last_error(void);
LPB_API void lpb_string_free(char* text);

/* max_variables of 0 selects the default of 14; the hard ceiling is 20. */
LPB_API lpb_status lpb_query_parse(const char* text, unsigned max_variables, lpb_query** out);
LPB_API lpb_status lpb_query_load(const char* path, unsigned max_variables, lpb_query** out);
LPB_API void lpb_query_free(lpb_query* query);
LPB_API lpb_status lpb_query_to_string(const lpb_query* query, char** out);

/* Loads <directory>/<relation>.csv or .tsv for every relation in the query.
 * delimiter 0 infers it from the file extension. */
LPB_API lpb_status lpb_database_load(const lpb_query* query, const char* directory, char delimiter,
                                     lpb_database** out);
LPB_API void lpb_database_free(lpb_database* database);
LPB_API lpb_status lpb_database_size(const lpb_database* database, const char* relation, uint64_t* out);

/* specs_json may be NULL, in which case preset names the statistic family:
 * "agm", "panda" or a norm list such as "1,2,inf". */
LPB_API lpb_status lpb_stats(const lpb_query* query, const lpb_database* database, const char* specs_json,
                             const char* preset, char** out_json);

/* cone: "polymatroid", "normal" or "modular". dump_path may be NULL. */
LPB_API lpb_status lpb_bound(const lpb_query* query, const char* stats_json, const char* cone, int with_shannon,
                             const char* dump_path, char** out_json);

/* presets: semicolon-separated list, e.g. "agm;panda;1;1,inf".
 * true_count < 0 computes the output size. */
LPB_API lpb_status lpb_compare(const lpb_query* query, const lpb_database* database, const char* presets,
                               int64_t true_count, char** out_json, char** out_table);

/* engine: "oracle", "generic" or "partitioned". stats_json may be NULL.
 * out_csv receives the output tuples unless count_only is set. */
LPB_API lpb_status lpb_evaluate(const lpb_query* query, const lpb_database* database, const char* engine,
                                const char* stats_json, const char* preset, int count_only, unsigned threads,
                                char** out_json, char** out_csv);

/* out_dir may be NULL to skip writing CSV files. */
LPB_API lpb_status lpb_worstcase(const lpb_query* query, const char* stats_json, const char* out_dir,
                                 char** out_json);

/* direction: "sums" or "sequence". */
LPB_API lpb_status lpb_convert(const char* input_json, const char* direction, char** out_json);

LPB_API lpb_status lpb_check_inequality(const lpb_query* query, const char* inequality_json, const char* cone,
                                        char** out_json);

#ifdef __cplusplus
}
#endif

#endif /* LPBOUND_H */
