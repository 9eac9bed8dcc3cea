/* Copyright 2026 The masfuzz Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/* Flat JSON subset: null, booleans, numbers, and one-level objects of
 * string keys mapping to numbers.
 */

#ifndef CJSONISH_H_
#define CJSONISH_H_

#include <stddef.h>

typedef struct cj_value cj_value;

/** Parses literals like "null", "true", "42.5", or flat objects like
 *  "{\"answer\":42}". Returns NULL on malformed text.
 */
cj_value *cj_parse(const char *text);

/** One of "null", "bool", "number", or "object". */
const char *cj_type_name(const cj_value *v);

/** Numeric payload; 0.0 for non-numbers. Booleans read as 0 or 1. */
double cj_number(const cj_value *v);

/** Member lookup on an object value; NULL when absent or not an
 *  object.
 */
cj_value *cj_get(const cj_value *v, const char *key);

/** Member count for objects, 0 otherwise. */
size_t cj_length(const cj_value *v);

/** Serializes a value into a heap-allocated string owned by the
 *  caller.
 */
char *cj_print(const cj_value *v);

/** Releases a parse result; members are owned by their object. */
void cj_value_free(cj_value *v);

#endif /* CJSONISH_H_ */
