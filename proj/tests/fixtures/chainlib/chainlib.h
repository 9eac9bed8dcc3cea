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

/* Three-stage pipeline with a strictly linear type chain:
 * source -> filter -> sink. The compatibility paths through it are
 * small enough to enumerate by hand.
 */

#ifndef CHAINLIB_H_
#define CHAINLIB_H_

#include <stddef.h>

typedef struct ch_source ch_source;
typedef struct ch_filter ch_filter;
typedef struct ch_sink ch_sink;

/** Opens a byte-buffer source; empty input is a valid empty source. */
ch_source *ch_source_open(const unsigned char *data, size_t len);

/** Wraps a source in a lowercasing filter; NULL source yields NULL. */
ch_filter *ch_filter_new(ch_source *src);

/** Attaches a counting sink to a filter; NULL filter yields NULL. */
ch_sink *ch_sink_new(ch_filter *f);

/** Pulls everything through the pipeline; returns bytes drained. */
int ch_sink_drain(ch_sink *s);

/** Releases a sink; NULL is a no-op. */
void ch_sink_close(ch_sink *s);

/** Releases a filter; NULL is a no-op. */
void ch_filter_free(ch_filter *f);

/** Releases a source; NULL is a no-op. */
void ch_source_close(ch_source *src);

#endif /* CHAINLIB_H_ */
